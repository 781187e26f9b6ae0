#include <string>
#include <vector>

#include "avalanche/harness.hpp"

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return avalanche::harness::cli_main(args);
}
