#include <chrono>
#include <fstream>
#include <iostream>
#include <thread>

#include <CLI11.hpp>

#include "avalanche/forward.hpp"
#include "avalanche/harness.hpp"
#include "avalanche/parallel.hpp"
#include "avalanche/records.hpp"

namespace avalanche {
namespace harness {

namespace {

constexpr std::uint64_t kStreamSampleCmd = 0x5C;
constexpr std::uint64_t kStreamForwardCmd = 0xFC;
constexpr std::uint64_t kStreamContourCmd = 0xC0;
constexpr std::uint64_t kStreamY1Cmd = 0x71;

struct Common {
  std::uint64_t seed = 1;
  std::string out;
  int workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  std::string format = "jsonl";
  bool strict = false;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--seed", c.seed, "master seed; replicas derive substreams");
  sub->add_option("--out", c.out, "output path (default stdout)");
  sub->add_option("--workers", c.workers, "worker threads (result is worker-count independent)");
  sub->add_option("--format", c.format, "jsonl|csv")->check(CLI::IsMember({"jsonl", "csv"}));
  sub->add_flag("--strict", c.strict, "exit 3 on budget/adaptive warnings");
}

struct Sink {
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file.open(path);
      if (!file) throw SimError("cannot open output file '" + path + "'");
      os = &file;
    }
  }
  std::ofstream file;
  std::ostream* os = &std::cout;
};

ResultRecord make_meta(const std::string& sub, const Common& c, nlohmann::json params) {
  ResultRecord meta;
  meta.subcommand = sub;
  params["workers"] = c.workers;
  params["format"] = c.format;
  meta.parameters = std::move(params);
  meta.seed = c.seed;
  return meta;
}

// Emits a table either as csv (meta in comment headers) or as jsonl (meta
// line followed by one record per row).
void emit_table(const Common& c, ResultRecord meta, const CsvTable& table,
                const std::vector<nlohmann::json>& rows) {
  Sink sink(c.out);
  if (c.format == "csv") {
    write_csv(*sink.os, meta, table);
  } else {
    write_jsonl_meta(*sink.os, meta);
    for (const auto& r : rows) *sink.os << r.dump() << "\n";
  }
}

std::string color_name(MarkColor c) { return c == MarkColor::black ? "black" : "grey"; }

int run_sample(const Common& c, Site l, std::uint64_t samples, const std::string& variant_name,
               std::uint64_t budget) {
  const SamplerVariant variant =
      variant_name == "step1" ? SamplerVariant::step1 : SamplerVariant::step1prime;
  struct Acc {
    std::vector<std::pair<std::uint64_t, std::string>> lines;
    std::uint64_t budget_hits = 0;
  };
  auto parts = parallel_replicas<Acc>(samples, c.workers, Acc{}, [&](std::uint64_t r, Acc& acc) {
    Rng rng(RngStream{c.seed, mix64(kStreamSampleCmd, r)});
    nlohmann::json line;
    line["replica"] = r;
    try {
      const SampleResult s = sample_invariant_window(l, variant, rng, budget);
      line["config"] = s.window.to_text();
      line["T"] = s.diag.T;
      line["domain_width"] = s.diag.domain_width();
    } catch (const BudgetExceededError&) {
      line["config"] = nullptr;
      line["budget_exceeded"] = true;
      ++acc.budget_hits;
    }
    acc.lines.emplace_back(r, line.dump());
  });
  std::vector<std::string> ordered(samples);
  std::uint64_t budget_hits = 0;
  for (const Acc& a : parts) {
    for (const auto& [r, s] : a.lines) ordered[r] = s;
    budget_hits += a.budget_hits;
  }
  ResultRecord meta = make_meta("sample", c,
                                {{"l", l},
                                 {"samples", samples},
                                 {"variant", variant_name},
                                 {"budget", budget},
                                 {"budget_hits", budget_hits}});
  Sink sink(c.out);
  write_jsonl_meta(*sink.os, meta);
  for (const auto& s : ordered) *sink.os << s << "\n";
  return (c.strict && budget_hits > 0) ? 3 : 0;
}

int run_forward(const Common& c, Site radius, std::uint64_t events, double time_horizon) {
  Rng rng(RngStream{c.seed, kStreamForwardCmd});
  const Interval w{-radius, radius};
  Config zeta0 = sample_bernoulli_config(w, RngStream{c.seed, mix64(kStreamForwardCmd, 1)});
  Config eta0 = Config::all_vacant(w);
  EventLog log = time_horizon > 0 ? generate_event_log(w, TimeHorizon{time_horizon}, rng)
                                  : generate_event_log(w, EventCount{events}, rng);
  const CoupledTrajectory traj = run_coupled(zeta0, eta0, log);

  ResultRecord meta = make_meta("forward", c,
                                {{"radius", radius},
                                 {"events", events},
                                 {"time", time_horizon},
                                 {"zeta0", zeta0.to_text()},
                                 {"final_zeta", traj.final_state.zeta.to_text()},
                                 {"final_eta", traj.final_state.eta.to_text()}});
  Sink sink(c.out);
  write_jsonl_meta(*sink.os, meta);
  for (std::size_t k = 0; k < log.marks.size(); ++k) {
    nlohmann::json line;
    line["ordinal"] = log.marks[k].ordinal;
    line["site"] = log.marks[k].site;
    line["color"] = color_name(log.marks[k].color);
    line["changed_sites"] = traj.deltas[k].changed;
    *sink.os << line.dump() << "\n";
  }
  return 0;
}

int run_contour(const Common& c, std::uint64_t samples, const std::string& metric,
                std::uint64_t budget, double time_bin) {
  struct Acc {
    std::map<std::int64_t, std::uint64_t> hist;
    std::uint64_t budget_hits = 0;
    std::uint64_t fictitious = 0;
  };
  auto parts = parallel_replicas<Acc>(samples, c.workers, Acc{}, [&](std::uint64_t r, Acc& acc) {
    Rng rng(RngStream{c.seed, mix64(kStreamContourCmd, r)});
    const MeetRecord rec = run_until_meet(0, rng, budget);
    if (rec.budget_exceeded) ++acc.budget_hits;
    acc.fictitious += rec.fictitious_events;
    std::int64_t v = 0;
    if (metric == "rho-events") v = static_cast<std::int64_t>(rec.rho_events);
    else if (metric == "rho-time") v = static_cast<std::int64_t>(rec.rho_time / time_bin);
    else if (metric == "rmax") v = rec.r_max;
    else v = -rec.l_min;  // lmin, reported as a nonnegative excursion
    ++acc.hist[v];
  });
  Acc merged;
  for (const Acc& a : parts) {
    for (const auto& [v, n] : a.hist) merged.hist[v] += n;
    merged.budget_hits += a.budget_hits;
    merged.fictitious += a.fictitious;
  }
  ResultRecord meta = make_meta("contour", c,
                                {{"samples", samples},
                                 {"metric", metric},
                                 {"budget", budget},
                                 {"time_bin", time_bin},
                                 {"budget_hits", merged.budget_hits},
                                 {"fictitious_events", merged.fictitious}});
  CsvTable table;
  table.columns = {"value", "count", "total"};
  std::vector<nlohmann::json> rows;
  for (const auto& [v, n] : merged.hist) {
    const std::string value = metric == "rho-time" ? fmt_double(static_cast<double>(v) * time_bin)
                                                   : std::to_string(v);
    table.add_row({value, std::to_string(n), std::to_string(samples)});
    rows.push_back({{"value", value}, {"count", n}, {"total", samples}});
  }
  emit_table(c, meta, table, rows);
  return (c.strict && merged.budget_hits > 0) ? 3 : 0;
}

int run_y1(const Common& c, std::uint64_t samples) {
  struct Acc {
    std::map<std::int64_t, std::uint64_t> hist;
    __int128 sum = 0;
    __int128 sum2 = 0;
  };
  auto parts = parallel_replicas<Acc>(samples, c.workers, Acc{}, [&](std::uint64_t r, Acc& acc) {
    Rng rng(RngStream{c.seed, mix64(kStreamY1Cmd, r)});
    const std::int64_t y = sample_Y1(rng);
    ++acc.hist[y];
    acc.sum += y;
    acc.sum2 += static_cast<__int128>(y) * y;
  });
  Acc merged;
  for (const Acc& a : parts) {
    for (const auto& [v, n] : a.hist) merged.hist[v] += n;
    merged.sum += a.sum;
    merged.sum2 += a.sum2;
  }
  const double n = static_cast<double>(samples);
  const double mean = static_cast<double>(merged.sum) / n;
  const double var = static_cast<double>(merged.sum2) / n - mean * mean;
  const double se = std::sqrt(std::max(0.0, var) / n);

  ResultRecord meta = make_meta("y1", c, {{"samples", samples}});
  meta.payload = {{"mean", mean}, {"se", se}, {"ci3_low", mean - 3 * se},
                  {"ci3_high", mean + 3 * se}};
  CsvTable table;
  table.columns = {"value", "count", "total"};
  std::vector<nlohmann::json> rows;
  for (const auto& [v, cnt] : merged.hist) {
    table.add_row({std::to_string(v), std::to_string(cnt), std::to_string(samples)});
    rows.push_back({{"value", v}, {"count", cnt}, {"total", samples}});
  }
  emit_table(c, meta, table, rows);
  if (!c.out.empty())
    std::cout << meta.payload.dump() << "\n";
  return 0;
}

int run_meanfield(const Common& c, std::uint64_t K, double tol, double ode_T, std::uint64_t ode_K,
                  double ode_h) {
  const auto steady = meanfield::steady_state(K, tol);
  const double q = steady.g / 2;

  // the two routes to sum_{k>=2} (k+1) a_k q^k
  double direct = 0, qk = q;
  for (std::size_t k = 2; k <= K; ++k) {
    qk *= q;
    direct += static_cast<double>(k + 1) * steady.a[k - 1] * qk;
  }
  nlohmann::json summary = {
      {"K", K},
      {"tol", tol},
      {"g", steady.g},
      {"m0", steady.c.m0()},
      {"m1", steady.c.m1()},
      {"m2", steady.c.m2()},
      {"residual", steady.residual},
      {"identity_square_minus_1", direct - 1.0},
      {"identity_linear_minus", direct - (steady.g + 1 - 2 * q)},
      {"c_head", std::vector<double>(steady.c.c.begin(),
                                     steady.c.c.begin() + std::min<std::size_t>(K, 6))},
  };
  if (ode_T > 0) {
    meanfield::MeanFieldVector c0;
    c0.c.assign(ode_K, 0.0);
    c0.c[0] = 1.0;  // monodisperse
    meanfield::IntegrateOptions opt;
    opt.h = ode_h;
    const auto traj = meanfield::integrate(c0, ode_T, opt);
    const auto steady_small = meanfield::steady_state(ode_K, tol);
    double err = 0;
    for (std::size_t k = 0; k < ode_K; ++k)
      err = std::max(err, std::abs(traj.states.back().c[k] - steady_small.c.c[k]));
    summary["ode"] = {{"T", ode_T},
                      {"K", ode_K},
                      {"h", ode_h},
                      {"max_err_vs_steady", err},
                      {"mass_drift", traj.mass_drift},
                      {"leak_budget", traj.leak_budget}};
  }

  ResultRecord meta = make_meta("meanfield", c,
                                {{"K", K}, {"tol", tol}, {"ode_T", ode_T}, {"ode_K", ode_K}});
  meta.payload = summary;
  CsvTable table;
  table.columns = {"k", "a_k", "c_k"};
  std::vector<nlohmann::json> rows;
  if (!c.out.empty() || c.format == "csv") {
    for (std::size_t k = 1; k <= K; ++k) {
      table.add_row({std::to_string(k), fmt_double(steady.a[k - 1]), fmt_double(steady.c.c[k - 1])});
      if (c.format != "csv")
        rows.push_back({{"k", k}, {"a_k", steady.a[k - 1]}, {"c_k", steady.c.c[k - 1]}});
    }
  }
  emit_table(c, meta, table, rows);
  if (!c.out.empty()) std::cout << summary.dump() << "\n";
  return 0;
}

int run_cluster_stats(const Common& c, std::uint64_t samples, const std::string& variant_name,
                      int l0, int kmax) {
  const SamplerVariant variant =
      variant_name == "step1" ? SamplerVariant::step1 : SamplerVariant::step1prime;
  const ClusterStats st =
      estimate_cluster_mass_distribution(samples, c.seed, variant, c.workers, l0);

  nlohmann::json counts = nlohmann::json::object();
  for (const auto& [k, n] : st.hist.counts) counts[std::to_string(k)] = n;
  ResultRecord meta = make_meta("cluster-stats", c,
                                {{"samples", samples},
                                 {"variant", variant_name},
                                 {"l0", l0},
                                 {"kmax", kmax}});
  meta.payload = {{"total", st.hist.total},
                  {"counts", counts},
                  {"discarded", st.discarded},
                  {"budget_exceeded", st.budget_exceeded},
                  {"max_window", st.max_window},
                  {"adaptive_warning", st.adaptive_warning},
                  {"sum_ck", st.hist.sum_ck()},
                  {"sum_k2_ck", st.hist.sum_k2_ck()},
                  {"sum_k2_ck_se", st.hist.sum_k2_ck_se()}};
  CsvTable table;
  table.columns = {"k", "c_hat", "se"};
  std::vector<nlohmann::json> rows;
  for (int k = 1; k <= kmax; ++k) {
    table.add_row({std::to_string(k), fmt_double(st.hist.ck(k)), fmt_double(st.hist.ck_se(k))});
    rows.push_back({{"k", k}, {"c_hat", st.hist.ck(k)}, {"se", st.hist.ck_se(k)}});
  }
  emit_table(c, meta, table, rows);
  return (c.strict && (st.adaptive_warning || st.budget_exceeded > 0)) ? 3 : 0;
}

int run_compare(const Common& c, const std::string& in_path, std::uint64_t K, double tol,
                int kmax) {
  std::ifstream in(in_path);
  if (!in) throw SimError("compare: cannot open '" + in_path + "'");
  std::string first;
  std::getline(in, first);
  const ResultRecord prev = ResultRecord::from_json(nlohmann::json::parse(first));
  if (prev.subcommand != "cluster-stats")
    throw SimError("compare: input is not a cluster-stats record");
  ClusterStats st;
  st.hist.total = prev.payload.at("total").get<std::uint64_t>();
  for (const auto& [k, n] : prev.payload.at("counts").items())
    st.hist.counts[std::stoi(k)] = n.get<std::uint64_t>();

  const auto steady = meanfield::steady_state(K, tol);
  const Comparison cmp = compare_with_meanfield(st, steady, kmax);

  ResultRecord meta = make_meta("compare", c, {{"in", in_path}, {"K", K}, {"tol", tol}});
  meta.payload = {{"mc_samples", st.hist.total}};
  CsvTable table;
  table.columns = {"k", "mean_field", "monte_carlo", "se", "z", "near_equal"};
  std::vector<nlohmann::json> rows;
  auto add = [&](const std::string& label, const CompareRow& row) {
    table.add_row({label, fmt_double(row.mean_field), fmt_double(row.monte_carlo),
                   fmt_double(row.se), fmt_double(row.z), row.near_equal ? "1" : "0"});
    rows.push_back({{"k", label},
                    {"mean_field", row.mean_field},
                    {"monte_carlo", row.monte_carlo},
                    {"se", row.se},
                    {"z", row.z},
                    {"near_equal", row.near_equal}});
  };
  for (const CompareRow& row : cmp.rows) add(std::to_string(row.k), row);
  add("m2", cmp.m2);
  emit_table(c, meta, table, rows);
  return 0;
}

int run_mixing(const Common& c, Site k, std::vector<int> ns, std::uint64_t samples) {
  if (ns.empty()) ns = {1, 2, 4, 8, 16};
  const auto points = mixing_sweep(k, ns, samples, c.seed, c.workers);
  ResultRecord meta = make_meta("mixing", c, {{"k", k}, {"n", ns}, {"samples", samples}});
  CsvTable table;
  table.columns = {"n", "estimate", "se_boot", "noise_floor", "n00", "n01", "n10", "n11"};
  std::vector<nlohmann::json> rows;
  for (const MixingPoint& p : points) {
    table.add_row({std::to_string(p.n), fmt_double(p.estimate), fmt_double(p.se_boot),
                   fmt_double(p.noise_floor), std::to_string(p.cells[0]),
                   std::to_string(p.cells[1]), std::to_string(p.cells[2]),
                   std::to_string(p.cells[3])});
    rows.push_back({{"n", p.n},
                    {"estimate", p.estimate},
                    {"se_boot", p.se_boot},
                    {"noise_floor", p.noise_floor},
                    {"cells", p.cells}});
  }
  emit_table(c, meta, table, rows);
  return 0;
}

int run_tte(const Common& c, const std::string& phi, std::vector<double> ts, Site l,
            std::uint64_t samples, Site radius) {
  if (ts.empty()) ts = {1, 2, 4, 8, 12};
  const auto points = tte_sweep(parse_initial_kind(phi), ts, l, samples, c.seed, c.workers, radius);
  ResultRecord meta = make_meta(
      "tte", c, {{"phi", phi}, {"t", ts}, {"l", l}, {"samples", samples}, {"radius", radius}});
  CsvTable table;
  table.columns = {"t", "tv", "noise_floor"};
  std::vector<nlohmann::json> rows;
  for (const TtePoint& p : points) {
    table.add_row({fmt_double(p.t), fmt_double(p.tv), fmt_double(p.noise_floor)});
    rows.push_back({{"t", p.t}, {"tv", p.tv}, {"noise_floor", p.noise_floor}});
  }
  emit_table(c, meta, table, rows);
  return 0;
}

int run_bench(const Common& c, Site l, std::uint64_t samples) {
  const BenchReport rep = bench_variants(l, samples, c.seed, c.workers);
  ResultRecord meta = make_meta("bench", c, {{"l", l}, {"samples", samples}});
  meta.payload = {{"median_us_step1", rep.median_us_step1},
                  {"median_us_step1prime", rep.median_us_step1prime},
                  {"speedup", rep.speedup},
                  {"median_width_step1", rep.median_width_step1},
                  {"median_width_step1prime", rep.median_width_step1prime},
                  {"law_p", rep.law_p}};
  Sink sink(c.out);
  write_jsonl_meta(*sink.os, meta);
  if (!c.out.empty()) std::cout << meta.payload.dump() << "\n";
  return 0;
}

}  // namespace

int cli_main(const std::vector<std::string>& args) {
  CLI::App app{"event-driven simulation and exact sampling for the 1d avalanche process"};
  app.require_subcommand(1);

  Common common;

  auto* sample = app.add_subcommand("sample", "perfect samples of the invariant law on [-l,l]");
  Site sample_l = 0;
  std::uint64_t sample_n = 1, sample_budget = 10'000'000;
  std::string sample_variant = "step1prime";
  sample->add_option("--l", sample_l, "window radius");
  sample->add_option("--samples", sample_n, "replica count");
  sample->add_option("--variant", sample_variant)->check(CLI::IsMember({"step1", "step1prime"}));
  sample->add_option("--budget", sample_budget, "event budget per replica");
  add_common(sample, common);

  auto* forward = app.add_subcommand("forward", "coupled Bernoulli/avalanche trajectory dump");
  Site fwd_radius = 20;
  std::uint64_t fwd_events = 1000;
  double fwd_time = 0;
  forward->add_option("--radius", fwd_radius, "window radius (vacant outside)");
  forward->add_option("--events", fwd_events, "jump-chain event count");
  forward->add_option("--time", fwd_time, "continuous horizon (overrides --events)");
  add_common(forward, common);

  auto* contour = app.add_subcommand("contour", "meeting time and excursion histograms");
  std::uint64_t ct_samples = 10'000, ct_budget = 10'000'000;
  std::string ct_metric = "rho-events";
  double ct_bin = 0.5;
  contour->add_option("--samples", ct_samples);
  contour->add_option("--metric", ct_metric)
      ->check(CLI::IsMember({"rho-events", "rho-time", "rmax", "lmin"}));
  contour->add_option("--budget", ct_budget);
  contour->add_option("--time-bin", ct_bin, "bin width for rho-time");
  add_common(contour, common);

  auto* y1 = app.add_subcommand("y1", "renewal increment sampler");
  std::uint64_t y1_samples = 100'000;
  y1->add_option("--samples", y1_samples);
  add_common(y1, common);

  auto* meanfield_cmd = app.add_subcommand("meanfield", "steady state of the mean-field model");
  std::uint64_t mf_K = 10'000, mf_ode_K = 64;
  double mf_tol = 1e-10, mf_ode_T = 0, mf_ode_h = 0.01;
  meanfield_cmd->add_option("--K", mf_K, "truncation order");
  meanfield_cmd->add_option("--tol", mf_tol, "residual tolerance for g");
  meanfield_cmd->add_option("--ode-T", mf_ode_T, "integrate the truncated system to T");
  meanfield_cmd->add_option("--ode-K", mf_ode_K, "truncation for the ODE run");
  meanfield_cmd->add_option("--ode-h", mf_ode_h, "base step for the ODE run");
  add_common(meanfield_cmd, common);

  auto* cluster = app.add_subcommand("cluster-stats", "Monte-Carlo mass of the edge (0,1) particle");
  std::uint64_t cs_samples = 100'000;
  std::string cs_variant = "step1prime";
  int cs_l0 = 16, cs_kmax = 8;
  cluster->add_option("--samples", cs_samples);
  cluster->add_option("--variant", cs_variant)->check(CLI::IsMember({"step1", "step1prime"}));
  cluster->add_option("--l0", cs_l0, "starting window radius");
  cluster->add_option("--kmax", cs_kmax, "rows in the c_k table");
  add_common(cluster, common);

  auto* compare = app.add_subcommand("compare", "cluster stats vs mean-field steady state");
  std::string cmp_in;
  std::uint64_t cmp_K = 10'000;
  double cmp_tol = 1e-10;
  int cmp_kmax = 6;
  compare->add_option("--in", cmp_in, "cluster-stats jsonl output")->required();
  compare->add_option("--K", cmp_K);
  compare->add_option("--tol", cmp_tol);
  compare->add_option("--kmax", cmp_kmax);
  add_common(compare, common);

  auto* mixing = app.add_subcommand("mixing", "dependence of (eta(k), eta(k+n)) at equilibrium");
  Site mx_k = 0;
  std::vector<int> mx_n;
  std::uint64_t mx_samples = 100'000;
  mixing->add_option("--k", mx_k, "base site");
  mixing->add_option("--n", mx_n, "separations (default 1 2 4 8 16)");
  mixing->add_option("--samples", mx_samples);
  add_common(mixing, common);

  auto* tte = app.add_subcommand("tte", "distance to equilibrium of forward runs");
  std::string tte_phi = "all-vacant";
  std::vector<double> tte_t;
  Site tte_l = 1, tte_radius = 60;
  std::uint64_t tte_samples = 20'000;
  tte->add_option("--phi", tte_phi)->check(CLI::IsMember({"all-vacant", "alternating", "random-half"}));
  tte->add_option("--t", tte_t, "times (default 1 2 4 8 12)");
  tte->add_option("--l", tte_l, "window radius for the TV cells (<= 3)")->check(CLI::Range(0, 3));
  tte->add_option("--samples", tte_samples);
  tte->add_option("--radius", tte_radius, "forward truncation radius");
  add_common(tte, common);

  auto* bench = app.add_subcommand("bench", "step 1 vs step 1' speed and width");
  Site bn_l = 3;
  std::uint64_t bn_samples = 10'000;
  bench->add_option("--l", bn_l);
  bench->add_option("--samples", bn_samples);
  add_common(bench, common);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (sample->parsed()) return run_sample(common, sample_l, sample_n, sample_variant, sample_budget);
    if (forward->parsed()) return run_forward(common, fwd_radius, fwd_events, fwd_time);
    if (contour->parsed()) return run_contour(common, ct_samples, ct_metric, ct_budget, ct_bin);
    if (y1->parsed()) return run_y1(common, y1_samples);
    if (meanfield_cmd->parsed()) return run_meanfield(common, mf_K, mf_tol, mf_ode_T, mf_ode_K, mf_ode_h);
    if (cluster->parsed()) return run_cluster_stats(common, cs_samples, cs_variant, cs_l0, cs_kmax);
    if (compare->parsed()) return run_compare(common, cmp_in, cmp_K, cmp_tol, cmp_kmax);
    if (mixing->parsed()) return run_mixing(common, mx_k, mx_n, mx_samples);
    if (tte->parsed()) return run_tte(common, tte_phi, tte_t, tte_l, tte_samples, tte_radius);
    if (bench->parsed()) return run_bench(common, bn_l, bn_samples);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

}  // namespace harness
}  // namespace avalanche
