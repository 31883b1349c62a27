// Copyright 2026 The Cosig Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cosig/error.hpp"
#include "cosig/evaluate.hpp"
#include "cosig/generators.hpp"
#include "cosig/io.hpp"
#include "cosig/jl.hpp"
#include "cosig/mw.hpp"
#include "cosig/oracle.hpp"
#include "cosig/revenue.hpp"
#include "cosig/rng.hpp"
#include "cosig/winner_mapping.hpp"

namespace cosig::cli {
namespace {

using Config = std::vector<std::pair<std::string, std::string>>;

// ------------------------------------------------------------- options

struct Common {
  std::uint64_t seed = 0;
  std::string output;
};

struct SolverFlags {
  std::string solver = "greedy";
  int samples = 64;
  int steps = 32;
  int roundings = 16;

  WelfareOptions options(std::uint64_t seed) const {
    WelfareOptions o;
    o.solver = solver == "cg" ? WelfareSolver::kContinuousGreedy
                              : WelfareSolver::kGreedy;
    o.continuous = {samples, steps, roundings, seed};
    return o;
  }
};

struct EvalArgs {
  std::string instance;
  std::string scheme;
};

struct SolveWelfareArgs {
  std::string instance;
  std::string scheme_out;
  SolverFlags solver;
  std::int64_t max_maps = OracleOptions{}.max_maps;
};

struct SolveRevenueArgs {
  std::string instance;
  std::string scheme_out;
  bool optimized_mix = false;
  SolverFlags solver;
  std::int64_t max_maps = OracleOptions{}.max_maps;
};

struct MwArgs {
  std::string mode = "known";
  double epsilon = 0.2;
  double delta = 0.1;
  int d = 64;
  int n = 4;
  int items = 16;
  int trials = 1;
  std::string signals_out;
};

struct JlArgs {
  int k = 1;
  double epsilon = 0.3;
  int n = 2;
  int d = 256;
  int items = 8;
  double t_scale = 1.0;
  std::int64_t rows = 0;
  std::string signal_out;
};

struct OracleArgs {
  std::string instance;
  std::string objective = "welfare";
  std::int64_t max_maps = OracleOptions{}.max_maps;
};

struct GenArgs {
  std::string kind = "random";
  // maxcover
  std::string spec;
  double density = 0.5;
  // random
  int m = 3;
  int n = 2;
  int signals = 3;
  int k = 3;
  std::string values = "uniform";
  double q = 0.5;
  std::optional<double> edge_density;
  int prior_size = 0;
  // geo
  std::string mode = "inner_product";
  int d = 8;
  int items = 6;
  int rank = 2;
};

struct BenchArgs {
  std::string suite = "small";
  bool timing = false;
};

// ------------------------------------------------------------- helpers

std::string Num(double value) { return format_number(value); }

double Ratio(double value, double opt) {
  return opt <= 1e-15 ? 1.0 : value / opt;
}

// Every option of the subcommand with its resolved value, in declaration
// order. Flags not given read as false.
Config ResolvedConfig(const CLI::App& app, const CLI::App& sub) {
  Config config{{"command", sub.get_name()}};
  auto add = [&](const CLI::Option* opt) {
    const std::string& name = opt->get_single_name();
    if (name == "help") return;
    std::string value;
    if (opt->count() > 0) {
      for (const auto& r : opt->reduced_results()) {
        if (!value.empty()) value += ",";
        value += r;
      }
      if (opt->get_expected_max() == 0 && value.empty()) value = "true";
    } else {
      value = opt->get_default_str();
      if (opt->get_expected_max() == 0) value = "false";
    }
    config.emplace_back(name, value);
  };
  for (const CLI::Option* opt : app.get_options()) add(opt);
  for (const CLI::Option* opt : sub.get_options()) add(opt);
  return config;
}

struct Loaded {
  Instance inst;
  std::optional<Prior> prior;
  std::string text;
};

Loaded LoadInstance(const std::string& path) {
  Loaded l;
  l.text = read_text_file(path);
  l.inst = parse_instance(l.text);
  l.prior = parse_prior(l.text, l.inst);
  return l;
}

Prior PriorOrPoint(const Loaded& l) {
  return l.prior ? *l.prior : Prior::point(l.inst.values);
}

// Full-information welfare under the prior; an upper bound on any scheme.
double FullInformationBound(const Instance& inst, const Prior& prior) {
  double total = 0.0;
  for (int l = 0; l < prior.size(); ++l) {
    total += prior.probs[l] *
             inst.p.dot(prior.support[l].colwise().maxCoeff().transpose());
  }
  return total;
}

bool WithinGuard(const Instance& inst, std::int64_t max_maps) {
  try {
    check_enumeration_budget(inst, max_maps);
    return true;
  } catch (const SizeGuardError&) {
    return false;
  }
}

std::string SchemeDocument(const Instance& inst, const Scheme& scheme,
                           const Config& config) {
  nlohmann::ordered_json doc =
      nlohmann::ordered_json::parse(format_scheme(inst, scheme));
  nlohmann::ordered_json cfg = nlohmann::ordered_json::object();
  for (const auto& [key, value] : config) cfg[key] = value;
  doc["config"] = std::move(cfg);
  return doc.dump(2) + "\n";
}

template <typename F>
double TimeMs(F&& f) {
  const auto start = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - start)
      .count();
}

// ---------------------------------------------------------- subcommands

std::string RunEval(const EvalArgs& a, const Config& config) {
  const Loaded l = LoadInstance(a.instance);
  const Scheme scheme =
      parse_scheme(a.scheme.empty() ? l.text : read_text_file(a.scheme), l.inst);
  const Prior prior = PriorOrPoint(l);
  std::string out = format_config_header(config);
  out += format_report_csv(l.inst, auction_report(l.inst, scheme));
  out += "# welfare=" + Num(welfare(l.inst, scheme, prior)) + "\n";
  out += "# revenue=" + Num(revenue(l.inst, scheme, prior)) + "\n";
  return out;
}

std::string RunSolveWelfare(const SolveWelfareArgs& a, const Common& c,
                            Config config) {
  const Loaded l = LoadInstance(a.instance);
  const Prior prior = PriorOrPoint(l);
  const WelfareSolution sol =
      solve_welfare(l.inst, prior, a.solver.options(c.seed));
  double bound;
  if (WithinGuard(l.inst, a.max_maps)) {
    bound = opt_welfare(l.inst, prior, {a.max_maps, true}).value;
    config.emplace_back("opt_bound_source", "oracle");
  } else {
    bound = FullInformationBound(l.inst, prior);
    config.emplace_back("opt_bound_source", "full_information");
  }
  std::string out = format_config_header(config);
  out += "welfare,opt_bound,ratio\n";
  out += Num(sol.welfare) + "," + Num(bound) + "," +
         Num(Ratio(sol.welfare, bound)) + "\n";
  if (a.scheme_out.empty()) {
    out += "\n" + format_scheme(l.inst, sol.scheme);
  } else {
    write_text_file(a.scheme_out, SchemeDocument(l.inst, sol.scheme, config));
  }
  return out;
}

std::string RunSolveRevenue(const SolveRevenueArgs& a, const Common& c,
                            const Config& config) {
  const Loaded l = LoadInstance(a.instance);
  if (l.prior) {
    throw UnsupportedConstraint("revenue solving needs known valuations");
  }
  const RevenuePlan plan =
      solve_revenue(l.inst, a.optimized_mix, a.solver.options(c.seed));
  std::string ratio = "NA";
  if (WithinGuard(l.inst, a.max_maps)) {
    ratio = Num(Ratio(plan.revenue(),
                      opt_revenue_det(l.inst, {a.max_maps, true}).value));
  }
  std::string out = format_config_header(config);
  out += "vstar,istar,alpha,welfare_h,rev_g,rev_x,chosen,ratio_vs_oracle\n";
  if (plan.x) {
    out += Num(plan.x->vstar) + "," + std::to_string(plan.x->istar) + "," +
           Num(plan.x->alpha) + "," + Num(plan.x->welfare_h) + ",";
  } else {
    out += "NA,NA,NA,NA,";
  }
  out += Num(plan.revenue_g) + "," + (plan.x ? Num(plan.revenue_x) : "NA") +
         "," + (plan.chose_x ? "x" : "g") + "," + ratio + "\n";
  if (a.scheme_out.empty()) {
    out += "\n" + format_scheme(l.inst, plan.chosen());
  } else {
    write_text_file(a.scheme_out, SchemeDocument(l.inst, plan.chosen(), config));
  }
  return out;
}

std::string RunMw(const MwArgs& a, const Common& c, const Config& config) {
  MWGuaranteeReport report;
  if (a.mode == "known") {
    const GeoInstance g = random_inner_product(a.d, a.n, a.items, c.seed);
    report = mw_welfare_guarantee_check(g, a.epsilon);
    if (!a.signals_out.empty()) {
      std::string csv = "omega_id,bits,signal\n";
      for (Index w = 0; w < g.items.cols(); ++w) {
        const BitString bits =
            encode(mw_signal_known(g.items.col(w), g.valuations, a.epsilon));
        csv += std::to_string(w) + "," + std::to_string(bits.size()) + "," +
               to_hex(bits) + "\n";
      }
      write_text_file(a.signals_out, format_config_header(config) + csv);
    }
  } else {
    if (!a.signals_out.empty()) {
      throw ValidationError("--signals-out needs --mode known");
    }
    const GeoInstance g = random_inner_product(a.d, 1, a.items, c.seed);
    report = mw_welfare_guarantee_check_bayes(g, a.n, a.epsilon, a.delta,
                                              a.trials, c.seed);
  }
  std::string out = format_config_header(config);
  out += "trial,omega_id,T,bits,welfare,opt,gap\n";
  for (const MWTrialRow& r : report.rows) {
    out += std::to_string(r.trial) + "," + std::to_string(r.omega_id) + "," +
           std::to_string(r.updates) + "," + std::to_string(r.bits) + "," +
           Num(r.welfare) + "," + Num(r.opt) + "," + Num(r.gap) + "\n";
  }
  return out;
}

double ScaleForRows(std::int64_t rows, int k, double epsilon, int n) {
  const double base = 131072.0 * k * k * std::log(3.0 * n / epsilon) /
                      std::pow(epsilon, 4);
  return (static_cast<double>(rows) - 0.5) / base;
}

std::string RunJl(const JlArgs& a, const Common& c, Config config) {
  const double t_scale =
      a.rows > 0 ? ScaleForRows(a.rows, a.k, a.epsilon, a.n) : a.t_scale;
  const JLParams params = jl_params(a.k, a.epsilon, a.n, a.d, t_scale);
  config.emplace_back("T", std::to_string(params.rows));
  config.emplace_back("r", std::to_string(params.r));
  config.emplace_back("eta", std::to_string(jl_signal_bits(params)));
  const SubspaceInstance s = random_subspace(a.d, a.n, a.k, a.items, c.seed);
  std::string out = format_config_header(config);
  out += "omega_id,bidder,value,estimate,error,bits\n";
  for (int w = 0; w < a.items; ++w) {
    const JLSignal signal = jl_signal(s.items.col(w), a.k, a.epsilon, a.n,
                                      splitmix64(c.seed + w), t_scale);
    const JLWire wire = encode(signal);
    if (w == 0 && !a.signal_out.empty()) {
      std::ofstream file(a.signal_out, std::ios::binary);
      file.write(reinterpret_cast<const char*>(wire.bytes.data()),
                 static_cast<std::streamsize>(wire.bytes.size()));
      if (!file) throw ValidationError("cannot write '" + a.signal_out + "'");
    }
    const std::vector<double> est =
        estimate_value_from_signal(signal, s.valuations);
    for (int i = 0; i < a.n; ++i) {
      const double value = subspace_value(s.items.col(w), s.valuations[i]);
      out += std::to_string(w) + "," + std::to_string(i) + "," + Num(value) +
             "," + Num(est[i]) + "," + Num(std::abs(est[i] - value)) + "," +
             std::to_string(wire.bit_length) + "\n";
    }
  }
  return out;
}

std::string RunOracle(const OracleArgs& a, const Config& config) {
  const Loaded l = LoadInstance(a.instance);
  const Prior prior = PriorOrPoint(l);
  const OracleOptions options{a.max_maps, true};
  const bool revenue_objective = a.objective == "revenue";
  if (revenue_objective && l.prior) {
    throw UnsupportedConstraint("the revenue oracle needs known valuations");
  }
  const OracleResult r = revenue_objective
                             ? opt_revenue_det(l.inst, options)
                             : opt_welfare(l.inst, prior, options);
  std::string out = format_config_header(config);
  out += format_report_csv(l.inst, auction_report(l.inst, r.scheme));
  out += "# oracle objective=" + to_string(r.objective) +
         " value=" + Num(r.value) +
         " enumerated=" + std::to_string(r.enumerated) + "\n";
  return out;
}

Instance GeoToInstance(const GenArgs& a, std::uint64_t seed) {
  Eigen::VectorXd p;
  Eigen::MatrixXd values(a.n, a.items);
  if (a.mode == "inner_product") {
    const GeoInstance g = random_inner_product(a.d, a.n, a.items, seed);
    p = g.probs;
    values = g.valuations.transpose() * g.items;
  } else {
    const SubspaceInstance s =
        random_subspace(a.d, a.n, a.rank, a.items, seed);
    p = Eigen::VectorXd::Constant(a.items, 1.0 / a.items);
    for (int i = 0; i < a.n; ++i) {
      for (int j = 0; j < a.items; ++j) {
        values(i, j) = subspace_value(s.items.col(j), s.valuations[i]);
      }
    }
  }
  return Instance::complete(p, values, a.signals, a.k);
}

std::string RunGen(const GenArgs& a, const Common& c, const Config& config) {
  Instance inst;
  if (a.kind == "maxcover") {
    const MaxCoverSpec spec =
        a.spec.empty() ? random_max_cover(a.m, a.n, a.k, a.density, c.seed)
                       : parse_max_cover(read_text_file(a.spec));
    inst = from_max_cover(spec);
  } else if (a.kind == "random") {
    RandomInstanceOptions o;
    o.m = a.m;
    o.n = a.n;
    o.num_signals = a.signals;
    o.k = a.k;
    o.seed = c.seed;
    if (a.values == "bernoulli") {
      o.values.kind = ValueDistribution::Kind::kBernoulli;
    }
    o.values.q = a.q;
    o.edge_density = a.edge_density;
    inst = random_instance(o);
  } else {
    inst = GeoToInstance(a, c.seed);
  }
  std::optional<Prior> prior;
  if (a.prior_size > 0) {
    ValueDistribution vd;
    if (a.values == "bernoulli") vd.kind = ValueDistribution::Kind::kBernoulli;
    vd.q = a.q;
    prior = random_prior(inst, a.prior_size, vd, splitmix64(c.seed));
  }
  nlohmann::ordered_json doc =
      nlohmann::ordered_json::parse(format_instance(inst, prior));
  nlohmann::ordered_json cfg = nlohmann::ordered_json::object();
  for (const auto& [key, value] : config) cfg[key] = value;
  doc["config"] = std::move(cfg);
  return doc.dump(2) + "\n";
}

// ---------------------------------------------------------------- bench

struct BenchRow {
  std::string instance;
  std::string algo;
  double value = 0.0;
  double opt = 0.0;
  double ratio = 0.0;
  double time_ms = 0.0;
};

std::string Name(const std::string& prefix, int index) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%03d", index);
  return prefix + "-" + buf;
}

// Sizes within m <= 5, n <= 3, |S| <= 4, k <= 3; odd indices get bipartite
// edges when `allow_bipartite` is set.
Instance SmallInstance(Rng& rng, int index, bool allow_bipartite) {
  RandomInstanceOptions o;
  o.m = 1 + static_cast<int>(rng.below(5));
  o.n = 1 + static_cast<int>(rng.below(3));
  o.num_signals = 1 + static_cast<int>(rng.below(4));
  o.k = 1 + static_cast<int>(rng.below(3));
  o.seed = rng.next();
  if (allow_bipartite && index % 2 == 1) {
    o.num_signals = std::max(o.num_signals, 2);
    o.edge_density = 0.5;
  }
  return random_instance(o);
}

void BenchSmall(std::uint64_t seed, std::vector<BenchRow>& rows) {
  Rng rng(seed);
  for (int idx = 0; idx < 200; ++idx) {
    const Instance inst = SmallInstance(rng, idx, true);
    const double opt = opt_welfare(inst).value;
    WelfareSolution greedy, cg;
    const double t_greedy = TimeMs([&] { greedy = solve_welfare(inst); });
    WelfareOptions o;
    o.solver = WelfareSolver::kContinuousGreedy;
    o.continuous = {64, 32, 16, splitmix64(seed + idx)};
    const double t_cg = TimeMs([&] { cg = solve_welfare(inst, o); });
    const std::string name = Name("small", idx);
    rows.push_back({name, "cg", cg.welfare, opt, Ratio(cg.welfare, opt), t_cg});
    rows.push_back({name, "greedy", greedy.welfare, opt,
                    Ratio(greedy.welfare, opt), t_greedy});
  }
}

void BenchMw(std::uint64_t seed, std::vector<BenchRow>& rows) {
  const double eps = 0.2;
  for (int idx = 0; idx < 10; ++idx) {
    const int d = idx % 2 == 0 ? 64 : 1024;
    const int n = 1 + idx % 8;
    const GeoInstance g =
        random_inner_product(d, n, 20, splitmix64(seed + idx));
    MWGuaranteeReport r;
    const double t = TimeMs([&] { r = mw_welfare_guarantee_check(g, eps); });
    const std::string name = Name("mw", idx);
    rows.push_back({name, "mw", r.mean_welfare, r.mean_opt,
                    Ratio(r.mean_welfare, r.mean_opt), t});
    rows.push_back({name, "mw_gap", r.max_gap, eps, r.max_gap / eps, t});
    const double cap = static_cast<double>(mw_max_updates(d, eps));
    rows.push_back({name, "mw_updates", static_cast<double>(r.max_updates),
                    cap, r.max_updates / cap, t});
  }
}

void BenchJl(std::uint64_t seed, std::vector<BenchRow>& rows) {
  const double eps = 0.3;
  const int d = 512;
  const int items = 5;
  for (int idx = 0; idx < 10; ++idx) {
    const int k = 1 + idx % 3;
    const int n = 1 + idx % 10;
    const double t_scale = ScaleForRows(2048, k, eps, n);
    const SubspaceInstance s =
        random_subspace(d, n, k, items, splitmix64(seed + idx));
    double max_err = 0.0;
    std::int64_t bits = 0;
    const double t = TimeMs([&] {
      for (int w = 0; w < items; ++w) {
        const JLSignal sig = jl_signal(s.items.col(w), k, eps, n,
                                       splitmix64(seed + 100 * idx + w),
                                       t_scale);
        bits = encode(sig).bit_length;
        const std::vector<double> est =
            estimate_value_from_signal(sig, s.valuations);
        for (int i = 0; i < n; ++i) {
          max_err = std::max(
              max_err,
              std::abs(est[i] - subspace_value(s.items.col(w), s.valuations[i])));
        }
      }
    });
    const std::string name = Name("jl", idx);
    const double eta =
        static_cast<double>(jl_signal_bits(jl_params(k, eps, n, d, t_scale)));
    rows.push_back({name, "jl_bits", static_cast<double>(bits), eta,
                    bits / eta, t});
    rows.push_back({name, "jl_err", max_err, eps, max_err / eps, t});
  }
}

void BenchRevenue(std::uint64_t seed, std::vector<BenchRow>& rows) {
  Rng rng(seed);
  auto add = [&](const std::string& name, const Instance& inst) {
    const double opt = opt_revenue_det(inst).value;
    RevenuePlan plan;
    const double t = TimeMs([&] { plan = solve_revenue(inst); });
    rows.push_back({name, "solve_revenue", plan.revenue(), opt,
                    Ratio(plan.revenue(), opt), t});
  };
  for (int idx = 0; idx < 100; ++idx) {
    add(Name("rev", idx), SmallInstance(rng, idx, false));
  }
  for (int idx = 0; idx < 50; ++idx) {
    add(Name("revcover", idx),
        from_max_cover(random_max_cover(5, 3, 2, 0.5, splitmix64(seed + idx))));
  }
}

void BenchMaxCover(std::uint64_t seed, std::vector<BenchRow>& rows) {
  for (int idx = 0; idx < 50; ++idx) {
    const int m = 4 + idx % 5;
    const int n = 3 + idx % 3;
    const MaxCoverSpec spec =
        random_max_cover(m, n, 2, 0.5, splitmix64(seed + idx));
    const Instance inst = from_max_cover(spec);
    const double opt = opt_welfare(inst).value;
    WelfareSolution greedy;
    const double t = TimeMs([&] { greedy = solve_welfare(inst); });
    const std::string name = Name("maxcover", idx);
    rows.push_back({name, "greedy", greedy.welfare, opt,
                    Ratio(greedy.welfare, opt), t});
    const double covered =
        static_cast<double>(coverage(spec, scheme_to_cover(spec, greedy.scheme))) / m;
    rows.push_back({name, "greedy_cover", covered, opt, Ratio(covered, opt), t});
  }
}

std::string RunBench(const BenchArgs& a, const Common& c,
                     const Config& config) {
  std::vector<BenchRow> rows;
  if (a.suite == "small") {
    BenchSmall(c.seed, rows);
  } else if (a.suite == "mw") {
    BenchMw(c.seed, rows);
  } else if (a.suite == "jl") {
    BenchJl(c.seed, rows);
  } else if (a.suite == "revenue") {
    BenchRevenue(c.seed, rows);
  } else {
    BenchMaxCover(c.seed, rows);
  }
  std::stable_sort(rows.begin(), rows.end(),
                   [](const BenchRow& x, const BenchRow& y) {
                     return std::tie(x.instance, x.algo) <
                            std::tie(y.instance, y.algo);
                   });
  std::string out = format_config_header(config);
  out += "instance,algo,value,opt,ratio,time_ms\n";
  for (const BenchRow& r : rows) {
    out += r.instance + "," + r.algo + "," + Num(r.value) + "," + Num(r.opt) +
           "," + Num(r.ratio) + "," + (a.timing ? Num(r.time_ms) : "NA") +
           "\n";
  }
  return out;
}

// --------------------------------------------------------------- wiring

void AddSolverFlags(CLI::App* sub, SolverFlags& s) {
  sub->add_option("--solver", s.solver, "Welfare sub-solver")
      ->check(CLI::IsMember({"greedy", "cg"}));
  sub->add_option("--samples", s.samples, "Continuous greedy samples per step")
      ->check(CLI::PositiveNumber);
  sub->add_option("--steps", s.steps, "Continuous greedy steps")
      ->check(CLI::PositiveNumber);
  sub->add_option("--roundings", s.roundings, "Swap roundings kept best-of")
      ->check(CLI::PositiveNumber);
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Constrained signaling for second-price auctions", "cosig"};
  app.option_defaults()->always_capture_default();
  app.require_subcommand(1);
  app.fallthrough();

  Common common;
  app.add_option("--seed", common.seed, "Seed (falls back to SIG_SEED)")
      ->envname("SIG_SEED");
  app.add_option("-o,--output", common.output, "Write results to this file");

  EvalArgs eval;
  CLI::App* eval_cmd = app.add_subcommand("eval", "Auction report of a scheme");
  eval_cmd->add_option("--instance", eval.instance, "Instance file")
      ->required()->check(CLI::ExistingFile);
  eval_cmd->add_option("--scheme", eval.scheme,
                       "Scheme file (default: the instance's scheme block)")
      ->check(CLI::ExistingFile);

  SolveWelfareArgs sw;
  CLI::App* sw_cmd =
      app.add_subcommand("solve-welfare", "Welfare via winner mappings");
  sw_cmd->add_option("--instance", sw.instance, "Instance file")
      ->required()->check(CLI::ExistingFile);
  AddSolverFlags(sw_cmd, sw.solver);
  sw_cmd->add_option("--scheme-out", sw.scheme_out, "Write the scheme here");
  sw_cmd->add_option("--max-maps", sw.max_maps, "Oracle size guard for the bound");

  SolveRevenueArgs sr;
  CLI::App* sr_cmd =
      app.add_subcommand("solve-revenue", "Revenue via the two procedures");
  sr_cmd->add_option("--instance", sr.instance, "Instance file")
      ->required()->check(CLI::ExistingFile);
  sr_cmd->add_flag("--optimized-mix", sr.optimized_mix,
                   "Mix h with weight alpha/(1+alpha)");
  AddSolverFlags(sr_cmd, sr.solver);
  sr_cmd->add_option("--scheme-out", sr.scheme_out, "Write the scheme here");
  sr_cmd->add_option("--max-maps", sr.max_maps, "Oracle size guard for the ratio");

  MwArgs mw;
  CLI::App* mw_cmd =
      app.add_subcommand("mw", "Multiplicative-weights signals on random items");
  mw_cmd->add_option("--mode", mw.mode)->check(CLI::IsMember({"known", "bayes"}));
  mw_cmd->add_option("--epsilon", mw.epsilon);
  mw_cmd->add_option("--delta", mw.delta);
  mw_cmd->add_option("--d", mw.d, "Dimension")->check(CLI::PositiveNumber);
  mw_cmd->add_option("--n", mw.n, "Players")->check(CLI::PositiveNumber);
  mw_cmd->add_option("--items", mw.items)->check(CLI::PositiveNumber);
  mw_cmd->add_option("--trials", mw.trials)->check(CLI::PositiveNumber);
  mw_cmd->add_option("--signals-out", mw.signals_out,
                     "Write hex-encoded signals (known mode)");

  JlArgs jl;
  CLI::App* jl_cmd =
      app.add_subcommand("jl", "Projection signals for subspace valuations");
  jl_cmd->add_option("--k", jl.k, "Subspace rank")->check(CLI::PositiveNumber);
  jl_cmd->add_option("--epsilon", jl.epsilon);
  jl_cmd->add_option("--n", jl.n, "Players")->check(CLI::PositiveNumber);
  jl_cmd->add_option("--d", jl.d, "Dimension")->check(CLI::PositiveNumber);
  jl_cmd->add_option("--items", jl.items)->check(CLI::PositiveNumber);
  jl_cmd->add_option("--t-scale", jl.t_scale, "Multiplier on the row count");
  jl_cmd->add_option("--rows", jl.rows, "Target row count (overrides --t-scale)");
  jl_cmd->add_option("--signal-out", jl.signal_out,
                     "Write the first item's encoded signal here");

  OracleArgs oracle;
  CLI::App* oracle_cmd =
      app.add_subcommand("oracle", "Exhaustive optimum over deterministic maps");
  oracle_cmd->add_option("--instance", oracle.instance, "Instance file")
      ->required()->check(CLI::ExistingFile);
  oracle_cmd->add_option("--objective", oracle.objective)
      ->check(CLI::IsMember({"welfare", "revenue"}));
  oracle_cmd->add_option("--max-maps", oracle.max_maps);

  GenArgs gen;
  CLI::App* gen_cmd = app.add_subcommand("gen", "Write an instance file");
  gen_cmd->add_option("--kind", gen.kind)
      ->check(CLI::IsMember({"maxcover", "random", "geo"}));
  gen_cmd->add_option("--spec", gen.spec, "Max-cover spec file")
      ->check(CLI::ExistingFile);
  gen_cmd->add_option("--density", gen.density, "Max-cover set density");
  gen_cmd->add_option("--m", gen.m, "Items")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--n", gen.n, "Players or sets")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--signals", gen.signals)->check(CLI::PositiveNumber);
  gen_cmd->add_option("--k", gen.k, "Signal budget")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--values", gen.values)
      ->check(CLI::IsMember({"uniform", "bernoulli"}));
  gen_cmd->add_option("--q", gen.q, "Bernoulli parameter");
  gen_cmd->add_option("--edge-density", gen.edge_density);
  gen_cmd->add_option("--prior-size", gen.prior_size, "Entries of a random prior");
  gen_cmd->add_option("--mode", gen.mode, "Geometric mode")
      ->check(CLI::IsMember({"inner_product", "subspace"}));
  gen_cmd->add_option("--d", gen.d, "Geometric dimension")->check(CLI::PositiveNumber);
  gen_cmd->add_option("--items", gen.items, "Geometric items")
      ->check(CLI::PositiveNumber);
  gen_cmd->add_option("--rank", gen.rank, "Subspace rank")->check(CLI::PositiveNumber);

  BenchArgs bench;
  CLI::App* bench_cmd = app.add_subcommand("bench", "Benchmark suites");
  bench_cmd->add_option("--suite", bench.suite)
      ->check(CLI::IsMember({"small", "mw", "jl", "revenue", "maxcover"}));
  bench_cmd->add_flag("--timing", bench.timing, "Record wall-clock times");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    std::string result;
    if (eval_cmd->parsed()) {
      result = RunEval(eval, ResolvedConfig(app, *eval_cmd));
    } else if (sw_cmd->parsed()) {
      result = RunSolveWelfare(sw, common, ResolvedConfig(app, *sw_cmd));
    } else if (sr_cmd->parsed()) {
      result = RunSolveRevenue(sr, common, ResolvedConfig(app, *sr_cmd));
    } else if (mw_cmd->parsed()) {
      result = RunMw(mw, common, ResolvedConfig(app, *mw_cmd));
    } else if (jl_cmd->parsed()) {
      result = RunJl(jl, common, ResolvedConfig(app, *jl_cmd));
    } else if (oracle_cmd->parsed()) {
      result = RunOracle(oracle, ResolvedConfig(app, *oracle_cmd));
    } else if (gen_cmd->parsed()) {
      result = RunGen(gen, common, ResolvedConfig(app, *gen_cmd));
    } else {
      result = RunBench(bench, common, ResolvedConfig(app, *bench_cmd));
    }
    if (common.output.empty()) {
      out << result;
    } else {
      write_text_file(common.output, result);
    }
    return kExitOk;
  } catch (const SizeGuardError& e) {
    err << "size guard: " << e.what() << "\n";
    return kExitSizeGuard;
  } catch (const ValidationError& e) {
    err << "invalid input: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitError;
  }
}

}  // namespace cosig::cli
