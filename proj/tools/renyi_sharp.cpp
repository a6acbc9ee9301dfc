#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "cli_support.hpp"
#include "renyi/channel_div.hpp"
#include "renyi/io.hpp"
#include "renyi/parallel.hpp"
#include "renyi/properties.hpp"
#include "renyi/reference_data.hpp"

using namespace renyi;
using cli::Cell;
using cli::Table;

namespace {

enum Exit { kOk = 0, kInput = 1, kPartial = 2, kBudget = 3 };

struct Common {
  std::string alphas = "1.5";
  int bits = kDefaultDyadicLevel;
  double tol = 1e-8;
  int max_iter = 200;
  int size_budget = 1200;
  int jobs = 0;
  bool json = false;
  std::string out;

  SharpOptions sharp() const {
    SharpOptions o;
    o.bits = bits;
    o.solver.tol = tol;
    o.solver.max_iter = max_iter;
    o.solver.size_budget = size_budget;
    return o;
  }
  int workers() const {
    if (jobs > 0) return jobs;
    return std::max(1u, std::thread::hardware_concurrency());
  }
  std::vector<double> alpha_grid() const {
    const auto g = cli::parse_grid(alphas);
    for (double a : g)
      if (!(a > 1.0 + 1e-6)) throw Error(ErrorKind::OutOfRange, "alpha must exceed 1 + 1e-6");
    return g;
  }
};

// Per-cell outcome. Solver failures become row statuses; any other library
// error is carried out of the worker and rethrown by settle().
struct Outcome {
  std::string status = "Optimal";
  bool failed = false;
  std::optional<Error> fatal;
};

template <class Fn>
Outcome guarded(Fn&& fn) {
  Outcome o;
  try {
    fn();
  } catch (const Error& e) {
    o.failed = true;
    o.status = std::string(to_string(e.kind()));
    if (e.kind() == ErrorKind::SolverFailure)
      spdlog::warn("{}", e.what());
    else
      o.fatal = e;
  }
  return o;
}

int settle(const std::vector<Outcome>& outcomes) {
  for (const auto& o : outcomes)
    if (o.fatal) throw *o.fatal;
  for (const auto& o : outcomes)
    if (o.failed) return kPartial;
  return kOk;
}

void emit(const Table& t, const Common& c) {
  std::ofstream file;
  if (!c.out.empty()) {
    file.open(c.out);
    if (!file) throw Error(ErrorKind::Parse, "cannot open output file " + c.out);
  }
  std::ostream& os = c.out.empty() ? std::cout : file;
  if (c.json)
    t.write_json(os);
  else
    t.write_csv(os);
}

void add_common(CLI::App* app, Common& c, bool with_alphas = true) {
  if (with_alphas) {
    app->add_option("--alpha,--alphas", c.alphas,
                    "Order or inclusive grid start:stop:step (exact decimals); lists with ','")
        ->capture_default_str();
  }
  app->add_option("--bits", c.bits, "Dyadic level for beta = 1/alpha")
      ->check(CLI::Range(2, 14))
      ->capture_default_str();
  app->add_option("--tol", c.tol, "Solver tolerance")
      ->check(CLI::Range(1e-10, 1e-4))
      ->capture_default_str();
  app->add_option("--max-iter", c.max_iter, "Solver iteration cap")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app->add_option("--size-budget", c.size_budget, "Cap on the realified block dimension")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app->add_option("--jobs", c.jobs, "Worker threads (default: number of cores)")
      ->check(CLI::NonNegativeNumber);
  app->add_flag("--json", c.json, "Emit rows as a JSON array instead of CSV");
  app->add_option("--out", c.out, "Output file (default: stdout)");
}

// ---------------------------------------------------------------------------

struct StateArgs {
  std::string rho, sigma;
  std::string epsilon;
};

int run_state_div(const StateArgs& a, const Common& c) {
  const auto alphas = c.alpha_grid();
  std::vector<double> eps;
  std::vector<std::pair<HermitianOperator, HermitianOperator>> pairs;
  if (!a.epsilon.empty()) {
    eps = cli::parse_grid(a.epsilon);
    for (double e : eps) {
      if (!(e > 0.0 && e < 1.0)) throw Error(ErrorKind::OutOfRange, "epsilon must lie in (0, 1)");
      pairs.push_back(reference::entangled_family(e));
    }
  } else {
    if (a.rho.empty() || a.sigma.empty())
      throw Error(ErrorKind::Parse, "state-div needs --rho and --sigma, or --epsilon");
    auto rho = io::load_state(a.rho);
    auto sigma = io::load_state(a.sigma);
    if (rho.dim() != sigma.dim())
      throw Error(ErrorKind::DimensionMismatch, "rho is " + std::to_string(rho.dim()) +
                                                    "-dimensional, sigma is " +
                                                    std::to_string(sigma.dim()));
    pairs.emplace_back(std::move(rho), std::move(sigma));
  }
  const int na = static_cast<int>(alphas.size());
  const int cells = static_cast<int>(pairs.size()) * na;
  std::vector<Outcome> outcomes(cells);
  std::vector<std::vector<Cell>> rows(cells);
  const auto opts = c.sharp();
  parallel_for(cells, c.workers(), [&](int idx) {
    const auto& [rho, sigma] = pairs[idx / na];
    const double alpha = alphas[idx % na];
    std::vector<Cell> row;
    if (!eps.empty()) row.emplace_back(eps[idx / na]);
    row.emplace_back(alpha);
    DivergenceResult r;
    const double nan = std::nan("");
    double sw = nan, geo = nan, dm = nan;
    outcomes[idx] = guarded([&] {
      sw = d_sandwiched(rho, sigma, alpha);
      geo = d_geometric(rho, sigma, alpha);
      dm = d_max(rho, sigma);
      r = d_sharp_state(rho, sigma, alpha, opts);
    });
    const bool ok = !outcomes[idx].failed;
    row.emplace_back(ok ? r.D_lo : nan);
    row.emplace_back(ok ? r.D_hi : nan);
    row.emplace_back(sw);
    row.emplace_back(geo);
    row.emplace_back(dm);
    row.emplace_back(ok ? r.value_Q : nan);
    row.emplace_back(static_cast<std::int64_t>(ok ? r.solver.iterations : 0));
    std::string status = outcomes[idx].status;
    if (ok && !std::isfinite(r.value_D)) status = "SupportViolation";
    else if (ok && !r.witness_ok) {
      status = "WitnessRejected";
      outcomes[idx].failed = true;
    }
    row.emplace_back(status);
    rows[idx] = std::move(row);
  });
  Table t;
  if (!eps.empty()) t.header.push_back("epsilon");
  for (const char* h : {"alpha", "D_sharp_lo", "D_sharp_hi", "D_sandwiched", "D_geometric",
                        "D_max", "Q_sharp", "iterations", "status"})
    t.header.emplace_back(h);
  t.rows = std::move(rows);
  const int code = settle(outcomes);
  emit(t, c);
  return code;
}

// ---------------------------------------------------------------------------

struct ChannelArgs {
  std::string channel, reference;
  std::vector<int> orders{1};
  std::string gammas;
  std::string rates;
  std::string epsilon = "0";
  int uses = 1;
};

int run_channel_div(const ChannelArgs& a, const Common& c) {
  const auto alphas = c.alpha_grid();
  const auto n = io::load_channel(a.channel);
  const auto m = io::load_channel(a.reference);
  const int na = static_cast<int>(alphas.size());
  std::vector<Outcome> outcomes(na);
  std::vector<std::vector<Cell>> rows(na);
  const auto opts = c.sharp();
  parallel_for(na, c.workers(), [&](int k) {
    ChannelDivResult r;
    outcomes[k] = guarded([&] { r = d_sharp_channel(n, m, alphas[k], opts); });
    const double nan = std::nan("");
    const bool ok = !outcomes[k].failed;
    std::string status = outcomes[k].status;
    if (ok && !std::isfinite(r.value_D)) status = "SupportViolation";
    rows[k] = {alphas[k],
               ok ? r.D_lo : nan,
               ok ? r.D_hi : nan,
               ok ? r.value_Q : nan,
               static_cast<std::int64_t>(ok ? r.solver.iterations : 0),
               status};
  });
  Table t{{"alpha", "D_sharp_lo", "D_sharp_hi", "Q_sharp", "iterations", "status"}, std::move(rows)};
  const int code = settle(outcomes);
  emit(t, c);
  return code;
}

int run_hierarchy(const ChannelArgs& a, const Common& c) {
  const auto alphas = c.alpha_grid();
  const auto n = io::load_channel(a.channel);
  const auto m = io::load_channel(a.reference);
  for (int order : a.orders)
    if (order < 1) throw Error(ErrorKind::OutOfRange, "--m must be >= 1");
  const int na = static_cast<int>(alphas.size());
  const int cells = na * static_cast<int>(a.orders.size());
  std::vector<Outcome> outcomes(cells);
  std::vector<std::vector<Cell>> rows(cells);
  auto opts = c.sharp();
  opts.both_brackets = false;
  parallel_for(cells, c.workers(), [&](int idx) {
    const double alpha = alphas[idx % na];
    const int order = a.orders[idx / na];
    HierarchyBound hb;
    outcomes[idx] = guarded([&] { hb = hierarchy_bound(n, m, alpha, order, opts); });
    const double nan = std::nan("");
    const bool ok = !outcomes[idx].failed;
    std::string status = outcomes[idx].status;
    if (ok && !std::isfinite(hb.upper)) status = "SupportViolation";
    rows[idx] = {alpha,
                 static_cast<std::int64_t>(order),
                 ok ? hb.upper : nan,
                 ok ? hb.lower : nan,
                 ok ? hb.correction : nan,
                 status};
  });
  Table t{{"alpha", "m", "upper", "lower", "correction", "status"}, std::move(rows)};
  const int code = settle(outcomes);
  emit(t, c);
  return code;
}

std::function<QChannel(double)> channel_family(const std::string& name) {
  if (name == "ad") return amplitude_damping;
  if (name == "depol") return [](double p) { return depolarizing(p, 2); };
  throw Error(ErrorKind::Parse, "channel family must be 'ad' or 'depol' when --gammas is given");
}

int run_capacity(const ChannelArgs& a, const Common& c) {
  const auto alphas = c.alpha_grid();
  auto opts = c.sharp();
  opts.both_brackets = false;
  std::vector<CapacityRow> rows;
  if (!a.gammas.empty()) {
    const auto family = channel_family(a.channel);
    rows = capacity_curve(cli::parse_grid(a.gammas), alphas, opts, family, c.workers());
  } else {
    const auto n = io::load_channel(a.channel);
    rows = capacity_curve({0.0}, alphas, opts, [&](double) { return n; }, c.workers());
  }
  Table t{{"gamma", "best_alpha", "bound", "failed_cells", "status"}, {}};
  int code = kOk;
  for (const auto& r : rows) {
    if (r.message.rfind("SizeBudget", 0) == 0)
      throw Error(ErrorKind::SizeBudget, r.message.substr(r.message.find(':') + 2));
    std::string status = "Optimal";
    if (!r.ok) status = "SolverFailure";
    else if (r.failed_cells > 0) status = "Partial";
    if (status != "Optimal") code = kPartial;
    if (!r.message.empty()) spdlog::warn("gamma {}: {}", r.gamma, r.message);
    t.rows.push_back({r.gamma, r.ok ? r.best_alpha : std::nan(""), r.ok ? r.value : std::nan(""),
                      static_cast<std::int64_t>(r.failed_cells), status});
  }
  emit(t, c);
  return code;
}

int run_discrim(const ChannelArgs& a, const Common& c) {
  const auto alphas = c.alpha_grid();
  const auto rates = cli::parse_grid(a.rates);
  const auto n = io::load_channel(a.channel);
  const auto m = io::load_channel(a.reference);
  const int order = a.orders.front();
  const int na = static_cast<int>(alphas.size());
  auto opts = c.sharp();
  opts.both_brackets = false;
  std::vector<Outcome> outcomes(na);
  std::vector<std::vector<ExponentRow>> per_alpha(na);
  parallel_for(na, c.workers(), [&](int k) {
    outcomes[k] = guarded(
        [&] { per_alpha[k] = strong_converse_curve(n, m, rates, {alphas[k]}, order, opts); });
  });
  const int code = settle(outcomes);
  Table t{{"r", "exponent", "best_alpha", "status"}, {}};
  for (std::size_t i = 0; i < rates.size(); ++i) {
    ExponentRow best;
    best.r = rates[i];
    for (int k = 0; k < na; ++k) {
      if (outcomes[k].failed) continue;
      const auto& row = per_alpha[k][i];
      if (row.exponent > best.exponent) best = row;
    }
    t.rows.push_back({best.r, best.exponent, best.best_alpha, code == kOk ? "Optimal" : "Partial"});
  }
  emit(t, c);
  return code;
}

int run_rate_bound(const ChannelArgs& a, const Common& c) {
  const auto alphas = c.alpha_grid();
  const auto n = io::load_channel(a.channel);
  auto opts = c.sharp();
  opts.both_brackets = false;
  Table t{{"epsilon", "n", "bound", "best_alpha", "status"}, {}};
  int code = kOk;
  for (double e : cli::parse_grid(a.epsilon)) {
    RateBound rb;
    const Outcome o = guarded([&] { rb = two_way_rate_bound(n, alphas, e, a.uses, opts); });
    if (o.fatal) throw *o.fatal;
    if (o.failed) code = kPartial;
    t.rows.push_back({e, static_cast<std::int64_t>(a.uses), o.failed ? std::nan("") : rb.value,
                      o.failed ? std::nan("") : rb.best_alpha, o.status});
  }
  emit(t, c);
  return code;
}

// ---------------------------------------------------------------------------
// selftest

struct SuiteResult {
  std::string name;
  int instances = 0;
  double worst = 0.0;
  double tol = 0.0;
  bool pass = false;
};

SuiteResult from_check(const props::Check& ch) {
  return {ch.name, ch.instances, ch.worst, ch.tol, ch.pass()};
}

SuiteResult golden_family() {
  SuiteResult s{"family_sharp", 0, 0.0, 1e-2, false};
  SharpOptions o;
  o.bits = 10;
  o.both_brackets = false;
  for (const auto& row : reference::kFamilyAlpha15) {
    const auto [rho, sigma] = reference::entangled_family(row.eps);
    s.worst = std::max(s.worst, std::abs(d_sharp_state(rho, sigma, 1.5, o).value_D - row.d_sharp));
    ++s.instances;
  }
  s.pass = s.worst <= s.tol;
  return s;
}

SuiteResult golden_closed_forms() {
  SuiteResult s{"family_closed_forms", 0, 0.0, 1e-6, false};
  for (const auto& row : reference::kFamilyAlpha15) {
    const auto [rho, sigma] = reference::entangled_family(row.eps);
    s.worst = std::max(s.worst, std::abs(d_sandwiched(rho, sigma, 1.5) - row.d_sandwiched));
    s.worst = std::max(s.worst, std::abs(d_geometric(rho, sigma, 1.5) - row.d_geometric));
    s.instances += 2;
  }
  const auto [rho, sigma] = reference::entangled_family(reference::kFamilyEps);
  s.worst = std::max(s.worst, std::abs(d_sandwiched(rho, sigma, 2.0) - reference::kSandwichedAlpha2));
  s.worst = std::max(s.worst, std::abs(d_sandwiched(rho, sigma, 4.0) - reference::kSandwichedAlpha4));
  s.instances += 2;
  s.pass = s.worst <= s.tol;
  return s;
}

SuiteResult golden_family_dyadic() {
  SuiteResult s{"family_dyadic", 0, 0.0, 5e-3, false};
  const auto [rho, sigma] = reference::entangled_family(reference::kFamilyEps);
  SharpOptions o;
  o.both_brackets = false;
  s.worst = std::max(s.worst, std::abs(d_sharp_state(rho, sigma, 2.0, o).value_D - reference::kSharpAlpha2));
  s.worst = std::max(s.worst, std::abs(d_sharp_state(rho, sigma, 4.0, o).value_D - reference::kSharpAlpha4));
  s.instances = 2;
  s.pass = s.worst <= s.tol;
  return s;
}

SuiteResult golden_capacity(int jobs) {
  SuiteResult s{"ad_capacity", 0, 0.0, 1e-2, false};
  std::vector<double> gammas;
  for (const auto& r : reference::kAmplitudeDampingCapacity) gammas.push_back(r.gamma);
  SharpOptions o;
  o.both_brackets = false;
  const auto rows = capacity_curve(gammas, cli::parse_grid("1.1:2.0:0.1"), o, {}, jobs);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const double err = rows[i].ok ? std::abs(rows[i].value - reference::kAmplitudeDampingCapacity[i].value)
                                  : infinite();
    s.worst = std::max(s.worst, err);
    ++s.instances;
  }
  s.pass = s.worst <= s.tol;
  return s;
}

// Selftest instance counts; the acceptance binary runs the same checks at 30.
struct SuiteSpec {
  const char* name;
  std::function<SuiteResult(std::uint64_t, props::WitnessTally&, int)> run;
};

std::vector<SuiteSpec> suites() {
  using props::WitnessTally;
  auto wrap = [](auto fn, int count) {
    return [fn, count](std::uint64_t seed, WitnessTally& w, int) { return from_check(fn(count, seed, w)); };
  };
  return {
      {"ordering", wrap(props::ordering, 12)},
      {"data_processing", wrap(props::data_processing, 10)},
      {"state_subadditivity", wrap(props::state_subadditivity, 6)},
      {"channel_subadditivity", wrap(props::channel_subadditivity, 3)},
      {"chain_rule", wrap(props::chain_rule, 4)},
      {"isometric_invariance", wrap(props::isometric_invariance, 10)},
      {"homogeneity", wrap(props::homogeneity, 10)},
      {"block_additivity", wrap(props::block_additivity, 10)},
      {"cq_direct_sum", wrap(props::cq_direct_sum, 10)},
      {"large_alpha_envelope", wrap(props::large_alpha_envelope, 10)},
      {"mean_identities",
       [](std::uint64_t seed, WitnessTally&, int) { return from_check(props::mean_identities(20, seed)); }},
      {"pinching",
       [](std::uint64_t seed, WitnessTally&, int) { return from_check(props::pinching_inequality(20, seed)); }},
      {"family_sharp", [](std::uint64_t, WitnessTally&, int) { return golden_family(); }},
      {"family_closed_forms", [](std::uint64_t, WitnessTally&, int) { return golden_closed_forms(); }},
      {"family_dyadic", [](std::uint64_t, WitnessTally&, int) { return golden_family_dyadic(); }},
      {"ad_capacity", [](std::uint64_t, WitnessTally&, int jobs) { return golden_capacity(jobs); }},
  };
}

struct SelftestArgs {
  std::vector<std::string> only;
  std::uint64_t seed = 20240101;
};

int run_selftest(const SelftestArgs& a, const Common& c) {
  const auto all = suites();
  for (const auto& name : a.only) {
    const bool known = std::any_of(all.begin(), all.end(), [&](const SuiteSpec& s) { return name == s.name; });
    if (!known) throw Error(ErrorKind::Parse, "unknown suite '" + name + "'");
  }
  nlohmann::ordered_json report;
  report["seed"] = a.seed;
  report["suites"] = nlohmann::ordered_json::array();
  props::WitnessTally tally;
  bool all_pass = true;
  std::uint64_t k = 0;
  for (const auto& spec : all) {
    ++k;
    if (!a.only.empty() && std::find(a.only.begin(), a.only.end(), spec.name) == a.only.end()) continue;
    spdlog::info("running suite {}", spec.name);
    SuiteResult r;
    try {
      // Each suite gets its own stream so filtering does not change results.
      r = spec.run(a.seed * 1000 + k, tally, c.workers());
    } catch (const Error& e) {
      r = {spec.name, 0, infinite(), 0.0, false};
      spdlog::error("suite {}: {}", spec.name, e.what());
    }
    r.name = spec.name;
    all_pass = all_pass && r.pass;
    nlohmann::ordered_json js;
    js["name"] = r.name;
    js["instances"] = r.instances;
    js["worst"] = std::isfinite(r.worst) ? nlohmann::ordered_json(std::stod(cli::format_number(r.worst)))
                                         : nlohmann::ordered_json("inf");
    js["tol"] = r.tol;
    js["pass"] = r.pass;
    report["suites"].push_back(js);
  }
  report["witness"] = {{"solves", tally.solves}, {"failed", tally.failed}};
  all_pass = all_pass && tally.failed == 0;
  report["pass"] = all_pass;

  std::ofstream file;
  if (!c.out.empty()) file.open(c.out);
  std::ostream& os = c.out.empty() ? std::cout : file;
  os << report.dump(2) << '\n';
  return all_pass ? kOk : kPartial;
}

void configure_logging() {
  auto logger = spdlog::stderr_color_mt("renyi-sharp");
  spdlog::set_default_logger(logger);
  spdlog::set_level(spdlog::level::warn);
  if (const char* env = std::getenv("RENYI_SHARP_LOG")) {
    const auto level = spdlog::level::from_str(env);
    // from_str maps unknown names to "off"; only accept the documented ones.
    if (level == spdlog::level::off && std::string(env) != "off")
      spdlog::warn("ignoring RENYI_SHARP_LOG={}; expected error, warn, info or debug", env);
    else
      spdlog::set_level(level);
  }
}

}  // namespace

int main(int argc, char** argv) {
  configure_logging();
  CLI::App app{"Compute D#-type Renyi divergences, hierarchy bounds and channel capacity bounds"};
  app.require_subcommand(1);

  Common common;
  StateArgs state;
  ChannelArgs chan;
  SelftestArgs self;

  auto* sd = app.add_subcommand("state-div", "D#, sandwiched, geometric and max divergences of two states");
  sd->add_option("--rho", state.rho, "State JSON file");
  sd->add_option("--sigma", state.sigma, "State JSON file");
  sd->add_option("--epsilon", state.epsilon, "Built-in entangled family over this epsilon grid");
  add_common(sd, common);

  auto* cd = app.add_subcommand("channel-div", "D# of two channels");
  cd->add_option("--channel", chan.channel, "ad:<g>, depol:<p>, identity:<d> or a JSON file")->required();
  cd->add_option("--reference", chan.reference, "Second channel, same syntax")->required();
  add_common(cd, common);

  auto* hi = app.add_subcommand("hierarchy", "Tensor-power upper and lower bounds");
  hi->add_option("--channel", chan.channel, "First channel")->required();
  hi->add_option("--reference", chan.reference, "Second channel")->required();
  hi->add_option("--m", chan.orders, "Tensor-power orders")->delimiter(',')->capture_default_str();
  add_common(hi, common);

  auto* ca = app.add_subcommand("capacity", "Capacity upper bound minimized over an alpha grid");
  ca->add_option("--channel", chan.channel, "Family 'ad' or 'depol' with --gammas, else a fixed channel")
      ->required();
  ca->add_option("--gammas", chan.gammas, "Family parameter grid");
  add_common(ca, common);

  auto* di = app.add_subcommand("discrim", "Strong-converse exponent lower bound for channel discrimination");
  di->add_option("--channel", chan.channel, "First channel")->required();
  di->add_option("--reference", chan.reference, "Second channel")->required();
  di->add_option("--r", chan.rates, "Rate grid")->required();
  di->add_option("--m", chan.orders, "Tensor-power order")->capture_default_str();
  add_common(di, common);

  auto* rb = app.add_subcommand("rate-bound", "Two-way assisted rate bound at error epsilon after n uses");
  rb->add_option("--channel", chan.channel, "Channel")->required();
  rb->add_option("--epsilon", chan.epsilon, "Error grid in [0, 1)")->capture_default_str();
  rb->add_option("--n", chan.uses, "Channel uses")->check(CLI::PositiveNumber)->capture_default_str();
  add_common(rb, common);

  auto* st = app.add_subcommand("selftest", "Property suites and reference-value checks; JSON report");
  st->add_option("--suite", self.only, "Run only these suites")->delimiter(',');
  st->add_option("--seed", self.seed, "Base seed")->capture_default_str();
  add_common(st, common, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInput;
  }

  try {
    if (*sd) return run_state_div(state, common);
    if (*cd) return run_channel_div(chan, common);
    if (*hi) return run_hierarchy(chan, common);
    if (*ca) return run_capacity(chan, common);
    if (*di) return run_discrim(chan, common);
    if (*rb) return run_rate_bound(chan, common);
    if (*st) return run_selftest(self, common);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.kind() == ErrorKind::SizeBudget ? kBudget : kInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInput;
  }
  return kInput;
}
