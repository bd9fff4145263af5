#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "hmatch/analysis.hpp"
#include "hmatch/discounts.hpp"
#include "hmatch/error.hpp"
#include "hmatch/generators.hpp"
#include "hmatch/io.hpp"
#include "hmatch/lp.hpp"
#include "hmatch/rounding.hpp"
#include "hmatch/sampling.hpp"

namespace hmatch::cli {
namespace {

using io::json;

struct Options {
  bool verbose = false;

  std::string instance;
  std::string schedule;
  std::string out;
  std::string trace;
  std::string outcome;

  std::size_t samples = 100000;
  std::uint64_t seed = 0;
  std::size_t jobs = 1;

  std::size_t kmax = 10;
  std::vector<std::size_t> ks;

  std::size_t k = 2;
  std::size_t l = 3;
  std::string p;
  std::string q;
  bool maximize_q = false;
  std::string mode = "integer";
  std::string step;
  std::string tol = "1/1000000";

  std::size_t cap = 10;

  std::string kind;
  gen::GenSpec gen;
};

/// Writes to --out when given, else to stdout.
void emit_text(const Options& opt, std::ostream& out, const std::string& text) {
  if (opt.out.empty()) {
    out << text;
    return;
  }
  std::ofstream file(opt.out, std::ios::binary | std::ios::trunc);
  if (!file) throw Error(Errc::MalformedInput, "cannot write " + opt.out);
  file << text;
}

void emit_json(const Options& opt, std::ostream& out, const json& j) {
  if (opt.out.empty()) {
    out << j.dump(2) << "\n";
    return;
  }
  io::write_json_file(opt.out, j);
}

std::size_t max_edge_size(const Hypergraph& h) { return h.rank(); }

int cmd_solve(const Options& opt, std::ostream& out) {
  const WeightedInstance inst = io::load_instance(opt.instance);
  const Schedule schedule = io::parse_schedule(opt.schedule, max_edge_size(inst.graph));
  const DiscountProfile profile = make_profile(inst.graph, schedule);
  const RoundingOutcome outcome = find_matching(inst, profile);
  const json result = io::outcome_to_json(outcome, profile);
  const json trace = io::trace_to_json(std::visit([](const auto& o) { return o.trace; }, outcome));
  if (!opt.trace.empty()) io::write_json_file(opt.trace, trace);
  emit_json(opt, out, result);
  return succeeded(outcome) ? kOk : kCertificate;
}

int cmd_sample(const Options& opt, std::ostream& out) {
  const WeightedInstance inst = io::load_instance(opt.instance);
  const BasicSolution lp = max_weight_basic_fractional_matching(inst);
  const auto rows = check_inclusion_bounds(inst.graph, lp.x, opt.samples, opt.seed, opt.jobs);
  std::ostringstream tsv;
  tsv << "edge\tsize\tx\texact\tbound\tholds\texact_approx\tempirical\tz\n";
  for (const auto& r : rows) {
    tsv << r.edge << '\t' << inst.graph.edge_size(r.edge) << '\t' << to_string(r.x) << '\t'
        << to_string(r.exact) << '\t' << to_string(r.bound) << '\t' << (r.holds ? "yes" : "no")
        << '\t' << to_fixed(r.exact, 6) << '\t' << std::fixed << std::setprecision(6) << r.empirical
        << '\t' << std::setprecision(3) << r.z << '\n';
    tsv.unsetf(std::ios::floatfield);
  }
  emit_text(opt, out, tsv.str());
  return kOk;
}

std::string hinf_decimal(std::size_t k, int digits) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(digits) << h_inf_float(k);
  return s.str();
}

int cmd_discounts(const Options& opt, std::ostream& out) {
  std::vector<std::size_t> ks = opt.ks;
  if (ks.empty()) {
    for (std::size_t k = 2; k <= opt.kmax; ++k) ks.push_back(k);
  }
  std::ostringstream tsv;
  auto exact_cell = [&](const Rational& v) { tsv << '\t' << to_string(v) << '\t' << to_fixed(v, 4); };
  if (opt.schedule == "all") {
    tsv << "k\tbaseline\tbaseline_4dp\thstar\thstar_4dp\thinf\thinf_4dp\thtilde\thtilde_4dp\n";
    for (std::size_t k : ks) {
      tsv << k;
      exact_cell(Rational(1, static_cast<unsigned long>(k)));
      exact_cell(h_star(k));
      tsv << '\t' << hinf_decimal(k, 30) << '\t' << hinf_decimal(k, 4);
      exact_cell(h_tilde_inf(k));
      tsv << '\n';
    }
  } else if (opt.schedule == "hinf") {
    tsv << "k\thinf\thinf_4dp\n";
    for (std::size_t k : ks) tsv << k << '\t' << hinf_decimal(k, 30) << '\t' << hinf_decimal(k, 4) << '\n';
  } else {
    const Schedule schedule = io::parse_schedule(opt.schedule);
    tsv << "k\t" << schedule.name() << '\t' << schedule.name() << "_4dp\n";
    for (std::size_t k : ks) {
      tsv << k;
      exact_cell(schedule(k));
      tsv << '\n';
    }
  }
  emit_text(opt, out, tsv.str());
  return kOk;
}

CheckMode check_mode(const Options& opt) {
  if (opt.mode == "integer") {
    if (!opt.step.empty()) throw Error(Errc::InvalidParameter, "--step needs --mode grid");
    return CheckMode::integer();
  }
  if (opt.mode == "grid") {
    // Default grid: a thousandth of T.
    if (opt.step.empty()) return CheckMode::grid_relative(Rational(1, 1000));
    return CheckMode::grid(parse_rational(opt.step));
  }
  throw Error(Errc::InvalidParameter, "--mode must be integer or grid");
}

int cmd_analyze(const Options& opt, std::ostream& out) {
  const Rational p = parse_rational(opt.p);
  const CheckMode mode = check_mode(opt);
  if (opt.maximize_q == !opt.q.empty()) {
    throw Error(Errc::InvalidParameter, "give exactly one of --q and --maximize-q");
  }
  json result;
  if (opt.maximize_q) {
    const MaxQResult best = max_q(opt.k, opt.l, p, mode, parse_rational(opt.tol));
    const BiUniformParams params{opt.k, opt.l, p, best.q};
    result = {{"k", opt.k},
              {"l", opt.l},
              {"p", to_string(p)},
              {"q_max", to_string(best.q)},
              {"q_max_approx", to_fixed(best.q, 8)},
              {"tol", to_string(parse_rational(opt.tol))},
              {"evaluations", best.evaluations},
              {"monotone", best.monotone},
              {"linear_scan", best.linear_scan},
              {"report", io::report_to_json(params, biuniform_conditions(params, mode))}};
  } else {
    const BiUniformParams params{opt.k, opt.l, p, parse_rational(opt.q)};
    result = io::report_to_json(params, biuniform_conditions(params, mode));
  }
  emit_json(opt, out, result);
  return kOk;
}

int cmd_search_stuck(const Options& opt, std::ostream& out) {
  const WeightedInstance inst = io::load_instance(opt.instance);
  const Schedule schedule = io::parse_schedule(opt.schedule, max_edge_size(inst.graph));
  const DiscountProfile profile = make_profile(inst.graph, schedule);
  const auto cert = search_stuck(inst.graph, profile.g, opt.cap);
  const Rational wstar = fractional_optimum(inst.graph, inst.weights);
  json result;
  if (cert) {
    result = io::outcome_to_json(RoundingError{*cert, wstar, {}}, profile);
  } else {
    result = {{"status", "none"},
              {"schedule", profile.schedule_name},
              {"discounts", io::values_to_json(profile.g)},
              {"wstar", to_string(wstar)}};
  }
  result["source"] = "search-stuck";
  emit_json(opt, out, result);
  return cert ? kCertificate : kOk;
}

int cmd_gen(const Options& opt, std::ostream& out) {
  static const std::map<std::string, gen::Kind> kinds = {
      {"fano", gen::Kind::Fano},         {"plane", gen::Kind::ProjectivePlane},
      {"random", gen::Kind::Random},     {"biuniform", gen::Kind::BiUniform},
      {"triangle", gen::Kind::Triangle}, {"path", gen::Kind::Path},
      {"disjoint", gen::Kind::Disjoint}};
  auto it = kinds.find(opt.kind);
  if (it == kinds.end()) throw Error(Errc::InvalidParameter, "unknown --kind " + opt.kind);
  gen::GenSpec request = opt.gen;
  request.kind = it->second;
  request.seed = opt.seed;
  request.k = opt.k;
  request.l = opt.l;
  emit_json(opt, out, io::instance_to_json(gen::generate(request)));
  return kOk;
}

int cmd_verify(const Options& opt, std::ostream& out, std::ostream& err) {
  const WeightedInstance inst = io::load_instance(opt.instance);
  const io::OutcomeFile file = io::load_outcome(opt.outcome);
  if (file.profile.g.size() != inst.graph.edge_count()) {
    err << "invalid: " << file.profile.g.size() << " discounts for " << inst.graph.edge_count()
        << " edges\n";
    return kInputError;
  }
  const bool ok = verify_outcome(inst, file.profile, file.outcome);
  out << (ok ? "valid" : "invalid") << "\n";
  return ok ? kOk : kInputError;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options opt;
  CLI::App app{"Discounted iterated rounding for hypergraph matching"};
  app.require_subcommand(1);
  app.add_flag("-v,--verbose", opt.verbose, "Report timing on stderr");

  auto* solve = app.add_subcommand("solve", "Run the rounding algorithm on an instance");
  solve->add_option("--instance", opt.instance)->required();
  solve->add_option("--schedule", opt.schedule)->required();
  solve->add_option("--trace", opt.trace, "Write the peel trace here");
  solve->add_option("--out", opt.out);

  auto* sample = app.add_subcommand("sample", "Exponential-clock sampler against the LP solution");
  sample->add_option("--instance", opt.instance)->required();
  sample->add_option("--samples", opt.samples)->check(CLI::PositiveNumber);
  sample->add_option("--seed", opt.seed);
  sample->add_option("--jobs", opt.jobs)->check(CLI::Range(1, 256));
  sample->add_option("--out", opt.out);

  auto* discounts = app.add_subcommand("discounts", "Tabulate discount schedules");
  discounts->add_option("--schedule", opt.schedule)->required();
  discounts->add_option("--kmax", opt.kmax)->check(CLI::Range(2, 200));
  discounts->add_option("--k", opt.ks, "Explicit sizes (overrides --kmax)")
      ->delimiter(',')
      ->check(CLI::Range(2, 200));
  discounts->add_option("--out", opt.out);

  auto* analyze = app.add_subcommand("analyze", "Analytic checks");
  analyze->require_subcommand(1);
  auto* biuniform = analyze->add_subcommand("biuniform", "Bi-uniform conditions for (k, l, p, q)");
  biuniform->add_option("--k", opt.k)->required();
  biuniform->add_option("--l", opt.l)->required();
  biuniform->add_option("--p", opt.p)->required();
  biuniform->add_option("--q", opt.q);
  biuniform->add_flag("--maximize-q", opt.maximize_q);
  biuniform->add_option("--mode", opt.mode);
  biuniform->add_option("--step", opt.step);
  biuniform->add_option("--tol", opt.tol, "Bisection tolerance for --maximize-q");
  biuniform->add_option("--out", opt.out);

  auto* stuck = app.add_subcommand("search-stuck", "Exhaustive search for a stuck subgraph");
  stuck->add_option("--instance", opt.instance)->required();
  stuck->add_option("--schedule", opt.schedule)->required();
  stuck->add_option("--cap", opt.cap, "Maximum edge count");
  stuck->add_option("--out", opt.out);

  auto* generate = app.add_subcommand("gen", "Generate an instance");
  generate->add_option("--kind", opt.kind)->required();
  generate->add_option("--order", opt.gen.order);
  generate->add_option("--n", opt.gen.n);
  generate->add_option("--m", opt.gen.m);
  generate->add_option("--size-min", opt.gen.size_min);
  generate->add_option("--size-max", opt.gen.size_max);
  generate->add_option("--mk", opt.gen.m_k);
  generate->add_option("--ml", opt.gen.m_l);
  generate->add_option("--k", opt.k);
  generate->add_option("--l", opt.l);
  generate->add_option("--seed", opt.seed);
  generate->add_option("--out", opt.out);

  auto* verify = app.add_subcommand("verify", "Re-check an outcome file against its instance");
  verify->add_option("--instance", opt.instance)->required();
  verify->add_option("--outcome", opt.outcome)->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  const auto start = std::chrono::steady_clock::now();
  int code = kInputError;
  try {
    if (solve->parsed()) code = cmd_solve(opt, out);
    else if (sample->parsed()) code = cmd_sample(opt, out);
    else if (discounts->parsed()) code = cmd_discounts(opt, out);
    else if (biuniform->parsed()) code = cmd_analyze(opt, out);
    else if (stuck->parsed()) code = cmd_search_stuck(opt, out);
    else if (generate->parsed()) code = cmd_gen(opt, out);
    else if (verify->parsed()) code = cmd_verify(opt, out, err);
  } catch (const Error& e) {
    err << "error [" << errc_name(e.code()) << "]: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  if (opt.verbose) {
    const std::chrono::duration<double> secs = std::chrono::steady_clock::now() - start;
    err << "elapsed " << secs.count() << " s\n";
  }
  return code;
}

}  // namespace hmatch::cli
