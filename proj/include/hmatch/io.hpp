#pragma once

#include <cstddef>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "json.hpp"

#include "hmatch/analysis.hpp"
#include "hmatch/discounts.hpp"
#include "hmatch/error.hpp"
#include "hmatch/hypergraph.hpp"
#include "hmatch/rational.hpp"
#include "hmatch/rounding.hpp"

namespace hmatch::io {

using json = nlohmann::json;

namespace detail {

[[noreturn]] inline void malformed(const std::string& what) { throw Error(Errc::MalformedInput, what); }

inline const json& field(const json& obj, const char* key) {
  if (!obj.is_object()) malformed("expected a JSON object");
  auto it = obj.find(key);
  if (it == obj.end()) malformed(std::string("missing field \"") + key + "\"");
  return *it;
}

inline std::size_t index_value(const json& v, const char* what) {
  if (!v.is_number_integer() || v.get<long long>() < 0) {
    malformed(std::string(what) + " must be a nonnegative integer");
  }
  return v.get<std::size_t>();
}

inline std::vector<std::size_t> index_list(const json& v, const char* what) {
  if (!v.is_array()) malformed(std::string(what) + " must be an array");
  std::vector<std::size_t> out;
  for (const auto& item : v) out.push_back(index_value(item, what));
  return out;
}

}  // namespace detail

/// Strings "a/b" or "a"; plain JSON integers are accepted on input, floats never.
inline Rational rational_from_json(const json& v) {
  if (v.is_string()) return parse_rational(v.get<std::string>());
  if (v.is_number_integer()) {
    return v.is_number_unsigned() ? Rational(Integer(v.get<unsigned long long>()))
                                  : Rational(Integer(v.get<long long>()));
  }
  detail::malformed("rational must be a string \"a/b\" or an integer, got " + v.dump());
}

inline json rational_to_json(const Rational& r) { return to_string(r); }

inline json values_to_json(const EdgeValues& values) {
  json out = json::array();
  for (const auto& v : values) out.push_back(rational_to_json(v));
  return out;
}

inline EdgeValues values_from_json(const json& v) {
  if (!v.is_array()) detail::malformed("expected an array of rationals");
  EdgeValues out;
  for (const auto& item : v) out.push_back(rational_from_json(item));
  return out;
}

// --- instances ---------------------------------------------------------------

inline json instance_to_json(const WeightedInstance& inst) {
  json edges = json::array();
  for (const auto& e : inst.graph.edges()) edges.push_back(e);
  return {{"vertices", inst.graph.vertex_count()},
          {"edges", std::move(edges)},
          {"weights", values_to_json(inst.weights)}};
}

inline WeightedInstance instance_from_json(const json& j) {
  const std::size_t n = detail::index_value(detail::field(j, "vertices"), "vertices");
  const json& edges_json = detail::field(j, "edges");
  if (!edges_json.is_array()) detail::malformed("edges must be an array");
  std::vector<std::vector<std::size_t>> edges;
  for (const auto& e : edges_json) edges.push_back(detail::index_list(e, "edge vertex"));
  Hypergraph graph = Hypergraph::build(n, std::move(edges));
  if (!j.contains("weights")) return WeightedInstance::unit(std::move(graph));
  return WeightedInstance::make(std::move(graph), values_from_json(j.at("weights")));
}

// --- outcomes ----------------------------------------------------------------

inline json certificate_to_json(const StuckCertificate& cert) {
  return {{"edges", cert.edges}, {"x", values_to_json(cert.x)}, {"slack", values_to_json(cert.slack)}};
}

inline StuckCertificate certificate_from_json(const json& j) {
  StuckCertificate cert;
  cert.edges = detail::index_list(detail::field(j, "edges"), "certificate edge");
  cert.x = values_from_json(detail::field(j, "x"));
  cert.slack = values_from_json(detail::field(j, "slack"));
  return cert;
}

inline json trace_to_json(const std::vector<PeelStep>& trace) {
  json out = json::array();
  for (const auto& step : trace) {
    json s = {{"kind", step.kind == StepKind::Peel ? "peel" : "drop"},
              {"edge", step.edge},
              {"added", step.added}};
    if (step.lp_value) s["lp_value"] = rational_to_json(*step.lp_value);
    out.push_back(std::move(s));
  }
  return out;
}

inline std::vector<PeelStep> trace_from_json(const json& j) {
  if (!j.is_array()) detail::malformed("trace must be an array");
  std::vector<PeelStep> out;
  for (const auto& s : j) {
    const json& kind = detail::field(s, "kind");
    PeelStep step;
    if (kind == "peel") {
      step.kind = StepKind::Peel;
    } else if (kind == "drop") {
      step.kind = StepKind::DropNonpositive;
    } else {
      detail::malformed("unknown trace step kind " + kind.dump());
    }
    step.edge = detail::index_value(detail::field(s, "edge"), "trace edge");
    const json& added = detail::field(s, "added");
    if (!added.is_boolean()) detail::malformed("trace \"added\" must be a boolean");
    step.added = added.get<bool>();
    if (s.contains("lp_value")) step.lp_value = rational_from_json(s.at("lp_value"));
    out.push_back(std::move(step));
  }
  return out;
}

/// Outcome file: status, schedule name and the per-edge discounts used, w*, then
/// either the matching with its guarantee or the certificate. The trace is kept
/// only when `with_trace` is set.
inline json outcome_to_json(const RoundingOutcome& outcome, const DiscountProfile& profile,
                            bool with_trace = false) {
  json j;
  if (const auto* ok = std::get_if<RoundingSuccess>(&outcome)) {
    j = {{"status", "success"},
         {"schedule", profile.schedule_name},
         {"discounts", values_to_json(profile.g)},
         {"wstar", rational_to_json(ok->wstar)},
         {"matching", ok->matching},
         {"guarantee", rational_to_json(ok->guarantee)}};
    if (with_trace) j["trace"] = trace_to_json(ok->trace);
  } else {
    const auto& err = std::get<RoundingError>(outcome);
    j = {{"status", "error"},
         {"schedule", profile.schedule_name},
         {"discounts", values_to_json(profile.g)},
         {"wstar", rational_to_json(err.wstar)},
         {"certificate", certificate_to_json(err.certificate)}};
    if (with_trace) j["trace"] = trace_to_json(err.trace);
  }
  return j;
}

struct OutcomeFile {
  RoundingOutcome outcome;
  DiscountProfile profile;
};

inline OutcomeFile outcome_from_json(const json& j) {
  const json& status = detail::field(j, "status");
  const json& schedule = detail::field(j, "schedule");
  if (!schedule.is_string()) detail::malformed("schedule must be a string");
  DiscountProfile profile{values_from_json(detail::field(j, "discounts")), schedule.get<std::string>()};
  const Rational wstar = rational_from_json(detail::field(j, "wstar"));
  std::vector<PeelStep> trace;
  if (j.contains("trace")) trace = trace_from_json(j.at("trace"));
  if (status == "success") {
    RoundingSuccess ok{detail::index_list(detail::field(j, "matching"), "matching edge"),
                       rational_from_json(detail::field(j, "guarantee")), wstar, std::move(trace)};
    return {std::move(ok), std::move(profile)};
  }
  if (status == "error") {
    RoundingError err{certificate_from_json(detail::field(j, "certificate")), wstar, std::move(trace)};
    return {std::move(err), std::move(profile)};
  }
  detail::malformed("unknown status " + status.dump());
}

// --- analysis reports --------------------------------------------------------

inline json report_to_json(const BiUniformParams& params, const ConditionReport& r) {
  json points = json::array();
  for (const auto& pt : r.integer_points) {
    points.push_back({{"n", rational_to_json(pt.n)}, {"holds", pt.holds}});
  }
  json failures = json::array();
  for (const auto& n : r.grid_failures) failures.push_back(rational_to_json(n));
  return {{"k", params.k},
          {"l", params.l},
          {"p", rational_to_json(params.p)},
          {"q", rational_to_json(params.q)},
          {"T", rational_to_json(r.T)},
          {"p_within_hstar", r.p_within_hstar},
          {"integer_points", std::move(points)},
          {"grid_points_checked", r.grid_points_checked},
          {"grid_midpoints_checked", r.grid_midpoints_checked},
          {"grid_failures", std::move(failures)},
          {"endpoint_excluded", r.endpoint_excluded},
          {"verdict", r.verdict}};
}

// --- files -------------------------------------------------------------------

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) detail::malformed("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    detail::malformed(path + ": " + e.what());
  }
}

/// Serializes first, then writes, so a failure leaves no partial file behind.
inline void write_json_file(const std::string& path, const json& j) {
  const std::string text = j.dump(2) + "\n";
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::MalformedInput, "cannot write " + path);
  out << text;
  if (!out) throw Error(Errc::MalformedInput, "write failed for " + path);
}

inline WeightedInstance load_instance(const std::string& path) {
  try {
    return instance_from_json(read_json_file(path));
  } catch (const json::exception& e) {
    detail::malformed(path + ": " + e.what());
  }
}

inline OutcomeFile load_outcome(const std::string& path) {
  try {
    return outcome_from_json(read_json_file(path));
  } catch (const json::exception& e) {
    detail::malformed(path + ": " + e.what());
  }
}

// --- schedules ---------------------------------------------------------------

/// Table file: {"2": "2/3", "3": "3/7", ...}.
inline Schedule table_schedule_from_json(const json& j, std::string name) {
  if (!j.is_object()) detail::malformed("schedule table must be an object");
  std::map<std::size_t, Rational> values;
  for (const auto& [key, value] : j.items()) {
    std::size_t k = 0;
    std::size_t used = 0;
    try {
      k = std::stoul(key, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != key.size()) detail::malformed("table key \"" + key + "\" is not a size");
    values.emplace(k, rational_from_json(value));
  }
  return Schedule::table(std::move(values), std::move(name));
}

namespace detail {

inline std::size_t parse_count(std::string_view text, const std::string& whole) {
  std::size_t used = 0;
  std::size_t value = 0;
  try {
    value = std::stoul(std::string(text), &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size() || text.front() == '-' || text.front() == '+') {
    malformed("bad number in schedule \"" + whole + "\"");
  }
  return value;
}

}  // namespace detail

/// hstar | hr:<r> | hinf | hinf:<terms> | htilde | baseline | constant:<rat> |
/// table:<file>. Plain `hinf` needs the instance rank and realizes h_inf exactly
/// as h_r with r = rank + 8.
inline Schedule parse_schedule(const std::string& text, std::size_t rank = 0) {
  const auto colon = text.find(':');
  const std::string head = text.substr(0, colon);
  const std::string arg = colon == std::string::npos ? "" : text.substr(colon + 1);
  const bool has_arg = colon != std::string::npos;
  if (!has_arg) {
    if (head == "hstar") return Schedule::hstar();
    if (head == "htilde") return Schedule::htilde();
    if (head == "baseline") return Schedule::baseline();
    if (head == "hinf") return Schedule::hinf_for_rank(rank);
  } else {
    if (head == "hr") return Schedule::hr(detail::parse_count(arg, text));
    if (head == "hinf") return Schedule::hinf_truncated(detail::parse_count(arg, text));
    if (head == "constant") return Schedule::constant(parse_rational(arg));
    if (head == "table") return table_schedule_from_json(read_json_file(arg), text);
  }
  detail::malformed("unknown schedule \"" + text + "\"");
}

}  // namespace hmatch::io
