#pragma once

#include <cstdio>
#include <string>

#include <json.hpp>

#include "boxdim.hpp"
#include "fracint.hpp"
#include "variation.hpp"
#include "verify.hpp"
#include "version.hpp"

namespace fracbv {

using ordered_json = nlohmann::ordered_json;

// 17 significant digits round-trip any double exactly.
inline std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return std::string(buf);
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

inline void to_json(ordered_json& j, const ProfileParams& p) {
  j = ordered_json{{"base_delta", p.base_delta},
                   {"levels", p.levels},
                   {"n_per_level", p.n_per_level}};
}

inline void to_json(ordered_json& j, const ProfileThresholds& t) {
  j = ordered_json{{"rho", t.rho},
                   {"m", t.m},
                   {"floor_mult", t.floor_mult},
                   {"bounded_ceiling", t.bounded_ceiling}};
}

inline void to_json(ordered_json& j, const VariationLevel& l) {
  j = ordered_json{{"window_lo", l.window_lo}, {"window_hi", l.window_hi},
                   {"delta", l.delta},         {"nsub", l.nsub},
                   {"tv", l.tv},               {"tv_coarse", l.tv_coarse}};
}

inline void to_json(ordered_json& j, const VariationReport& r) {
  j = ordered_json{{"center", r.center},
                   {"classification", to_string(r.classification)},
                   {"levels", r.levels},
                   {"growth_ratios", r.growth_ratios},
                   {"sup_norm", r.sup_norm},
                   {"tv_floor", r.tv_floor},
                   {"params", r.params},
                   {"thresholds", r.thresholds}};
}

inline void to_json(ordered_json& j, const WindowGrowthReport& r) {
  j = ordered_json{{"lo", r.lo},
                   {"hi", r.hi},
                   {"nsubs", r.nsubs},
                   {"tvs", r.tvs},
                   {"ratios", r.ratios},
                   {"classification", to_string(r.classification)},
                   {"sup_norm", r.sup_norm}};
}

inline void to_json(ordered_json& j, const UvpScanResult& r) {
  j = ordered_json{{"candidates", r.candidates},
                   {"unbounded", r.unbounded},
                   {"inconclusive", r.inconclusive},
                   {"reports", r.reports}};
}

inline void to_json(ordered_json& j, const OperatorBoundReport& r) {
  j = ordered_json{{"alpha", r.alpha},
                   {"a", r.a},
                   {"b", r.b},
                   {"f_bv", r.f_bv},
                   {"image_bv", r.image_bv},
                   {"bound_constant", r.bound_constant},
                   {"bound", r.bound},
                   {"ratio", r.ratio},
                   {"slack", r.slack},
                   {"within", r.within},
                   {"catalog_backed", r.catalog_backed}};
}

inline void to_json(ordered_json& j, const MonotoneReport& r) {
  j = ordered_json{{"pass", r.pass},
                   {"tolerance", r.tolerance},
                   {"worst_drop", r.worst_drop},
                   {"first_violation", r.first_violation}};
}

inline void to_json(ordered_json& j, const BoxLevel& l) {
  j = ordered_json{{"j", l.j}, {"delta", l.delta}, {"count", l.count}};
}

inline void to_json(ordered_json& j, const BoxDimEstimate& e) {
  j = ordered_json{{"levels", e.levels},
                   {"dropped_coarsest", e.dropped},
                   {"slope", e.slope},
                   {"intercept", e.intercept},
                   {"r_squared", e.r_squared}};
}

inline void to_json(ordered_json& j, const SuiteConfig& c) {
  j = ordered_json{{"seed", c.seed},
                   {"n_small", c.n_small},
                   {"n_mid", c.n_mid},
                   {"n_big", c.n_big},
                   {"n_dim", c.n_dim},
                   {"n_cal", c.n_cal},
                   {"alphas", c.alphas},
                   {"bound_trials", c.bound_trials},
                   {"monotone_trials", c.monotone_trials},
                   {"run_dim_calibration", c.run_dim_calibration},
                   {"uvp_candidates", c.uvp_candidates},
                   {"profile", c.profile},
                   {"thresholds", c.thresholds}};
}

inline void to_json(ordered_json& j, const TheoremRun& r) {
  ordered_json ev = ordered_json::object();
  for (const auto& [k, v] : r.evidence) ev[k] = v;
  j = ordered_json{{"theorem_id", r.theorem_id},
                   {"verdict", to_string(r.verdict)},
                   {"seed", r.seed},
                   {"evidence", ev},
                   {"notes", r.notes}};
}

inline void to_json(ordered_json& j, const VerificationReport& r) {
  j = ordered_json{{"config_digest", r.config_digest},
                   {"all_pass", r.all_pass},
                   {"runs", r.runs}};
}

// Common envelope for every JSON document the tool writes. No timestamps or
// host details: rerunning a command must reproduce the bytes.
inline ordered_json json_envelope(ordered_json config, ordered_json results) {
  return ordered_json{{"meta",
                       ordered_json{{"tool", kToolName},
                                    {"version", kVersion},
                                    {"schema_version", kSchemaVersion},
                                    {"gamma_impl", kGammaImpl}}},
                      {"config", std::move(config)},
                      {"results", std::move(results)}};
}

}  // namespace fracbv
