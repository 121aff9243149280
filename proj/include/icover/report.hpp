#pragma once

// JSON views of results. Needs nlohmann/json ("json.hpp" on the include path).

#include <string>

#include "json.hpp"

#include "icover/constructive.hpp"
#include "icover/cover.hpp"
#include "icover/harness.hpp"
#include "icover/scd.hpp"

namespace icover {

using nlohmann::json;

inline json cover_json(const IntervalCover& c) {
  json intervals = json::array();
  for (const auto& iv : c.intervals) intervals.push_back({{"a", iv.a}, {"b", iv.b}});
  return {{"rho", c.size()}, {"optimal", c.optimal}, {"intervals", intervals}, {"span_size", c.span.elements.count()}};
}

inline json surjection_json(const Surjection& f) {
  json out = json::array();
  for (auto [b, a] : f) out.push_back({{"b", b}, {"a", a}});
  return out;
}

inline json surjection_trace_json(const SurjectionTrace& t) {
  json stars = json::array();
  for (const auto& s : t.stars) stars.push_back({{"center", s.center}, {"leaves", s.leaves}, {"a", s.a}, {"b", s.b}});
  json deleted = json::array();
  for (auto [a, b, c, d] : t.deleted) deleted.push_back({a, b, c, d});
  json completion = json::array();
  for (auto [b, a] : t.completion) completion.push_back({{"b", b}, {"a", a}});
  return {{"peeled", t.peeled}, {"deletions", deleted}, {"stars", stars}, {"completion", completion}, {"trivial", t.trivial}};
}

inline json construction_json(const Construction& c) {
  json out = cover_json(c.cover);
  json trace = {{"dualized", c.trace.dualized}, {"degenerate", c.trace.degenerate}};
  if (c.trace.surjection) trace["surjection"] = surjection_trace_json(*c.trace.surjection);
  if (c.trace.split_size) trace["split_size"] = *c.trace.split_size;
  if (c.trace.family) trace["family"] = *c.trace.family;
  if (c.trace.relabelings > 0) trace["relabelings"] = c.trace.relabelings;
  out["trace"] = trace;
  return out;
}

inline json icp_json(const IcpReport& r) {
  json pairs = json::array();
  for (const auto& p : r.pairs)
    pairs.push_back({{"j", p.j}, {"k", p.k}, {"rho", p.rho}, {"bound", p.bound}, {"optimal", p.optimal}});
  return {{"holds", r.holds}, {"rho", r.rho}, {"bound", r.bound}, {"optimal", r.optimal}, {"pairs", pairs}};
}

inline json scd_json(const gk::SCD& scd, const gk::ScdReport* check) {
  json chains = json::array();
  for (const auto& c : scd.chains) {
    json words = json::array();
    for (auto e : c.elements) words.push_back(gk::to_word({c.n, e}));
    chains.push_back(words);
  }
  json out = {{"n", scd.n}, {"chain_count", scd.chains.size()}, {"chains", chains}};
  if (check)
    out["verified"] = {{"partition", check->partition},
                       {"symmetric", check->symmetric},
                       {"shared_pairing", check->shared_pairing},
                       {"star_property", check->star_property}};
  return out;
}

/// Runtime is left out so reports compare byte for byte across runs.
inline json campaign_json(const harness::CampaignReport& r) {
  json violations = json::array();
  for (const auto& v : r.violations) {
    json item = {{"id", v.id}, {"expected", v.expected}, {"observed", v.observed}, {"instance", v.instance}};
    if (v.levels) item["levels"] = {v.levels->first, v.levels->second};
    violations.push_back(item);
  }
  json out = {{"campaign", r.campaign},
              {"mode", r.mode},
              {"seed", r.seed},
              {"instances_checked", r.instances_checked},
              {"unresolved", r.unresolved},
              {"violations", violations}};
  if (r.extremal) out["extremal"] = {{"num", r.extremal->num}, {"den", r.extremal->den}, {"id", r.extremal_id}};
  return out;
}

}  // namespace icover
