#pragma once

// Command reports and their two renderings: JSON ("machine") and text ("human").

#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "fanobott/enumeration.hpp"
#include "fanobott/error.hpp"
#include "fanobott/fan.hpp"
#include "fanobott/tower.hpp"

namespace fanobott {

struct BEntry {
  int p = 0;
  int q = 0;
  IntVec b;
  Int mu = 0;
  int argmin = 0;
  Int nu = 0;
  bool operator==(const BEntry&) const = default;
};

struct CollectionEntry {
  RaySet members;
  std::map<std::size_t, Int> rhs;
  Int degree = 0;
  bool operator==(const CollectionEntry&) const = default;
};

struct FanDump {
  int dim = 0;
  std::vector<IntVec> rays;
  std::vector<RayLabel> labels;
  std::vector<RaySet> max_cones;
  bool operator==(const FanDump&) const = default;
};

struct SweepDump {
  SweepMode mode = SweepMode::Fano;
  std::vector<int> stages;
  Interval range;
  std::uint64_t total = 0;
  VerdictCounts counts;
  std::vector<IntVec> hits;
  std::vector<IntVec> violations;
  /// Optional user-supplied labels, parallel to `hits` (empty string when unlabeled).
  std::vector<std::string> hit_labels;
  std::optional<bool> expectation_met;
  bool operator==(const SweepDump&) const = default;
};

struct Report {
  std::string command;
  std::optional<Verdict> verdict;
  std::vector<int> stages;
  std::vector<Int> nu_sums;
  std::vector<std::pair<Int, Int>> thresholds;
  std::vector<BEntry> b_vectors;
  std::vector<Int> degrees;
  std::optional<bool> verified;
  std::optional<FanDump> fan;
  /// Set when the fan listing was restricted to primitive collections.
  std::vector<RayLabel> ray_labels;
  std::vector<CollectionEntry> collections;
  std::optional<SweepDump> sweep;

  bool operator==(const Report&) const = default;
};

// ---------------------------------------------------------------------------
// JSON

namespace detail {

inline nlohmann::json labels_to_json(const std::vector<RayLabel>& labels) {
  auto out = nlohmann::json::array();
  for (const auto& l : labels) out.push_back({l.stage, l.index});
  return out;
}

inline std::vector<RayLabel> labels_from_json(const nlohmann::json& j) {
  std::vector<RayLabel> out;
  for (const auto& l : j) out.push_back({l.at(0).get<int>(), l.at(1).get<int>()});
  return out;
}

}  // namespace detail

inline nlohmann::json to_json(const Report& r) {
  using nlohmann::json;
  json j;
  j["command"] = r.command;
  if (r.verdict) j["verdict"] = std::string(to_string(*r.verdict));
  if (!r.stages.empty()) j["stages"] = r.stages;
  if (!r.nu_sums.empty()) j["nu_sums"] = r.nu_sums;
  if (!r.thresholds.empty()) {
    j["thresholds"] = json::array();
    for (const auto& [lo, hi] : r.thresholds) j["thresholds"].push_back({lo, hi});
  }
  if (!r.b_vectors.empty()) {
    j["b_vectors"] = json::array();
    for (const auto& b : r.b_vectors)
      j["b_vectors"].push_back({{"p", b.p}, {"q", b.q}, {"b", b.b}, {"mu", b.mu}, {"argmin", b.argmin}, {"nu", b.nu}});
  }
  if (!r.degrees.empty()) j["degrees"] = r.degrees;
  if (r.verified) j["verified"] = *r.verified;
  if (r.fan) {
    j["fan"] = {{"dim", r.fan->dim},
                {"rays", r.fan->rays},
                {"labels", detail::labels_to_json(r.fan->labels)},
                {"max_cones", r.fan->max_cones}};
  }
  if (!r.ray_labels.empty()) j["ray_labels"] = detail::labels_to_json(r.ray_labels);
  if (!r.collections.empty()) {
    j["collections"] = json::array();
    for (const auto& c : r.collections) {
      json rel = json::array();
      for (const auto& [ray, coeff] : c.rhs) rel.push_back({ray, coeff});
      j["collections"].push_back({{"members", c.members}, {"relation", rel}, {"degree", c.degree}});
    }
  }
  if (r.sweep) {
    const SweepDump& s = *r.sweep;
    json sj = {{"mode", std::string(to_string(s.mode))},
               {"stages", s.stages},
               {"range", {s.range.lo, s.range.hi}},
               {"total", s.total},
               {"counts",
                {{"fano", s.counts.fano},
                 {"weak_fano_not_fano", s.counts.weak_fano_not_fano},
                 {"not_weak_fano", s.counts.not_weak_fano}}},
               {"hits", s.hits}};
    if (s.mode == SweepMode::CharyCompare) sj["violations"] = s.violations;
    if (!s.hit_labels.empty()) sj["hit_labels"] = s.hit_labels;
    if (s.expectation_met) sj["expectation_met"] = *s.expectation_met;
    j["sweep"] = std::move(sj);
  }
  return j;
}

/// Inverse of to_json(). Throws ParseError on malformed input.
inline Report report_from_json(const nlohmann::json& j) {
  try {
    Report r;
    r.command = j.at("command").get<std::string>();
    if (j.contains("verdict")) r.verdict = verdict_from_string(j.at("verdict").get<std::string>());
    if (j.contains("stages")) r.stages = j.at("stages").get<std::vector<int>>();
    if (j.contains("nu_sums")) r.nu_sums = j.at("nu_sums").get<std::vector<Int>>();
    if (j.contains("thresholds"))
      for (const auto& t : j.at("thresholds")) r.thresholds.emplace_back(t.at(0).get<Int>(), t.at(1).get<Int>());
    if (j.contains("b_vectors"))
      for (const auto& b : j.at("b_vectors"))
        r.b_vectors.push_back({b.at("p").get<int>(), b.at("q").get<int>(), b.at("b").get<IntVec>(),
                               b.at("mu").get<Int>(), b.at("argmin").get<int>(), b.at("nu").get<Int>()});
    if (j.contains("degrees")) r.degrees = j.at("degrees").get<std::vector<Int>>();
    if (j.contains("verified")) r.verified = j.at("verified").get<bool>();
    if (j.contains("fan")) {
      const auto& f = j.at("fan");
      r.fan = FanDump{f.at("dim").get<int>(), f.at("rays").get<std::vector<IntVec>>(),
                      detail::labels_from_json(f.at("labels")), f.at("max_cones").get<std::vector<RaySet>>()};
    }
    if (j.contains("ray_labels")) r.ray_labels = detail::labels_from_json(j.at("ray_labels"));
    if (j.contains("collections"))
      for (const auto& c : j.at("collections")) {
        CollectionEntry e;
        e.members = c.at("members").get<RaySet>();
        for (const auto& kv : c.at("relation")) e.rhs[kv.at(0).get<std::size_t>()] = kv.at(1).get<Int>();
        e.degree = c.at("degree").get<Int>();
        r.collections.push_back(std::move(e));
      }
    if (j.contains("sweep")) {
      const auto& s = j.at("sweep");
      SweepDump d;
      d.mode = sweep_mode_from_string(s.at("mode").get<std::string>());
      d.stages = s.at("stages").get<std::vector<int>>();
      d.range = {s.at("range").at(0).get<Int>(), s.at("range").at(1).get<Int>()};
      d.total = s.at("total").get<std::uint64_t>();
      const auto& c = s.at("counts");
      d.counts = {c.at("fano").get<std::uint64_t>(), c.at("weak_fano_not_fano").get<std::uint64_t>(),
                  c.at("not_weak_fano").get<std::uint64_t>()};
      d.hits = s.at("hits").get<std::vector<IntVec>>();
      if (s.contains("violations")) d.violations = s.at("violations").get<std::vector<IntVec>>();
      if (s.contains("hit_labels")) d.hit_labels = s.at("hit_labels").get<std::vector<std::string>>();
      if (s.contains("expectation_met")) d.expectation_met = s.at("expectation_met").get<bool>();
      r.sweep = std::move(d);
    }
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("report: ") + e.what());
  } catch (const ValidationError& e) {
    throw ParseError(std::string("report: ") + e.what());
  }
}

// ---------------------------------------------------------------------------
// Text

namespace detail {

inline std::string tuple(const IntVec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + std::to_string(v[i]);
  return s + ")";
}

inline std::string label_of(const std::vector<RayLabel>& labels, std::size_t i) {
  return i < labels.size() ? ray_name(labels[i]) : "#" + std::to_string(i);
}

inline void render_collections(std::ostream& os, const Report& r, const std::vector<RayLabel>& labels) {
  os << "primitive collections:\n";
  for (const auto& c : r.collections) {
    os << "  ";
    for (std::size_t i = 0; i < c.members.size(); ++i) os << (i ? " + " : "") << label_of(labels, c.members[i]);
    os << " = ";
    if (c.rhs.empty()) os << "0";
    bool first = true;
    for (const auto& [ray, coeff] : c.rhs) {
      os << (first ? "" : " + ") << (coeff == 1 ? "" : std::to_string(coeff) + " ") << label_of(labels, ray);
      first = false;
    }
    os << "    degree " << c.degree << "\n";
  }
}

}  // namespace detail

inline std::string render_human(const Report& r) {
  std::ostringstream os;
  if (!r.stages.empty()) {
    os << "stages: m = " << r.stages.size() << ", (n_1, ..., n_m) = (";
    for (std::size_t i = 0; i < r.stages.size(); ++i) os << (i ? ", " : "") << r.stages[i];
    os << ")\n";
  }

  if (r.command == "check") {
    if (!r.b_vectors.empty()) os << "\n";
    for (const auto& b : r.b_vectors)
      os << "  b_{" << b.p << "," << b.q << "} = " << detail::tuple(b.b) << "    mu = " << b.mu << "    nu = " << b.nu
         << "\n";
    if (!r.nu_sums.empty()) {
      os << "\n  p    sum_q nu(b_{p,q})    n_p    n_p + 1\n";
      for (std::size_t i = 0; i < r.nu_sums.size(); ++i)
        os << "  " << i + 1 << "    " << r.nu_sums[i] << "                    " << r.thresholds[i].first << "      "
           << r.thresholds[i].second << "\n";
    }
    os << "\ndegrees of P_1, ..., P_m:";
    for (Int d : r.degrees) os << " " << d;
    os << "\n";
  }

  if (r.fan) {
    os << "\nrays (dimension " << r.fan->dim << "):\n";
    for (std::size_t i = 0; i < r.fan->rays.size(); ++i)
      os << "  " << detail::label_of(r.fan->labels, i) << " = " << detail::tuple(r.fan->rays[i]) << "\n";
    os << "maximal cones (" << r.fan->max_cones.size() << "):\n";
    for (const auto& cone : r.fan->max_cones) {
      os << "  {";
      for (std::size_t i = 0; i < cone.size(); ++i) os << (i ? ", " : "") << detail::label_of(r.fan->labels, cone[i]);
      os << "}\n";
    }
  }
  if (!r.collections.empty()) {
    os << "\n";
    detail::render_collections(os, r, r.fan ? r.fan->labels : r.ray_labels);
  }

  if (r.sweep) {
    const SweepDump& s = *r.sweep;
    const bool chary = s.mode == SweepMode::CharyCompare;
    os << "mode: " << to_string(s.mode) << "    range: " << s.range.lo << ":" << s.range.hi << "\n";
    os << "candidates: " << s.total << "\n";
    os << "  fano: " << s.counts.fano << "\n  weak_fano_not_fano: " << s.counts.weak_fano_not_fano
       << "\n  not_weak_fano: " << s.counts.not_weak_fano << "\n";
    if (s.mode != SweepMode::Census) {
      os << (chary ? "Fano but failing Chary's condition (beta_{12}, beta_{13}, ...): "
                   : "hits (a_{j,l}^{(k)}, (j,l,k) ascending): ")
         << s.hits.size() << "\n";
      for (std::size_t i = 0; i < s.hits.size(); ++i) {
        os << "  " << detail::tuple(s.hits[i]);
        if (i < s.hit_labels.size() && !s.hit_labels[i].empty()) os << "  " << s.hit_labels[i];
        os << "\n";
      }
    }
    if (chary) {
      os << "satisfying Chary's condition but not Fano: " << s.violations.size() << "\n";
      for (const auto& v : s.violations) os << "  " << detail::tuple(v) << "\n";
      os << "sufficiency " << (s.violations.empty() ? "holds" : "FAILS") << "\n";
    }
    if (s.expectation_met) os << "expectation " << (*s.expectation_met ? "met" : "NOT met") << "\n";
  }

  if (r.verdict) os << "verdict: " << to_string(*r.verdict) << "\n";
  if (r.verified) os << "fan verification: " << (*r.verified ? "agrees" : "DISAGREES") << "\n";
  return os.str();
}

}  // namespace fanobott
