#pragma once

#include <atomic>
#include <future>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <json.hpp>

#include "nilmult/catalog.hpp"
#include "nilmult/json_io.hpp"
#include "nilmult/multiplier.hpp"

namespace nilmult {

/// Computed invariants of one algebra at one multiplier level.
struct MultiplierReport {
  std::string name;
  int n = 0;
  int m = 0;  // dim L^2
  int nilpotency_class = 0;
  int c = 2;
  long dim_multiplier = 0;
  std::optional<long> s2_value;       // non-abelian, c = 2 only
  std::optional<long> bound;          // general bound for c = 2
  std::optional<long> slack;          // bound - dim
  std::optional<std::string> verdict;
  std::optional<bool> capable2;
  std::optional<Vec> witness;  // nonzero epicenter image when not 2-capable
};

inline MultiplierReport build_report(const NilpotentAlgebra& l, int c,
                                     bool with_capability,
                                     std::size_t ceiling = HallBasis::kDefaultCeiling) {
  MultiplierReport r;
  r.name = l.name().value_or("");
  r.n = l.dim();
  r.m = l.derived_dim();
  r.nilpotency_class = l.nilpotency_class();
  r.c = c;
  if (l.dim() == 0) {
    r.capable2 = with_capability ? std::optional<bool>(true) : std::nullopt;
    return r;
  }
  FreePresentation presentation = FreePresentation::full_basis(l, c, ceiling);
  MultiplierComputation computation(presentation, c);
  r.dim_multiplier = computation.dimension();
  if (c == 2 && r.m >= 1) {
    r.s2_value = s2_from_dim(r.n, r.dim_multiplier);
    BoundReport bounds = bound_check_from_dim(r.n, r.m, r.dim_multiplier);
    r.bound = bounds.general_bound;
    r.slack = bounds.slack;
    r.verdict = classify_s2(*r.s2_value);
  }
  if (with_capability && c == 2) {
    CapabilityResult cap = two_capable(presentation, computation);
    r.capable2 = cap.capable;
    r.witness = std::move(cap.witness);
  }
  return r;
}

/// Report JSON row; keys are emitted in a fixed order for diffability, with
/// null standing for "not applicable".
inline Json report_to_json(const MultiplierReport& r) {
  Json j;
  j["name"] = r.name;
  j["n"] = r.n;
  j["m"] = r.m;
  j["class"] = r.nilpotency_class;
  j["c"] = r.c;
  j["dim_multiplier"] = r.dim_multiplier;
  j["s2"] = r.s2_value ? Json(*r.s2_value) : Json(nullptr);
  j["bound"] = r.bound ? Json(*r.bound) : Json(nullptr);
  j["slack"] = r.slack ? Json(*r.slack) : Json(nullptr);
  j["verdict"] = r.verdict ? Json(*r.verdict) : Json(nullptr);
  j["two_capable"] = r.capable2 ? Json(*r.capable2) : Json(nullptr);
  return j;
}

/// The corpus the one-shot report reproduces: the named algebras of the
/// classification plus their direct sums with small abelian algebras.
inline std::vector<std::string> corpus_names() {
  return {"A(1)",      "A(2)",      "A(3)",      "H(1)",       "H(1)+A(1)",
          "H(1)+A(2)", "H(1)+A(3)", "H(1)+A(4)", "H(2)",       "H(2)+A(1)",
          "H(3)",      "L4_3",      "L4_3+A(1)", "L5_5",       "L5_8",
          "L5_8+A(1)", "L5_8+A(2)"};
}

/// Every corpus row recomputed from scratch, in corpus order; rows fan out
/// across `jobs` workers.
inline std::vector<MultiplierReport> run_corpus(
    std::size_t ceiling = HallBasis::kDefaultCeiling, unsigned jobs = 0) {
  std::vector<std::string> names = corpus_names();
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  std::vector<MultiplierReport> rows(names.size());
  std::atomic<std::size_t> cursor{0};
  auto worker = [&]() {
    for (;;) {
      std::size_t i = cursor.fetch_add(1);
      if (i >= names.size()) return;
      NilpotentAlgebra l = algebra_from_expression(names[i]);
      rows[i] = build_report(l, 2, /*with_capability=*/true, ceiling);
    }
  };
  std::vector<std::future<void>> futures;
  for (unsigned t = 1; t < jobs; ++t)
    futures.push_back(std::async(std::launch::async, worker));
  worker();
  for (auto& f : futures) f.get();
  return rows;
}

/// The expected corpus values. The report command recomputes every cell and
/// refuses to print a table that disagrees with this.
inline Json expected_report_fixture() {
  static const char* text = R"json([
    {"name":"A(1)","n":1,"m":0,"class":1,"c":2,"dim_multiplier":0,"s2":null,"bound":null,"slack":null,"verdict":null,"two_capable":false},
    {"name":"A(2)","n":2,"m":0,"class":1,"c":2,"dim_multiplier":2,"s2":null,"bound":null,"slack":null,"verdict":null,"two_capable":true},
    {"name":"A(3)","n":3,"m":0,"class":1,"c":2,"dim_multiplier":8,"s2":null,"bound":null,"slack":null,"verdict":null,"two_capable":true},
    {"name":"H(1)","n":3,"m":1,"class":2,"c":2,"dim_multiplier":5,"s2":0,"bound":5,"slack":0,"verdict":"H(1)⊕A(n−3)","two_capable":true},
    {"name":"H(1)+A(1)","n":4,"m":1,"class":2,"c":2,"dim_multiplier":11,"s2":0,"bound":11,"slack":0,"verdict":"H(1)⊕A(n−3)","two_capable":true},
    {"name":"H(1)+A(2)","n":5,"m":1,"class":2,"c":2,"dim_multiplier":23,"s2":0,"bound":23,"slack":0,"verdict":"H(1)⊕A(n−3)","two_capable":true},
    {"name":"H(1)+A(3)","n":6,"m":1,"class":2,"c":2,"dim_multiplier":43,"s2":0,"bound":43,"slack":0,"verdict":"H(1)⊕A(n−3)","two_capable":true},
    {"name":"H(1)+A(4)","n":7,"m":1,"class":2,"c":2,"dim_multiplier":73,"s2":0,"bound":73,"slack":0,"verdict":"H(1)⊕A(n−3)","two_capable":true},
    {"name":"H(2)","n":5,"m":1,"class":2,"c":2,"dim_multiplier":20,"s2":3,"bound":23,"slack":3,"verdict":"H(k)⊕A(n−2k−1), k ≥ 2","two_capable":false},
    {"name":"H(2)+A(1)","n":6,"m":1,"class":2,"c":2,"dim_multiplier":40,"s2":3,"bound":43,"slack":3,"verdict":"H(k)⊕A(n−2k−1), k ≥ 2","two_capable":false},
    {"name":"H(3)","n":7,"m":1,"class":2,"c":2,"dim_multiplier":70,"s2":3,"bound":73,"slack":3,"verdict":"H(k)⊕A(n−2k−1), k ≥ 2","two_capable":false},
    {"name":"L4_3","n":4,"m":2,"class":3,"c":2,"dim_multiplier":6,"s2":5,"bound":9,"slack":3,"verdict":"L4_3 or L5_8","two_capable":true},
    {"name":"L4_3+A(1)","n":5,"m":2,"class":3,"c":2,"dim_multiplier":12,"s2":11,"bound":20,"slack":8,"verdict":"beyond classification table","two_capable":true},
    {"name":"L5_5","n":5,"m":2,"class":3,"c":2,"dim_multiplier":12,"s2":11,"bound":20,"slack":8,"verdict":"beyond classification table","two_capable":true},
    {"name":"L5_8","n":5,"m":2,"class":2,"c":2,"dim_multiplier":18,"s2":5,"bound":20,"slack":2,"verdict":"L4_3 or L5_8","two_capable":true},
    {"name":"L5_8+A(1)","n":6,"m":2,"class":2,"c":2,"dim_multiplier":30,"s2":13,"bound":39,"slack":9,"verdict":"beyond classification table","two_capable":true},
    {"name":"L5_8+A(2)","n":7,"m":2,"class":2,"c":2,"dim_multiplier":50,"s2":23,"bound":68,"slack":18,"verdict":"beyond classification table","two_capable":true}
  ])json";
  return Json::parse(text);
}

/// Compare computed rows against an expected table; returns one message per
/// disagreeing cell (empty means full agreement).
inline std::vector<std::string> report_mismatches(const Json& computed,
                                                  const Json& expected) {
  std::vector<std::string> out;
  if (!computed.is_array() || !expected.is_array()) {
    out.push_back("report comparison: both sides must be row arrays");
    return out;
  }
  if (computed.size() != expected.size())
    out.push_back("report has " + std::to_string(computed.size()) +
                  " rows, expected " + std::to_string(expected.size()));
  std::size_t count = std::min(computed.size(), expected.size());
  for (std::size_t i = 0; i < count; ++i) {
    for (const auto& [key, want] : expected[i].items()) {
      if (!computed[i].contains(key)) {
        out.push_back("row " + std::to_string(i) + ": missing field \"" + key + "\"");
        continue;
      }
      if (computed[i][key] != want)
        out.push_back("row " + expected[i].value("name", std::to_string(i)) +
                      ": " + key + " = " + computed[i][key].dump() +
                      ", expected " + want.dump());
    }
  }
  return out;
}

}  // namespace nilmult
