#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "vmlab/bippivot.hpp"
#include "vmlab/graph.hpp"
#include "vmlab/lcdelta.hpp"

namespace vmlab {

/// G(n,p): every unordered pair becomes an edge independently with
/// probability p, drawn in lexicographic pair order from the seeded stream.
Graph sample_gnp(std::size_t n, double p, std::uint64_t seed);

/// Ordered bipartite analogue (left labels 0..a-1, right labels a..a+b-1),
/// entries drawn in row-major order.
OrderedBipartiteGraph sample_bipartite(std::size_t a, std::size_t b, double p,
                                       std::uint64_t seed);

/// Random instance for the rewriting-delta experiments: a G(n,p) draw with
/// a uniformly chosen watched-set size, subset, and complementation order.
LCInstance sample_lc_instance(std::size_t n, double p, std::uint64_t seed);

/// The scaling recipe for the universality experiment at a given (n, p):
/// q, the target subset size k, the watched-set size s, r = n - s, the
/// derived slack constant, and the claimed failure probability. The
/// hypothesis threshold on q is reported in both log bases and is advisory
/// only (desk-scale n never clears it).
struct UniversalityParameters {
  double q = 0.0;
  std::size_t k = 0;
  std::size_t s = 0;
  std::size_t r = 0;
  std::optional<double> slack_constant;  // undefined when k = 0
  double failure_bound = 0.0;
  double threshold_log2 = 0.0;
  double threshold_ln = 0.0;
  bool hypothesis_ok_log2 = false;
  bool hypothesis_ok_ln = false;

  nlohmann::json to_json() const;
};

UniversalityParameters universality_parameters(std::size_t n, double p);

/// A named experiment plus everything needed to reproduce it bit for bit.
struct ExperimentConfig {
  std::string name;
  std::uint64_t master_seed = 0;
  std::uint64_t trials = 0;
  int threads = 1;
  nlohmann::json params = nlohmann::json::object();

  static ExperimentConfig from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

/// jsonl carries one record per trial (or per scan cell) and is a pure
/// function of the config; wall-clock timing only ever appears in the CSV
/// so reruns stay byte-identical.
struct ExperimentReport {
  std::string jsonl;
  std::string csv;
  bool ok = true;
};

/// Dispatches to the named experiment: claim-m-verify, lemma21-scan,
/// rank-census, tv-estimate, fourier-audit, orbit, check-minor, universal,
/// pivot-pairs, rank-tail, bip-delta-verify. Throws on an unknown name or
/// on per-module cap violations.
ExperimentReport run_experiment(const ExperimentConfig& cfg);

}  // namespace vmlab
