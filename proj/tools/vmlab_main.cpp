// vmlab: experiment driver for the graph-rewriting laboratory.
//
// Every subcommand assembles an ExperimentConfig, runs it, and writes a
// JSON-lines report (plus a CSV aggregate when --out is given). Re-running
// any subcommand with the same flags reproduces the JSONL byte for byte.

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "vmlab/harness.hpp"
#include "vmlab/vminor.hpp"

using nlohmann::json;

namespace {

struct GlobalOpts {
  std::uint64_t seed = 0;
  std::uint64_t trials = 100;
  int threads = 1;
  std::string out;
};

int run_and_emit(vmlab::ExperimentConfig cfg, const GlobalOpts& global) {
  cfg.master_seed = global.seed;
  cfg.threads = global.threads;
  const auto started = std::chrono::steady_clock::now();
  vmlab::ExperimentReport report;
  try {
    report = vmlab::run_experiment(cfg);
  } catch (const std::exception& e) {
    std::cerr << "vmlab: " << e.what() << "\n";
    return 2;
  }
  const double secs = std::chrono::duration<double>(
                          std::chrono::steady_clock::now() - started)
                          .count();
  if (global.out.empty()) {
    std::cout << report.jsonl;
  } else {
    std::ofstream jf(global.out + ".jsonl", std::ios::binary);
    jf << report.jsonl;
    std::ofstream cf(global.out + ".csv", std::ios::binary);
    cf << report.csv;
    cf << "elapsed_seconds," << secs << "\n";
    std::cout << (report.ok ? "ok" : "FAILED") << "  " << cfg.name << "  ("
              << secs << "s)  -> " << global.out << ".jsonl, " << global.out
              << ".csv\n";
  }
  return report.ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"vmlab: local-complementation rewriting laboratory"};
  app.require_subcommand(1);

  GlobalOpts global;
  app.add_option("--seed", global.seed, "master seed (default 0)");
  app.add_option("--trials", global.trials, "trial count where applicable");
  app.add_option("--threads", global.threads, "worker threads (default 1)");
  app.add_option("--out", global.out,
                 "output file prefix (writes PREFIX.jsonl and PREFIX.csv; "
                 "default prints JSONL to stdout)");

  vmlab::ExperimentConfig cfg;
  bool use_trials = false;

  // --- claim-m-verify -----------------------------------------------------
  auto* cmv = app.add_subcommand(
      "claim-m-verify",
      "closed-form rewrite delta against the sequential oracle");
  {
    static std::uint64_t n = 20;
    static double p = 0.5;
    cmv->add_option("--n", n, "vertex count")->required();
    cmv->add_option("--p", p, "edge probability")->required();
    cmv->callback([&, nptr = &n, pptr = &p]() {
      cfg.name = "claim-m-verify";
      cfg.params["n"] = *nptr;
      cfg.params["p"] = *pptr;
      use_trials = true;
    });
  }

  // --- lemma21-scan -------------------------------------------------------
  auto* scan = app.add_subcommand(
      "lemma21-scan", "exhaustive sign-expectation envelope scan");
  {
    static std::uint64_t m_max = 4;
    static std::vector<double> grid;
    scan->add_option("--m-max", m_max, "largest variable count (<= 5)");
    scan->add_option("--p-grid", grid, "explicit probability grid");
    scan->callback([&, mptr = &m_max, gptr = &grid]() {
      cfg.name = "lemma21-scan";
      cfg.params["m-max"] = *mptr;
      if (!gptr->empty()) cfg.params["p-grid"] = *gptr;
    });
  }

  // --- rank-census ----------------------------------------------------------
  auto* census = app.add_subcommand(
      "rank-census", "labeled graphs bucketed by adjacency rank");
  {
    static std::uint64_t s = 5;
    census->add_option("--s", s, "vertex count")->required();
    census->callback([&, sptr = &s]() {
      cfg.name = "rank-census";
      cfg.params["s"] = *sptr;
    });
  }

  // --- tv-estimate ----------------------------------------------------------
  auto* tv = app.add_subcommand(
      "tv-estimate",
      "monte-carlo distance of the post-sweep induced law from uniform");
  {
    static std::uint64_t n = 0, s = 3, r = 72, samples = 100000;
    static double p = 0.5;
    tv->add_option("--n", n, "total vertices (must equal s+r when given)");
    tv->add_option("--s", s, "watched set size")->required();
    tv->add_option("--r", r, "complementation sequence length")->required();
    tv->add_option("--p", p, "edge probability")->required();
    tv->add_option("--samples", samples, "sample count")->required();
    tv->callback([&, nptr = &n, sptr = &s, rptr = &r, pptr = &p,
                  mptr = &samples]() {
      cfg.name = "tv-estimate";
      if (*nptr) cfg.params["n"] = *nptr;
      cfg.params["s"] = *sptr;
      cfg.params["r"] = *rptr;
      cfg.params["p"] = *pptr;
      cfg.params["samples"] = *mptr;
    });
  }

  // --- fourier-audit ----------------------------------------------------
  auto* audit = app.add_subcommand(
      "fourier-audit", "exact spectra of the toggle law vs. the rank envelope");
  {
    static std::uint64_t s = 2, r = 3, gw_samples = 6;
    static double p = 0.5;
    audit->add_option("--s", s, "watched set size")->required();
    audit->add_option("--r", r, "internal set size")->required();
    audit->add_option("--p", p, "edge probability")->required();
    audit->add_option("--gw-samples", gw_samples,
                      "internal graphs to sample when enumeration is too big");
    audit->callback([&, sptr = &s, rptr = &r, pptr = &p, gptr = &gw_samples]() {
      cfg.name = "fourier-audit";
      cfg.params["s"] = *sptr;
      cfg.params["r"] = *rptr;
      cfg.params["p"] = *pptr;
      cfg.params["gw-samples"] = *gptr;
    });
  }

  // --- orbit -----------------------------------------------------------
  auto* orbit = app.add_subcommand(
      "orbit", "breadth-first closure under single-vertex complementations");
  {
    static std::string graph6;
    static std::uint64_t cap = vmlab::kDefaultOrbitCap;
    orbit->add_option("--graph6", graph6, "seed graph")->required();
    orbit->add_option("--cap", cap, "member cap before truncation");
    orbit->callback([&, gptr = &graph6, cptr = &cap]() {
      cfg.name = "orbit";
      cfg.params["graph6"] = *gptr;
      cfg.params["cap"] = *cptr;
    });
  }

  // --- check-minor -------------------------------------------------------
  auto* minor = app.add_subcommand(
      "check-minor", "is the target realizable on the given vertices?");
  {
    static std::string graph6, target;
    static std::vector<int> on;
    static std::uint64_t cap = vmlab::kDefaultOrbitCap;
    minor->add_option("--graph6", graph6, "host graph")->required();
    minor->add_option("--target-graph6", target, "target graph")->required();
    minor
        ->add_option("--on", on,
                     "host vertices carrying the target, one per target vertex")
        ->required()
        ->delimiter(',');
    minor->add_option("--cap", cap, "orbit member cap");
    minor->callback([&, gptr = &graph6, tptr = &target, optr = &on,
                     cptr = &cap]() {
      cfg.name = "check-minor";
      cfg.params["graph6"] = *gptr;
      cfg.params["target-graph6"] = *tptr;
      cfg.params["on"] = *optr;
      cfg.params["cap"] = *cptr;
    });
  }

  // --- universal -----------------------------------------------------------
  auto* universal = app.add_subcommand(
      "universal", "does every k-subset realize every graph on it?");
  {
    static std::string graph6;
    static std::uint64_t k = 2, cap = vmlab::kDefaultOrbitCap,
                         budget = 2'000'000'000ULL;
    universal->add_option("--graph6", graph6, "host graph")->required();
    universal->add_option("--k", k, "subset size")->required();
    universal->add_option("--cap", cap, "orbit member cap");
    universal->add_option("--budget", budget, "work budget");
    universal->callback([&, gptr = &graph6, kptr = &k, cptr = &cap,
                         bptr = &budget]() {
      cfg.name = "universal";
      cfg.params["graph6"] = *gptr;
      cfg.params["k"] = *kptr;
      cfg.params["cap"] = *cptr;
      cfg.params["budget"] = *bptr;
    });
  }

  // --- pivot-pairs ---------------------------------------------------------
  auto* pairs = app.add_subcommand(
      "pivot-pairs", "disjoint pivotable pairs up to the biadjacency rank");
  {
    static std::uint64_t rows = 12, cols = 12;
    static double p = 0.5;
    pairs->add_option("--rows", rows, "left side size")->required();
    pairs->add_option("--cols", cols, "right side size")->required();
    pairs->add_option("--p", p, "edge probability")->required();
    pairs->callback([&, rptr = &rows, cptr = &cols, pptr = &p]() {
      cfg.name = "pivot-pairs";
      cfg.params["rows"] = *rptr;
      cfg.params["cols"] = *cptr;
      cfg.params["p"] = *pptr;
      use_trials = true;
    });
  }

  // --- rank-tail -----------------------------------------------------------
  auto* tail = app.add_subcommand(
      "rank-tail", "frequency of rank <= r/2 against the tail bound");
  {
    static std::uint64_t r = 40;
    static double p = 0.3;
    tail->add_option("--r", r, "matrix size")->required();
    tail->add_option("--p", p, "entry probability")->required();
    tail->callback([&, rptr = &r, pptr = &p]() {
      cfg.name = "rank-tail";
      cfg.params["r"] = *rptr;
      cfg.params["p"] = *pptr;
      use_trials = true;
    });
  }

  // --- bip-delta-verify ------------------------------------------------------
  auto* bip = app.add_subcommand(
      "bip-delta-verify", "bipartite pivot-delta certificates");
  {
    static std::vector<std::uint64_t> sizes{12, 12};
    static double p = 0.5;
    bip->add_option("--sizes", sizes, "max side sizes a,b")->delimiter(',');
    bip->add_option("--p", p, "edge probability");
    bip->callback([&, sptr = &sizes, pptr = &p]() {
      cfg.name = "bip-delta-verify";
      cfg.params["sizes"] = *sptr;
      cfg.params["p"] = *pptr;
      use_trials = true;
    });
  }

  // --- params ---------------------------------------------------------------
  auto* params = app.add_subcommand(
      "params", "scaling recipe for the universality experiment at (n, p)");
  {
    static std::uint64_t n = 1000;
    static double p = 0.5;
    params->add_option("--n", n, "vertex count")->required();
    params->add_option("--p", p, "edge probability")->required();
    params->callback([&, nptr = &n, pptr = &p]() {
      std::cout << vmlab::universality_parameters(*nptr, *pptr).to_json().dump()
                << "\n";
      std::exit(0);
    });
  }

  // --- run (config file) ------------------------------------------------
  auto* runcfg = app.add_subcommand("run", "run an experiment from a JSON file");
  {
    static std::string path;
    runcfg->add_option("--config", path, "JSON config file")->required();
    runcfg->callback([&, pptr = &path]() {
      std::ifstream in(*pptr);
      if (!in) {
        std::cerr << "vmlab: cannot open " << *pptr << "\n";
        std::exit(2);
      }
      json j;
      in >> j;
      cfg = vmlab::ExperimentConfig::from_json(j);
      if (j.contains("seed")) global.seed = j["seed"].get<std::uint64_t>();
      if (j.contains("trials")) {
        global.trials = j["trials"].get<std::uint64_t>();
        use_trials = true;
      }
      if (j.contains("threads")) global.threads = j["threads"].get<int>();
    });
  }

  // Global flags may appear after the subcommand name.
  for (CLI::App* sub : app.get_subcommands([](CLI::App*) { return true; }))
    sub->fallthrough();

  CLI11_PARSE(app, argc, argv);

  if (use_trials) cfg.trials = global.trials;
  return run_and_emit(std::move(cfg), global);
}
