// Copyright 2026 The Flowmech Authors.
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


// Acceptance suite. Prints one PASS/FAIL line per criterion with its
// measurements and wall time; exits nonzero if any criterion fails or runs
// past its time budget. Pass criterion numbers as arguments to run a subset.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <mutex>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "flowmech/benchgen.h"
#include "flowmech/cli.h"
#include "flowmech/errors.h"
#include "flowmech/mechanism.h"
#include "flowmech/muca_solver.h"
#include "flowmech/oracle.h"
#include "flowmech/parallel.h"
#include "flowmech/repeat_solver.h"
#include "flowmech/report.h"
#include "flowmech/ufp_solver.h"
#include "test_support.h"

namespace flowmech {
namespace {

using testing::options;

struct Outcome {
  bool pass = true;
  std::string detail;
  std::vector<std::string> failures;

  void require(bool ok, const std::string& what) {
    if (ok) return;
    pass = false;
    if (failures.size() < 5) failures.push_back(what);
  }
};

std::string fmt(double x, int digits = 4) {
  std::ostringstream s;
  s.precision(digits);
  s << x;
  return s.str();
}

// Replays the trace and checks every intermediate load against capacity.
// Returns the largest load/capacity ratio seen.
double replay_paths(const UfpInstance& inst, const Trace& trace, Outcome& out,
                    const std::string& label) {
  std::vector<double> load(inst.edges.size(), 0.0);
  double worst = 0.0;
  for (const IterationRecord& rec : trace.records) {
    for (int e : rec.path) {
      load[e] += inst.requests[rec.request].demand;
      const double ratio = load[e] / inst.edges[e].capacity;
      worst = std::max(worst, ratio);
      out.require(ratio <= 1.0 + 1e-9, label + ": edge " + std::to_string(e) + " at " +
                                           fmt(ratio, 12) + " of capacity");
    }
  }
  return worst;
}

double replay_items(const MucaInstance& inst, const Trace& trace, Outcome& out,
                    const std::string& label) {
  std::vector<int> used(inst.items.size(), 0);
  double worst = 0.0;
  for (const IterationRecord& rec : trace.records) {
    for (int u : rec.path) {
      ++used[u];
      worst = std::max(worst, static_cast<double>(used[u]) / inst.items[u].multiplicity);
      out.require(used[u] <= inst.items[u].multiplicity,
                  label + ": item " + inst.items[u].id + " over multiplicity");
    }
  }
  return worst;
}

MucaInstance draw_muca(SeededRng& rng, int max_requests, int max_b) {
  RandomMucaSpec spec;
  spec.items = rng.uniform_int(1, 8);
  spec.requests = rng.uniform_int(1, max_requests);
  spec.B = rng.uniform_int(1, max_b);
  spec.multiplicity_max = spec.B + rng.uniform_int(0, 3);
  spec.bundle_max = rng.uniform_int(1, spec.items);
  spec.seed = rng.uniform_int(1, 1 << 30);
  return gen_random_muca(spec);
}

// Random instance with B >= ln m / eps^2 and small enough for the oracle.
NormalizedInstance draw_large_b(SeededRng& rng, double eps, int max_requests) {
  RandomUfpSpec spec;
  spec.vertices = rng.uniform_int(3, 6);
  spec.edges = rng.uniform_int(spec.vertices - 1, spec.vertices + 2);
  spec.requests = rng.uniform_int(1, max_requests);
  spec.directed = rng.uniform() < 0.5;
  spec.B = std::max(1.0, std::log(static_cast<double>(spec.edges)) / (eps * eps)) *
           rng.uniform(1.0, 2.0);
  spec.capacity_spread = rng.uniform(1.0, 1.5);
  spec.seed = rng.uniform_int(1, 1 << 30);
  NormalizedInstance n = normalize(gen_random(spec));
  return n;
}

// 1. Loads never exceed capacity, on random and generated instances.
Outcome feasibility() {
  Outcome out;
  SeededRng rng(1001);
  double worst = 0.0;
  int runs = 0;
  for (int k = 0; k < 1000; ++k) {
    NormalizedInstance n = normalize(gen_random(testing::draw_spec(rng, 12, 15, 1, 50)));
    const double eps = rng.uniform(0.05, 1.0);
    const std::string label = "random #" + std::to_string(k);
    for (StopRule rule : {StopRule::kWeightThreshold, StopRule::kUntilSaturated}) {
      worst = std::max(worst, replay_paths(n.inner, solve_ufp(n, options(eps, rule)).trace,
                                           out, label));
      ++runs;
    }
    worst = std::max(worst, replay_paths(n.inner, solve_ufp_repeat(n, options(eps)).trace,
                                         out, label + " repeat"));
    MucaInstance m = draw_muca(rng, 15, 50);
    for (StopRule rule : {StopRule::kWeightThreshold, StopRule::kUntilSaturated}) {
      worst = std::max(worst, replay_items(m, solve_muca(m, options(eps, rule)).trace, out,
                                           label + " muca"));
    }
    runs += 3;
  }
  std::vector<std::pair<std::string, UfpInstance>> generated;
  for (int B : {1, 2, 4, 8}) {
    generated.emplace_back("directed-lb B=" + std::to_string(B), gen_directed_lb(B, 50));
    generated.emplace_back("directed-lb sub B=" + std::to_string(B),
                           gen_directed_lb(B, 6, true));
  }
  for (int B : {2, 4, 10}) {
    generated.emplace_back("undirected-lb B=" + std::to_string(B), gen_undirected_lb(B));
  }
  for (const auto& [label, inst] : generated) {
    NormalizedInstance n = normalize(inst);
    for (double eps : {0.1, 0.5, 1.0}) {
      for (StopRule rule : {StopRule::kWeightThreshold, StopRule::kUntilSaturated}) {
        worst = std::max(worst, replay_paths(n.inner, solve_ufp(n, options(eps, rule)).trace,
                                             out, label));
        ++runs;
      }
      worst = std::max(worst, replay_paths(n.inner, solve_ufp_repeat(n, options(eps)).trace,
                                           out, label + " repeat"));
      ++runs;
    }
  }
  for (auto [p, B, m] : {std::tuple{3, 4, 12}, {5, 4, 30}, {3, 2, 24}}) {
    MucaInstance inst = gen_muca_lb(p, B, m);
    for (double eps : {0.1, 0.5, 1.0}) {
      for (StopRule rule : {StopRule::kWeightThreshold, StopRule::kUntilSaturated}) {
        worst = std::max(worst, replay_items(inst, solve_muca(inst, options(eps, rule)).trace,
                                             out, "muca-lb"));
        ++runs;
      }
    }
  }
  out.detail = std::to_string(runs) + " runs, max load/capacity " + fmt(worst, 6);
  return out;
}

// 2. A winner stays allocated under lower demand or higher value.
Outcome monotonicity() {
  Outcome out;
  SeededRng rng(2002);
  std::string detail;
  for (StopRule rule : {StopRule::kWeightThreshold, StopRule::kUntilSaturated}) {
    int triples = 0, kept = 0, demand_cases = 0;
    while (triples < 500) {
      NormalizedInstance n = normalize(gen_random(testing::draw_spec(rng, 10, 10, 1, 30)));
      const double eps = rng.uniform(0.1, 0.6);
      UfpSolution s = solve_ufp(n, options(eps, rule));
      if (s.allocation.empty()) continue;
      const Allocation& w =
          s.allocation[rng.uniform_int(0, static_cast<int>(s.allocation.size()) - 1)];
      NormalizedInstance probe = n;
      Request& r = probe.inner.requests[w.request];
      const bool demand = rng.uniform() < 0.5;
      const double u = demand ? rng.uniform(0.1, 1.0) : rng.uniform(1.0, 10.0);
      (demand ? r.demand : r.value) *= u;
      demand_cases += demand;
      const bool still = solve_ufp(probe, options(eps, rule)).allocated(w.request);
      out.require(still, "winner " + w.request_id + " lost after scaling " +
                             (demand ? "demand" : "value") + " by " + fmt(u));
      kept += still;
      ++triples;
    }
    detail += std::string(rule == StopRule::kWeightThreshold ? "weight-threshold" : "until-saturated") +
              " " + std::to_string(kept) + "/" + std::to_string(triples) + " kept (" +
              std::to_string(demand_cases) + " demand); ";
  }
  out.detail = detail;
  return out;
}

// 3. OPT / P and certificate / P within (1 + 6 eps) e / (e - 1), and
//    certificate >= OPT >= P.
Outcome oracle_ratio() {
  Outcome out;
  const double eps = 0.1;
  const double bound = approximation_bound(eps);
  SeededRng rng(3003);
  double worst_opt = 1.0, worst_cert = 1.0;
  int done = 0, skipped = 0;
  while (done < 200) {
    NormalizedInstance n = draw_large_b(rng, eps, 10);
    const int m = static_cast<int>(n.inner.edges.size());
    out.require(n.B >= std::log(static_cast<double>(m)) / (eps * eps), "B below ln m / eps^2");
    UfpOptimum opt;
    try {
      opt = brute_force_opt_ufp(n.inner);
    } catch (const OracleLimitExceeded&) {
      ++skipped;
      continue;
    }
    UfpSolution s = solve_ufp(n, options(eps));
    const double p = s.primal_value;
    out.require(p > 0, "empty solution");
    out.require(opt.value <= bound * p, "OPT/P = " + fmt(opt.value / p));
    out.require(s.dual_certificate <= bound * p, "cert/P = " + fmt(s.dual_certificate / p));
    out.require(s.dual_certificate >= opt.value * (1 - 1e-9), "certificate below OPT");
    out.require(opt.value >= p * (1 - 1e-12), "P above OPT");
    worst_opt = std::max(worst_opt, opt.value / p);
    worst_cert = std::max(worst_cert, s.dual_certificate / p);
    ++done;
  }
  out.detail = "200 instances (" + std::to_string(skipped) + " redrawn past oracle limits), max OPT/P " +
               fmt(worst_opt) + ", max cert/P " + fmt(worst_cert) + ", bound " + fmt(bound);
  return out;
}

// 4. Layered directed family at ell = 200.
Outcome directed_lb() {
  Outcome out;
  const int ell = 200;
  std::vector<double> ratios;
  std::string detail;
  for (int B : {1, 2, 4, 8}) {
    UfpInstance inst = gen_directed_lb(B, ell);
    NormalizedInstance n = normalize(inst);
    const double cap = directed_lb_value_bound(B, ell);
    auto witness = directed_lb_witness(B, ell);
    double opt = 0;
    for (const RoutedRequest& w : witness) opt += inst.requests[w.request].value;
    out.require(allocation_fits(inst, witness), "witness infeasible at B=" + std::to_string(B));
    out.require(opt == B * ell, "witness value " + fmt(opt));
    UfpSolution faithful = solve_ufp(n, options(0.1));
    UfpSolution saturated = solve_ufp(n, options(0.1, StopRule::kUntilSaturated));
    out.require(faithful.primal_value <= cap, "weight-threshold value above bound");
    out.require(saturated.primal_value <= cap, "until-saturated value " +
                                                   fmt(saturated.primal_value) + " above " +
                                                   fmt(cap));
    const double ratio = opt / saturated.primal_value;
    ratios.push_back(ratio);
    detail += "B=" + std::to_string(B) + ": P=" + fmt(saturated.primal_value, 6) + " (threshold rule " +
              fmt(faithful.primal_value) + ") bound " + fmt(cap, 6) + " OPT " + fmt(opt, 6) +
              " ratio " + fmt(ratio) + " closed form " + fmt(directed_lb_ratio(B)) + "; ";
  }
  const double limit = std::exp(1.0) / (std::exp(1.0) - 1.0);
  out.require(std::abs(ratios[0] - 2.0) < 1e-12, "B=1 ratio " + fmt(ratios[0]));
  out.require(ratios[2] >= 1.69, "B=4 ratio " + fmt(ratios[2]));
  for (std::size_t k = 0; k < ratios.size(); ++k) {
    out.require(ratios[k] >= limit, "ratio below e/(e-1)");
    if (k > 0) out.require(ratios[k] <= ratios[k - 1], "ratios not moving toward e/(e-1)");
  }
  out.detail = detail + "limit e/(e-1) = " + fmt(limit);
  return out;
}

// 5. Undirected family: OPT = 4B, greedy <= 3B.
Outcome undirected_lb() {
  Outcome out;
  std::string detail;
  OracleLimits limits;
  limits.max_requests = 40;
  for (int B : {2, 4, 10}) {
    UfpInstance inst = gen_undirected_lb(B);
    auto witness = undirected_lb_witness(B);
    double wv = 0;
    for (const RoutedRequest& w : witness) wv += inst.requests[w.request].value;
    out.require(allocation_fits(inst, witness) && wv == 4 * B, "witness");
    double opt = brute_force_opt_ufp(inst, limits).value;
    out.require(opt == 4 * B, "oracle OPT " + fmt(opt));
    NormalizedInstance n = normalize(inst);
    double p_sat = solve_ufp(n, options(0.1, StopRule::kUntilSaturated)).primal_value;
    double p_thr = solve_ufp(n, options(0.1)).primal_value;
    out.require(p_sat <= 3 * B && p_thr <= 3 * B, "greedy above 3B");
    detail += "B=" + std::to_string(B) + ": OPT " + fmt(opt) + ", P " + fmt(p_sat) +
              " (threshold rule " + fmt(p_thr) + "); ";
  }
  out.detail = detail;
  return out;
}

// 6. Bundle family: OPT = pB, greedy <= (3p + 1) B / 4.
Outcome muca_lb() {
  Outcome out;
  std::string detail;
  OracleLimits limits;
  limits.max_requests = 40;
  for (auto [p, B, m] : {std::tuple{3, 4, 12}, {5, 4, 30}}) {
    MucaInstance inst = gen_muca_lb(p, B, m);
    const double cap = (3.0 * p + 1) * B / 4;
    double opt = brute_force_opt_muca(inst, limits).value;
    out.require(opt == p * B, "OPT " + fmt(opt));
    double p_sat = solve_muca(inst, options(0.1, StopRule::kUntilSaturated)).primal_value;
    double p_thr = solve_muca(inst, options(0.1)).primal_value;
    out.require(p_sat <= cap && p_thr <= cap, "greedy above (3p+1)B/4");
    detail += "p=" + std::to_string(p) + ": OPT " + fmt(opt) + ", P " + fmt(p_sat) +
              " (threshold rule " + fmt(p_thr) + "), bound " + fmt(cap) + "; ";
  }
  out.detail = detail;
  return out;
}

// 7. Repeat certificate within 1 + 6 eps.
Outcome repeat_ratio() {
  Outcome out;
  const double eps = 0.1;
  SeededRng rng(7007);
  double worst = 1.0, mean = 0.0;
  long iterations = 0;
  for (int k = 0; k < 100; ++k) {
    NormalizedInstance n = draw_large_b(rng, eps, 10);
    RepeatSolution s = solve_ufp_repeat(n, options(eps));
    const double ratio = s.dual_certificate / s.primal_value;
    out.require(s.primal_value > 0 && ratio <= 1 + 6 * eps, "cert/P = " + fmt(ratio));
    out.require(ratio >= 1 - 1e-12, "certificate below P");
    worst = std::max(worst, ratio);
    mean += ratio / 100;
    iterations += static_cast<long>(s.trace.records.size());
  }
  out.detail = "100 instances, " + std::to_string(iterations) + " routings, max cert/P " +
               fmt(worst, 6) + ", mean " + fmt(mean, 6) + ", bound 1.6";
  return out;
}

// 8. No misreport on a 50-point value grid beats truth by more than 2 tol.
Outcome truthfulness() {
  Outcome out;
  SeededRng rng(8008);
  struct Job {
    bool muca;
    NormalizedInstance ufp;
    MucaInstance bundles;
    int request;
    SolveOptions opts;
    std::vector<double> values;
    std::vector<double> demands;
    std::vector<std::vector<int>> bundle_grid;
  };
  std::vector<Job> jobs;
  for (int k = 0; k < 100; ++k) {
    const bool muca = k % 2 == 1;
    SolveOptions opts = options(rng.uniform(0.1, 0.6), k % 4 < 2 ? StopRule::kWeightThreshold
                                                                 : StopRule::kUntilSaturated);
    if (!muca) {
      NormalizedInstance n = normalize(gen_random(testing::draw_spec(rng, 8, 8, 1, 12)));
      double vmax = 0;
      for (const Request& r : n.inner.requests) vmax = std::max(vmax, r.value);
      for (std::size_t r = 0; r < n.inner.requests.size(); ++r) {
        Job job{false, n, {}, static_cast<int>(r), opts, {}, {}, {}};
        for (int i = 1; i <= 50; ++i) job.values.push_back(2 * vmax * i / 50);
        const double d = n.inner.requests[r].demand;
        for (int i = 1; i <= 3; ++i) {
          job.demands.push_back(std::min(1.0, d + (1 - d) * i / 3));
        }
        jobs.push_back(std::move(job));
      }
    } else {
      MucaInstance m = draw_muca(rng, 8, 6);
      double vmax = 0;
      for (const MucaRequest& r : m.requests) vmax = std::max(vmax, r.value);
      for (std::size_t r = 0; r < m.requests.size(); ++r) {
        Job job{true, {}, m, static_cast<int>(r), opts, {}, {}, {}};
        for (int i = 1; i <= 50; ++i) job.values.push_back(2 * vmax * i / 50);
        const auto& truth = m.requests[r].bundle;
        for (std::size_t u = 0; u < m.items.size(); ++u) {
          if (std::find(truth.begin(), truth.end(), static_cast<int>(u)) != truth.end()) continue;
          auto bigger = truth;
          bigger.push_back(static_cast<int>(u));
          job.bundle_grid.push_back(bigger);
          break;
        }
        if (truth.size() > 1) job.bundle_grid.emplace_back(truth.begin(), truth.end() - 1);
        jobs.push_back(std::move(job));
      }
    }
  }
  std::vector<AuditReport> reports(jobs.size());
  parallel_for(jobs.size(), 0, [&](std::size_t j) {
    const Job& job = jobs[j];
    reports[j] = job.muca ? utility_audit(job.bundles, job.opts, job.request, job.values,
                                          job.bundle_grid)
                          : utility_audit(job.ufp, job.opts, job.request, job.values,
                                          job.demands);
  });
  double worst = -1e300;
  int winners = 0;
  std::size_t points = 0;
  for (std::size_t j = 0; j < jobs.size(); ++j) {
    const AuditReport& r = reports[j];
    out.require(r.gain <= 2 * r.tolerance, "agent gains " + fmt(r.gain, 8));
    worst = std::max(worst, r.gain / r.tolerance);
    winners += r.truthful_utility > 0 || std::any_of(r.points.begin(), r.points.end(),
                                                     [](const AuditPoint& p) { return p.allocated; });
    points += r.points.size();
  }
  out.detail = "100 instances, " + std::to_string(jobs.size()) + " agents (" +
               std::to_string(winners) + " ever served), " + std::to_string(points) +
               " misreports, max gain/tolerance " + fmt(worst);
  return out;
}

// 9. Byte-identical outputs for every subcommand, and across thread counts.
Outcome determinism() {
  Outcome out;
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "flowmech_acceptance";
  fs::create_directories(dir);
  auto p = [&](const std::string& name) { return (dir / name).string(); };
  auto slurp = [](const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::stringstream s;
    s << in.rdbuf();
    return s.str();
  };
  auto run = [&](std::vector<std::string> args) {
    std::ostringstream o, e;
    int code = cli::run(args, o, e);
    return std::to_string(code) + "\n" + o.str() + "\n" + e.str();
  };
  run({"gen", "random", "--seed", "17", "--B", "6", "--requests", "7", "--output", p("u.json")});
  run({"gen", "random-muca", "--seed", "17", "--output", p("m.json")});
  run({"gen", "directed-lb", "--B", "4", "--ell", "60", "--output", p("lb.json")});
  run({"solve", "ufp", "--input", p("u.json"), "--output", p("s.json")});
  std::vector<std::vector<std::string>> commands = {
      {"gen", "random", "--seed", "5", "--directed"},
      {"gen", "random-muca", "--seed", "5"},
      {"gen", "directed-lb", "--B", "2", "--ell", "4", "--subdivide"},
      {"gen", "undirected-lb", "--B", "6"},
      {"gen", "muca-lb", "--p", "3", "--B", "4", "--m", "24"},
      {"solve", "ufp", "--input", p("u.json"), "--trace", p("t.jsonl")},
      {"solve", "ufp", "--input", p("lb.json"), "--until-saturated", "--trace", p("t.jsonl")},
      {"solve", "repeat", "--input", p("u.json"), "--trace", p("t.jsonl")},
      {"solve", "muca", "--input", p("m.json"), "--trace", p("t.jsonl")},
      {"payments", "--input", p("u.json")},
      {"payments", "--input", p("m.json"), "--until-saturated"},
      {"audit", "--input", p("u.json"), "--request", "r1", "--grid", "20"},
      {"audit", "--input", p("m.json"), "--request", "r0", "--grid", "20"},
      {"oracle", "ufp", "--input", p("u.json")},
      {"oracle", "muca", "--input", p("m.json")},
      {"oracle", "repeat", "--input", p("u.json"), "--max-copies", "6"},
      {"recommend-epsilon", "--input", p("u.json")},
      {"verify", "--input", p("u.json"), "--solution", p("s.json")},
  };
  // Result document, diagnostics and the trace file written by the command.
  auto run_and_trace = [&](const std::vector<std::string>& c) {
    fs::remove(p("t.jsonl"));
    std::string text = run(c);
    return text + slurp(p("t.jsonl"));
  };
  std::set<std::string> names;
  for (const auto& c : commands) {
    std::string label = c[0] + " " + c[1];
    std::string first = run_and_trace(c);
    for (int k = 0; k < 2; ++k) {
      std::string again = run_and_trace(c);
      out.require(again == first, label + " differs between runs");
    }
    out.require(first.rfind("0\n", 0) == 0, label + " failed: " + first.substr(0, 200));
    names.insert(c[0]);
  }
  std::string reference;
  for (const char* threads : {"1", "2", "8"}) {
    std::string now = run({"solve", "ufp", "--input", p("lb.json"), "--until-saturated",
                           "--threads", threads});
    now += run({"payments", "--input", p("u.json"), "--threads", threads});
    if (reference.empty()) reference = now;
    out.require(now == reference, std::string("output changes with --threads ") + threads);
  }
  fs::remove_all(dir);
  out.detail = std::to_string(commands.size()) + " invocations over " +
               std::to_string(names.size()) + " subcommands, 3 runs each; thread counts 1/2/8";
  return out;
}

struct Criterion {
  int id;
  const char* name;
  double budget_s;
  Outcome (*run)();
};

}  // namespace
}  // namespace flowmech

int main(int argc, char** argv) {
  using namespace flowmech;
  const std::vector<Criterion> criteria = {
      {1, "feasibility", 10, feasibility},
      {2, "monotonicity", 30, monotonicity},
      {3, "oracle-ratio", 120, oracle_ratio},
      {4, "directed-lower-bound", 60, directed_lb},
      {5, "undirected-lower-bound", 10, undirected_lb},
      {6, "bundle-lower-bound", 10, muca_lb},
      {7, "repeat-ratio", 120, repeat_ratio},
      {8, "truthfulness-audit", 300, truthfulness},
      {9, "determinism", 60, determinism},
  };
  std::set<int> only;
  for (int i = 1; i < argc; ++i) only.insert(std::atoi(argv[i]));
  int failed = 0;
  for (const Criterion& c : criteria) {
    if (!only.empty() && !only.count(c.id)) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.failures.push_back(std::string("exception: ") + e.what());
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > c.budget_s) {
      o.pass = false;
      o.failures.push_back("over time budget");
    }
    std::printf("%s %d %s: %s [%.2fs of %.0fs]\n", o.pass ? "PASS" : "FAIL", c.id, c.name,
                o.detail.c_str(), secs, c.budget_s);
    for (const std::string& f : o.failures) std::printf("    %s\n", f.c_str());
    std::fflush(stdout);
    failed += !o.pass;
  }
  return failed == 0 ? 0 : 1;
}
