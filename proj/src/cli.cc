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

#include "flowmech/cli.h"

#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "flowmech/benchgen.h"
#include "flowmech/errors.h"
#include "flowmech/instance.h"
#include "flowmech/mechanism.h"
#include "flowmech/muca_solver.h"
#include "flowmech/oracle.h"
#include "flowmech/repeat_solver.h"
#include "flowmech/report.h"
#include "flowmech/ufp_solver.h"
#include "json.hpp"

namespace flowmech::cli {
namespace {

using ordered_json = nlohmann::ordered_json;

// Unreadable or unwritable files.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot write " + path);
  file << text;
  if (!file) throw IoError("cannot write " + path);
}

void warn(std::ostream& err, std::string_view code, const std::string& message) {
  ordered_json line;
  line["level"] = "warning";
  line["code"] = code;
  line["message"] = message;
  err << line.dump() << "\n";
}

struct Options {
  std::string problem;
  std::string family;
  std::string input;
  std::string output;
  std::string trace;
  std::string solution;
  std::string request;
  double epsilon = 0.1;
  double tolerance = 0.0;
  bool no_normalize = false;
  bool until_saturated = false;
  int threads = 0;
  int grid = 50;
  int demand_grid = 4;
  int max_requests = 10;
  int max_paths = 20;
  int max_copies = -1;
  std::int64_t max_nodes = 50'000'000;
  double B = 2.0;
  int ell = 2;
  int p = 3;
  int m = 12;
  std::uint64_t seed = 1;
  bool subdivide = false;
  int vertices = 6;
  int edges = 9;
  int requests = 5;
  int items = 5;
  bool directed = false;
  double capacity_spread = 1.0;
  int max_multiplicity = 2;
  int bundle_max = 3;
};

class Runner {
 public:
  Runner(const Options& o, std::ostream& out, std::ostream& err)
      : o_(o), out_(out), err_(err) {}

  void emit(const std::string& text) {
    if (o_.output.empty()) {
      out_ << text;
    } else {
      write_file(o_.output, text);
    }
  }

  SolveOptions solve_options() const {
    SolveOptions s;
    s.epsilon = o_.epsilon;
    s.threads = o_.threads;
    s.stop_rule = o_.until_saturated ? StopRule::kUntilSaturated
                                     : StopRule::kWeightThreshold;
    return s;
  }

  NormalizedInstance load_normalized(const std::string& text) {
    UfpInstance inst = parse_ufp_instance(text);
    return o_.no_normalize ? as_given(inst) : normalize(inst);
  }

  void report_guarantee(int m, double B) {
    if (!guarantee_holds(m, B, o_.epsilon)) {
      std::ostringstream msg;
      msg << "approximation guarantee void: epsilon " << o_.epsilon
          << " outside [" << recommend_epsilon(m, B) << ", 1/6] for m = " << m
          << ", B = " << B;
      warn(err_, "guarantee-void", msg.str());
    }
  }

  void report_trace(const Trace& trace, bool bundles) {
    for (const std::string& w : trace.warnings) warn(err_, "unroutable-request", w);
    if (!o_.trace.empty()) write_file(o_.trace, trace_json_lines(trace, bundles));
  }

  int refuse_small_B(double B) {
    err_ << "error: B = " << B << " < 1; the solvers require B >= 1\n";
    return kInfeasibleParameters;
  }

  int solve() {
    const std::string text = read_file(o_.input);
    if (o_.problem == "muca") {
      MucaInstance inst = parse_muca_instance(text);
      MucaSolution sol = solve_muca(inst, solve_options());
      report_guarantee(static_cast<int>(inst.items.size()), sol.B);
      report_trace(sol.trace, true);
      emit(muca_solution_json(sol, inst));
      return kOk;
    }
    NormalizedInstance norm = load_normalized(text);
    if (!norm.feasible_bound()) return refuse_small_B(norm.B);
    const int m = static_cast<int>(norm.inner.edges.size());
    if (o_.problem == "repeat") {
      RepeatSolution sol = solve_ufp_repeat(norm, solve_options());
      report_guarantee(m, norm.B);
      report_trace(sol.trace, false);
      emit(repeat_solution_json(sol, norm));
      return kOk;
    }
    UfpSolution sol = solve_ufp(norm, solve_options());
    report_guarantee(m, norm.B);
    report_trace(sol.trace, false);
    emit(ufp_solution_json(sol, norm));
    return kOk;
  }

  int payments() {
    const std::string text = read_file(o_.input);
    if (looks_like_muca(text)) {
      MucaInstance inst = parse_muca_instance(text);
      auto result = run_mechanism(inst, solve_options(), o_.tolerance);
      emit(payments_json(result.payments));
      return kOk;
    }
    NormalizedInstance norm = load_normalized(text);
    if (!norm.feasible_bound()) return refuse_small_B(norm.B);
    auto result = run_mechanism(norm, solve_options(), o_.tolerance);
    emit(payments_json(result.payments));
    return kOk;
  }

  std::vector<double> value_grid(double top) const {
    std::vector<double> grid;
    for (int k = 1; k <= o_.grid; ++k) grid.push_back(top * k / o_.grid);
    return grid;
  }

  int audit() {
    if (o_.grid < 1) throw ValidationError("grid", "must be >= 1");
    const std::string text = read_file(o_.input);
    if (looks_like_muca(text)) {
      MucaInstance inst = parse_muca_instance(text);
      int r = inst.request_index(o_.request);
      if (r < 0) throw ValidationError("request", "unknown request id " + o_.request);
      double top = 0.0;
      for (const MucaRequest& q : inst.requests) top = std::max(top, 2.0 * q.value);
      AuditReport report = utility_audit(inst, solve_options(), r, value_grid(top), {},
                                         o_.tolerance);
      emit(audit_json(report, o_.request));
      return kOk;
    }
    NormalizedInstance norm = load_normalized(text);
    if (!norm.feasible_bound()) return refuse_small_B(norm.B);
    int r = norm.inner.request_index(o_.request);
    if (r < 0) throw ValidationError("request", "unknown request id " + o_.request);
    double top = 0.0;
    for (const Request& q : norm.inner.requests) top = std::max(top, 2.0 * q.value);
    const double d = norm.inner.requests[r].demand;
    std::vector<double> demands;
    for (int k = 1; k <= o_.demand_grid && d < 1.0; ++k) {
      demands.push_back(d + (1.0 - d) * k / o_.demand_grid);
    }
    AuditReport report = utility_audit(norm, solve_options(), r, value_grid(top),
                                       demands, o_.tolerance);
    emit(audit_json(report, o_.request));
    return kOk;
  }

  int oracle() {
    const std::string text = read_file(o_.input);
    OracleLimits limits;
    limits.max_requests = o_.max_requests;
    limits.max_paths = o_.max_paths;
    limits.max_nodes = o_.max_nodes;
    if (o_.problem == "muca") {
      MucaInstance inst = parse_muca_instance(text);
      emit(muca_optimum_json(brute_force_opt_muca(inst, limits), inst));
      return kOk;
    }
    UfpInstance inst = parse_ufp_instance(text);
    if (o_.problem == "repeat") {
      int cap = o_.max_copies;
      if (cap < 0) {
        double total = 0.0, d_min = std::numeric_limits<double>::infinity();
        for (const Edge& e : inst.edges) total += e.capacity;
        for (const Request& q : inst.requests) d_min = std::min(d_min, q.demand);
        cap = inst.requests.empty()
                  ? 0
                  : static_cast<int>(std::min(std::floor(total / d_min), 1e6));
      }
      emit(repeat_optimum_json(brute_force_opt_repeat(inst, cap, limits), inst));
      return kOk;
    }
    emit(ufp_optimum_json(brute_force_opt_ufp(inst, limits), inst));
    return kOk;
  }

  int integer_B() const {
    if (o_.B != std::floor(o_.B) || o_.B < 1 || o_.B > 1e6) {
      throw ValidationError("B", "must be a positive integer for this family");
    }
    return static_cast<int>(o_.B);
  }

  int gen() {
    if (o_.family == "directed-lb") {
      emit(serialize_ufp_instance(gen_directed_lb(integer_B(), o_.ell, o_.subdivide)));
    } else if (o_.family == "undirected-lb") {
      emit(serialize_ufp_instance(gen_undirected_lb(integer_B())));
    } else if (o_.family == "muca-lb") {
      emit(serialize_muca_instance(gen_muca_lb(o_.p, integer_B(), o_.m)));
    } else if (o_.family == "random") {
      RandomUfpSpec spec;
      spec.vertices = o_.vertices;
      spec.edges = o_.edges;
      spec.requests = o_.requests;
      spec.directed = o_.directed;
      spec.B = o_.B;
      spec.capacity_spread = o_.capacity_spread;
      spec.seed = o_.seed;
      emit(serialize_ufp_instance(gen_random(spec)));
    } else {
      RandomMucaSpec spec;
      spec.items = o_.items;
      spec.requests = o_.requests;
      spec.B = integer_B();
      spec.multiplicity_max = o_.max_multiplicity;
      spec.bundle_max = o_.bundle_max;
      spec.seed = o_.seed;
      emit(serialize_muca_instance(gen_random_muca(spec)));
    }
    return kOk;
  }

  int recommend() {
    const std::string text = read_file(o_.input);
    int m = 0;
    double B = 0.0;
    if (looks_like_muca(text)) {
      MucaInstance inst = parse_muca_instance(text);
      m = static_cast<int>(inst.items.size());
      B = inst.B();
    } else {
      NormalizedInstance norm = load_normalized(text);
      m = static_cast<int>(norm.inner.edges.size());
      B = norm.B;
    }
    ordered_json doc;
    doc["m"] = m;
    doc["B"] = B;
    const double lo = m > 0 && B > 0 ? recommend_epsilon(m, B)
                                     : std::numeric_limits<double>::infinity();
    doc["epsilon_min"] = std::isfinite(lo) ? ordered_json(lo) : ordered_json(nullptr);
    doc["epsilon_upper"] = 1.0 / 6.0;
    doc["admissible"] = B >= 1.0 && lo <= 1.0 / 6.0;
    doc["note"] =
        "the (1+6 epsilon) e/(e-1) guarantee needs epsilon in [epsilon_min, epsilon_upper]; "
        "solving with epsilon/6 targets (1+epsilon) e/(e-1)";
    emit(doc.dump(2) + "\n");
    return B >= 1.0 ? kOk : kInfeasibleParameters;
  }

  int verify() {
    VerifyReport report = verify_solution(read_file(o_.input), read_file(o_.solution));
    emit(verify_json(report));
    return report.feasible ? kOk : kInvalidInput;
  }

 private:
  const Options& o_;
  std::ostream& out_;
  std::ostream& err_;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Primal-dual solvers, payments and oracles for bounded unsplittable "
               "flow and multi-unit auctions"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all");

  auto add_epsilon = [&](CLI::App* sub) {
    sub->add_option("--epsilon", o.epsilon, "Accuracy parameter in (0, 1]")
        ->capture_default_str();
  };
  auto add_output = [&](CLI::App* sub) {
    sub->add_option("--output", o.output, "Write the result here instead of stdout");
  };

  CLI::App* solve = app.add_subcommand("solve", "Run a greedy solver");
  solve->add_option("problem", o.problem, "ufp, muca or repeat")
      ->required()
      ->check(CLI::IsMember({"ufp", "muca", "repeat"}));
  solve->add_option("--input", o.input, "Instance file")->required();
  add_epsilon(solve);
  solve->add_option("--trace", o.trace, "Write the iteration trace (JSON lines) here");
  solve->add_flag("--no-normalize", o.no_normalize,
                  "Use demands and capacities as given (demands must be <= 1)");
  solve->add_flag("--until-saturated", o.until_saturated,
                  "Ignore the weight threshold; stop when nothing pending fits");
  solve->add_option("--threads", o.threads, "Worker threads (0: auto)");
  add_output(solve);

  CLI::App* pay = app.add_subcommand("payments", "Critical-value payments of all winners");
  pay->add_option("--input", o.input, "Instance file")->required();
  add_epsilon(pay);
  pay->add_option("--tolerance", o.tolerance, "Absolute tolerance (default 1e-6 * value)");
  pay->add_flag("--no-normalize", o.no_normalize, "Use the instance as given");
  pay->add_flag("--until-saturated", o.until_saturated, "Saturating stop rule");
  pay->add_option("--threads", o.threads, "Worker threads (0: auto)");
  add_output(pay);

  CLI::App* audit = app.add_subcommand("audit", "Grid search for profitable misreports");
  audit->add_option("--input", o.input, "Instance file")->required();
  add_epsilon(audit);
  audit->add_option("--request", o.request, "Request id")->required();
  audit->add_option("--grid", o.grid, "Number of reported values")->capture_default_str();
  audit->add_option("--demand-grid", o.demand_grid, "Number of larger reported demands")
      ->capture_default_str();
  audit->add_option("--tolerance", o.tolerance, "Absolute tolerance (default 1e-6 * value)");
  audit->add_flag("--no-normalize", o.no_normalize, "Use the instance as given");
  audit->add_flag("--until-saturated", o.until_saturated, "Saturating stop rule");
  add_output(audit);

  CLI::App* oracle = app.add_subcommand("oracle", "Exhaustive optimum of a small instance");
  oracle->add_option("problem", o.problem, "ufp, muca or repeat")
      ->required()
      ->check(CLI::IsMember({"ufp", "muca", "repeat"}));
  oracle->add_option("--input", o.input, "Instance file")->required();
  oracle->add_option("--max-requests", o.max_requests)->capture_default_str();
  oracle->add_option("--max-paths", o.max_paths)->capture_default_str();
  oracle->add_option("--max-copies", o.max_copies,
                     "Copy cap for repeat (default: sum of capacities / min demand)");
  oracle->add_option("--max-nodes", o.max_nodes, "Search node budget")->capture_default_str();
  add_output(oracle);

  CLI::App* gen = app.add_subcommand("gen", "Generate an instance");
  gen->add_option("family", o.family,
                  "directed-lb, undirected-lb, muca-lb, random or random-muca")
      ->required()
      ->check(CLI::IsMember({"directed-lb", "undirected-lb", "muca-lb", "random",
                             "random-muca"}));
  gen->add_option("--B", o.B, "Capacity / multiplicity bound")->capture_default_str();
  gen->add_option("--ell", o.ell)->capture_default_str();
  gen->add_option("--p", o.p)->capture_default_str();
  gen->add_option("--m", o.m, "Item count (muca-lb)")->capture_default_str();
  gen->add_option("--seed", o.seed)->capture_default_str();
  gen->add_flag("--subdivide", o.subdivide, "Subdivide the s_i -> v_j edges");
  gen->add_option("--vertices", o.vertices)->capture_default_str();
  gen->add_option("--edges", o.edges)->capture_default_str();
  gen->add_option("--requests", o.requests)->capture_default_str();
  gen->add_option("--items", o.items)->capture_default_str();
  gen->add_flag("--directed", o.directed, "Directed random graph");
  gen->add_option("--capacity-spread", o.capacity_spread)->capture_default_str();
  gen->add_option("--max-multiplicity", o.max_multiplicity)->capture_default_str();
  gen->add_option("--bundle-max", o.bundle_max)->capture_default_str();
  add_output(gen);

  CLI::App* rec = app.add_subcommand("recommend-epsilon",
                                     "Admissible epsilon range for an instance");
  rec->add_option("--input", o.input, "Instance file")->required();
  rec->add_flag("--no-normalize", o.no_normalize, "Use the instance as given");
  add_output(rec);

  CLI::App* ver = app.add_subcommand("verify", "Check a solution document");
  ver->add_option("--input", o.input, "Instance file")->required();
  ver->add_option("--solution", o.solution, "Solution file")->required();
  add_output(ver);

  std::vector<std::string> argv_storage{"flowmech"};
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const std::string& a : argv_storage) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInvalidInput;
  }

  Runner runner(o, out, err);
  try {
    if (o.epsilon <= 0.0 || o.epsilon > 1.0) {
      throw ValidationError("epsilon", "must lie in (0, 1]");
    }
    if (*solve) return runner.solve();
    if (*pay) return runner.payments();
    if (*audit) return runner.audit();
    if (*oracle) return runner.oracle();
    if (*gen) return runner.gen();
    if (*rec) return runner.recommend();
    return runner.verify();
  } catch (const ParseError& e) {
    err << "error: parse error at byte " << e.position() << ": " << e.what() << "\n";
    return kInvalidInput;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const nlohmann::json::exception& e) {
    err << "error: malformed document: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const InfeasibleParameters& e) {
    err << "error: " << e.what() << "\n";
    return kInfeasibleParameters;
  } catch (const OracleLimitExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kOracleLimit;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kInvalidInput;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kInternalError;
  }
}

}  // namespace flowmech::cli
