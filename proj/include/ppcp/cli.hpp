// Copyright 2026 The ppcp Authors.
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

#pragma once

// Command-line driver. Exit codes: 0 accept/yes, 1 reject/no, 2 usage or
// input error.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ppcp/awsat.hpp"
#include "ppcp/formula.hpp"
#include "ppcp/pcpverify.hpp"
#include "ppcp/reductions.hpp"

namespace ppcp::cli {

inline constexpr int kReportVersion = 1;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline std::string read_source(const std::string& path, std::istream& in) {
  if (path == "-") {
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
  }
  std::ifstream file(path);
  if (!file) throw UsageError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << file.rdbuf();
  return buf.str();
}

/// Assignment file: whitespace-separated true variable indices; lines
/// starting with 'c' are comments.
inline Assignment parse_assignment(const std::string& text, std::size_t num_vars) {
  Assignment a;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    std::istringstream ls(line);
    std::string tok;
    while (ls >> tok) {
      if (tok[0] == 'c') break;
      long long v = 0;
      if (!detail::parse_int(tok, v) || v < 1 || static_cast<std::size_t>(v) > num_vars) {
        throw UsageError("assignment entry '" + tok + "' is not a variable index");
      }
      a.true_set.insert(static_cast<std::uint32_t>(v));
    }
  }
  return a;
}

using Json = nlohmann::ordered_json;

/// Emits a flat report either as "key: value" lines or as JSON.
class Report {
 public:
  explicit Report(bool json) : json_(json) { data_["report_version"] = kReportVersion; }

  template <typename T>
  void set(const std::string& key, const T& value) {
    data_[key] = value;
  }
  Json& raw() { return data_; }

  void write(std::ostream& out) const {
    if (json_) {
      out << data_.dump(2) << '\n';
      return;
    }
    write_flat(out, "", data_);
  }

 private:
  static void write_flat(std::ostream& out, const std::string& prefix, const Json& node) {
    for (auto it = node.begin(); it != node.end(); ++it) {
      const std::string key = prefix + it.key();
      if (it->is_object()) {
        write_flat(out, key + ".", *it);
      } else if (it->is_array()) {
        for (std::size_t i = 0; i < it->size(); ++i) {
          const auto& elem = (*it)[i];
          if (elem.is_object()) {
            write_flat(out, key + "." + std::to_string(i) + ".", elem);
          } else {
            out << key << "." << i << ": " << scalar(elem) << '\n';
          }
        }
      } else {
        out << key << ": " << scalar(*it) << '\n';
      }
    }
  }
  static std::string scalar(const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

  bool json_;
  Json data_;
};

inline Json meter_json(const ResourceMeter& m) {
  return Json{{"random_bits", m.random_bits},
              {"overhead_bits", m.overhead_bits},
              {"proof_bits", m.proof_bits},
              {"oracle_queries", m.oracle_queries}};
}

inline void put_verdict(Report& r, const Verdict& v) {
  r.set("verdict", v.accepted ? "accepted" : "rejected");
  r.set("rejection_stage", v.rejection_stage ? *v.rejection_stage : std::string("none"));
  r.set("rejection_round", v.rejection_round ? Json(*v.rejection_round) : Json("none"));
  r.set("random_bits", v.meter.random_bits);
  r.set("overhead_bits", v.meter.overhead_bits);
  r.set("proof_bits", v.meter.proof_bits);
  r.set("oracle_queries", v.meter.oracle_queries);
  Json stages = Json::array();
  for (const auto& s : v.stages) {
    Json entry{{"name", s.name}, {"rounds", s.rounds}, {"accepted", s.accepted}};
    const Json meter = meter_json(s.meter);
    for (const auto& [k, val] : meter.items()) entry[k] = val;
    stages.push_back(entry);
  }
  r.set("stages", stages);
}

inline VerifierConfig make_config(const std::string& epsilon, std::optional<std::uint64_t> prime,
                                  std::optional<std::size_t> reps) {
  VerifierConfig config;
  try {
    config.epsilon = Ratio::parse(epsilon);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  config.explicit_prime = prime;
  config.ml_test_reps = reps;
  config.validate();
  return config;
}

struct CommonOptions {
  std::string path;
  std::uint64_t seed = 1;
  std::string epsilon = "1/2";
  std::optional<std::uint64_t> prime;
  std::optional<std::size_t> reps;
  bool json = false;
};

inline double elapsed_ms(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

inline int cmd_solve(const CommonOptions& o, std::ostream& out, std::istream& in) {
  auto text = read_source(o.path, in);
  Report r(o.json);
  r.set("command", "solve");
  r.set("instance", o.path);
  bool yes = false;
  if (has_block_lines(text)) {
    auto inst = parse_awsat(text);
    yes = brute_force_awsat(inst);
    r.set("problem", "awsat");
    r.set("blocks", inst.l());
    r.set("decision", yes ? "yes" : "no");
  } else {
    auto f = parse_pwsat(text);
    auto res = brute_force_wsat(f);
    yes = res.satisfiable;
    r.set("problem", "wsat");
    r.set("class", to_string(f.cls()));
    r.set("decision", yes ? "yes" : "no");
    if (res.witness) {
      Json w = Json::array();
      for (auto v : res.witness->true_set) w.push_back(v);
      r.set("witness", w);
    }
  }
  r.write(out);
  return yes ? 0 : 1;
}

inline int cmd_verify(const CommonOptions& o, const std::string& prover_spec, std::ostream& out, std::istream& in) {
  auto text = read_source(o.path, in);
  auto config = make_config(o.epsilon, o.prime, o.reps);
  auto start = std::chrono::steady_clock::now();
  Report r(o.json);
  r.set("command", "verify");
  r.set("instance", o.path);
  r.set("seed", o.seed);
  r.set("prover", prover_spec);
  RandomTape tape(o.seed);
  Verdict verdict;
  if (has_block_lines(text)) {
    if (prover_spec != "honest") throw UsageError("awsat instances support only --prover honest");
    auto inst = parse_awsat(text);
    if (inst.l() % 2 == 0) inst = pad_to_odd(inst);
    auto tables = honest_awsat_tables(inst);
    auto result = verify_awsat(inst, tables, honest_factory(), tape, config);
    r.set("problem", "awsat");
    r.set("m", inst.formula.m());
    r.set("prime", result.params.prime);
    r.set("branches", result.branches);
    r.set("branches_checked", result.branches_checked);
    verdict = std::move(result.verdict);
  } else {
    auto f = parse_pwsat(text);
    BooleanTable table(f.m());
    if (prover_spec == "honest") {
      table = honest_table(f);
    } else if (prover_spec.rfind("table:", 0) == 0) {
      table = assignment_table(f.m(), parse_assignment(read_source(prover_spec.substr(6), in), f.num_vars()));
    } else {
      throw UsageError("--prover must be 'honest' or 'table:FILE'");
    }
    auto params = wsat_parameters(f, config);
    TableCommittedProver prover(table);
    verdict = verify_wsat(f, prover, tape, config);
    r.set("problem", "wsat");
    r.set("class", to_string(f.cls()));
    r.set("m", f.m());
    r.set("prime", params.prime);
    r.set("total_rounds", params.total_rounds);
  }
  put_verdict(r, verdict);
  r.set("wall_time_ms", elapsed_ms(start));
  r.write(out);
  return verdict.accepted ? 0 : 1;
}

inline int cmd_attack(const CommonOptions& o, const std::string& adversary, std::size_t trials, std::ostream& out,
                      std::istream& in) {
  auto text = read_source(o.path, in);
  auto config = make_config(o.epsilon, o.prime, o.reps);
  auto start = std::chrono::steady_clock::now();
  AdversaryKind kind;
  std::optional<std::string> table_path;
  if (adversary == "adaptive") {
    kind = AdversaryKind::Adaptive;
  } else if (adversary == "random") {
    kind = AdversaryKind::Random;
  } else if (adversary == "committed" || adversary.rfind("committed:", 0) == 0) {
    kind = AdversaryKind::Committed;
    if (adversary.size() > 10) table_path = adversary.substr(10);
  } else {
    throw UsageError("--adversary must be adaptive, committed[:FILE] or random");
  }
  Report r(o.json);
  r.set("command", "attack");
  r.set("instance", o.path);
  r.set("adversary", to_string(kind));
  r.set("seed", o.seed);
  ExperimentResult result;
  if (has_block_lines(text)) {
    if (table_path) throw UsageError("awsat attacks do not take a table file");
    auto inst = parse_awsat(text);
    if (inst.l() % 2 == 0) inst = pad_to_odd(inst);
    if (brute_force_awsat(inst)) throw UsageError("instance is a yes-instance; soundness attack is meaningless");
    result = awsat_soundness_experiment(inst, kind, trials, o.seed, config);
    r.set("problem", "awsat");
  } else {
    auto f = parse_pwsat(text);
    if (brute_force_wsat(f).satisfiable) throw UsageError("instance is a yes-instance; soundness attack is meaningless");
    std::optional<BooleanTable> table;
    if (table_path) table = assignment_table(f.m(), parse_assignment(read_source(*table_path, in), f.num_vars()));
    result = soundness_experiment(f, kind, trials, o.seed, config, table);
    r.set("problem", "wsat");
    r.set("class", to_string(f.cls()));
  }
  r.set("prime", result.params.prime);
  r.set("total_rounds", result.params.total_rounds);
  r.set("degree", result.params.degree);
  r.set("trials", result.trials);
  r.set("accepted", result.accepted);
  r.set("acceptance_rate", result.acceptance_rate);
  r.set("analytic_bound", result.analytic_bound);
  r.set("within_bound", result.acceptance_rate <= result.analytic_bound);
  r.set("wall_time_ms", elapsed_ms(start));
  r.write(out);
  return result.acceptance_rate <= result.analytic_bound ? 0 : 1;
}

inline int cmd_scaling(unsigned m_min, unsigned m_max, std::size_t per_m, const CommonOptions& o, std::ostream& out) {
  auto config = make_config(o.epsilon, o.prime, o.reps);
  auto rows = resource_report(m_min, m_max, per_m, config, o.seed);
  bool all_ok = true;
  if (o.json) {
    Json arr = Json::array();
    for (const auto& row : rows) {
      arr.push_back(Json{{"m", row.m},
                         {"prime", row.prime},
                         {"random_bits", row.random_bits},
                         {"proof_bits", row.proof_bits},
                         {"random_norm", row.random_norm},
                         {"proof_norm", row.proof_norm}});
      all_ok = all_ok && row.accepted;
    }
    out << Json{{"report_version", kReportVersion}, {"command", "scaling"}, {"rows", arr}}.dump(2) << '\n';
  } else {
    out << "m,prime,random_bits,proof_bits,random_norm,proof_norm\n";
    out << std::fixed << std::setprecision(4);
    for (const auto& row : rows) {
      out << row.m << ',' << row.prime << ',' << row.random_bits << ',' << row.proof_bits << ',' << row.random_norm
          << ',' << row.proof_norm << '\n';
      all_ok = all_ok && row.accepted;
    }
  }
  return all_ok ? 0 : 1;
}

inline int cmd_reduce(const std::string& path, std::uint64_t k, std::ostream& out, std::istream& in) {
  auto g = parse_graph(read_source(path, in));
  if (k > g.n) throw UsageError("--k exceeds the vertex count");
  out << "c independent set of size " << k << " in a " << g.n << "-vertex graph\n";
  out << render_pwsat(independent_set_to_wsat(g, k));
  return 0;
}

struct GenOptions {
  std::string kind;
  std::size_t n = 8;
  std::uint64_t k = 2;
  std::size_t clauses = 8;
  std::string cls = "g12n";
  std::size_t l = 3;
  std::size_t max_len = 3;
  std::uint64_t max_weight = 2;
  std::uint64_t seed = 1;
};

inline int cmd_gen(const GenOptions& g, std::ostream& out) {
  if (g.kind == "planted") {
    out << "c planted yes-instance seed " << g.seed << '\n' << render_pwsat(gen_planted_yes(g.n, g.k, g.clauses, g.seed));
  } else if (g.kind == "random") {
    FormulaClass cls;
    if (g.cls == "g12n") {
      cls = FormulaClass::G12N;
    } else if (g.cls == "g21p") {
      cls = FormulaClass::G21P;
    } else {
      throw UsageError("--class must be g12n or g21p");
    }
    auto labeled = gen_random(g.n, g.clauses, g.k, g.seed, cls, g.max_len);
    out << "c random instance seed " << g.seed << " label " << (labeled.yes ? "yes" : "no") << '\n'
        << render_pwsat(labeled.formula);
  } else if (g.kind == "awsat") {
    out << "c random awsat instance seed " << g.seed << '\n'
        << render_awsat(gen_awsat(g.n, g.clauses, g.l, g.seed, g.max_weight));
  } else {
    throw UsageError("gen kind must be planted, random or awsat");
  }
  return 0;
}

/// Entry point shared by the ppcp binary and the tests.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err, std::istream& in) {
  CLI::App app{"Parameterized probabilistically checkable proofs for weighted satisfiability"};
  app.require_subcommand(1);

  CommonOptions common;
  std::string prover_spec = "honest";
  std::string adversary = "adaptive";
  std::size_t trials = 500;
  unsigned m_min = 3, m_max = 8;
  std::size_t per_m = 1;
  std::string graph_path;
  std::uint64_t reduce_k = 1;
  GenOptions gen;

  auto add_protocol_flags = [&](CLI::App* sub) {
    sub->add_option("--seed", common.seed, "Seed for the verifier's random tape");
    sub->add_option("--epsilon", common.epsilon, "Soundness target, e.g. 1/2 or 0.1");
    sub->add_option("--prime", common.prime, "Use this prime instead of the selected one");
    sub->add_option("--reps", common.reps, "Multilinearity-test repetitions (default 5m)");
    sub->add_flag("--json", common.json, "Emit JSON");
  };

  auto* solve = app.add_subcommand("solve", "Brute-force ground truth for a pwsat/awsat instance");
  solve->add_option("path", common.path, "Instance file ('-' for stdin)")->required();
  solve->add_flag("--json", common.json, "Emit JSON");

  auto* verify = app.add_subcommand("verify", "Run the verifier once");
  verify->add_option("path", common.path, "Instance file ('-' for stdin)")->required();
  verify->add_option("--prover", prover_spec, "honest | table:FILE");
  add_protocol_flags(verify);

  auto* attack = app.add_subcommand("attack", "Soundness experiment against a no-instance");
  attack->add_option("path", common.path, "Instance file ('-' for stdin)")->required();
  attack->add_option("--adversary", adversary, "adaptive | committed[:FILE] | random");
  attack->add_option("--trials", trials, "Number of independent verifications");
  add_protocol_flags(attack);

  auto* scaling = app.add_subcommand("scaling", "Metered bits versus m, as CSV");
  scaling->add_option("--m-min", m_min, "Smallest m");
  scaling->add_option("--m-max", m_max, "Largest m (at most 10)");
  scaling->add_option("--per-m", per_m, "Instances per m");
  add_protocol_flags(scaling);

  auto* reduce = app.add_subcommand("reduce", "Independent Set graph to a pwsat instance");
  reduce->add_option("graph", graph_path, "Graph file ('-' for stdin)")->required();
  reduce->add_option("--k", reduce_k, "Independent set size")->required();

  auto* gen_cmd = app.add_subcommand("gen", "Generate an instance");
  gen_cmd->add_option("kind", gen.kind, "planted | random | awsat")->required();
  gen_cmd->add_option("--n", gen.n, "Number of variables");
  gen_cmd->add_option("--k", gen.k, "Weight target");
  gen_cmd->add_option("--clauses", gen.clauses, "Number of clauses");
  gen_cmd->add_option("--class", gen.cls, "g12n | g21p (random only)");
  gen_cmd->add_option("--l", gen.l, "Number of blocks (awsat only)");
  gen_cmd->add_option("--max-len", gen.max_len, "Longest g21p clause (random only)");
  gen_cmd->add_option("--max-weight", gen.max_weight, "Largest block weight (awsat only)");
  gen_cmd->add_option("--seed", gen.seed, "Generator seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*solve) return cmd_solve(common, out, in);
    if (*verify) return cmd_verify(common, prover_spec, out, in);
    if (*attack) return cmd_attack(common, adversary, trials, out, in);
    if (*scaling) return cmd_scaling(m_min, m_max, per_m, common, out);
    if (*reduce) return cmd_reduce(graph_path, reduce_k, out, in);
    if (*gen_cmd) return cmd_gen(gen, out);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return 2;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

}  // namespace ppcp::cli
