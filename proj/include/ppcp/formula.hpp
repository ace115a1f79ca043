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

// Weighted-SAT and alternating weighted-SAT instances: data model, text
// format, and exhaustive ground-truth solvers.

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "ppcp/field.hpp"

namespace ppcp {

/// Syntactic formula classes.
///   G12N: 2-CNF, every literal negated (the W[1]-complete fragment).
///   G21P: CNF of unbounded clause length, every literal positive (W[2]).
enum class FormulaClass { G12N, G21P };

inline std::string to_string(FormulaClass c) { return c == FormulaClass::G12N ? "g12n" : "g21p"; }

using Clause = std::vector<int>;

class FormulaError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Smallest m with 2^m >= max(num_vars, num_clauses, 2).
inline unsigned cube_dimension(std::size_t num_vars, std::size_t num_clauses) {
  return ceil_log2(std::max<std::uint64_t>({num_vars, num_clauses, 2}));
}

/// A CNF formula tagged with its class and weight target k.
///
/// Variables are 1-based; variable v is encoded on the boolean cube by the
/// m-bit code v - 1 and clause c (0-based) by the code c. Codes are read most
/// significant bit first, so coordinate 0 of a cube point is the top bit.
class WeightedFormula {
 public:
  WeightedFormula(FormulaClass cls, std::size_t num_vars, std::vector<Clause> clauses, std::uint64_t k,
                  unsigned min_cube_dim = 0)
      : class_(cls), num_vars_(num_vars), clauses_(std::move(clauses)), k_(k) {
    if (num_vars_ == 0) throw FormulaError("formula needs at least one variable");
    for (std::size_t c = 0; c < clauses_.size(); ++c) {
      const auto& clause = clauses_[c];
      if (clause.empty()) throw FormulaError("clause " + std::to_string(c) + " is empty");
      if (cls == FormulaClass::G12N && clause.size() > 2) {
        throw FormulaError("clause " + std::to_string(c) + " has more than 2 literals in class g12n");
      }
      for (int lit : clause) {
        if (lit == 0 || static_cast<std::size_t>(std::abs(lit)) > num_vars_) {
          throw FormulaError("literal " + std::to_string(lit) + " out of range");
        }
        if (cls == FormulaClass::G12N && lit > 0) throw FormulaError("positive literal in class g12n");
        if (cls == FormulaClass::G21P && lit < 0) throw FormulaError("negated literal in class g21p");
      }
    }
    cube_dim_ = std::max(cube_dimension(num_vars_, clauses_.size()), min_cube_dim);
  }

  FormulaClass cls() const { return class_; }
  std::size_t num_vars() const { return num_vars_; }
  std::size_t num_clauses() const { return clauses_.size(); }
  const std::vector<Clause>& clauses() const { return clauses_; }
  std::uint64_t k() const { return k_; }
  /// m: the cube dimension indexing both variables and clauses.
  unsigned m() const { return cube_dim_; }
  std::size_t longest_clause() const {
    std::size_t longest = 0;
    for (const auto& c : clauses_) longest = std::max(longest, c.size());
    return longest;
  }

  friend bool operator==(const WeightedFormula&, const WeightedFormula&) = default;

 private:
  FormulaClass class_;
  std::size_t num_vars_;
  std::vector<Clause> clauses_;
  std::uint64_t k_;
  unsigned cube_dim_ = 1;
};

/// A truth assignment given by its set of true variables.
struct Assignment {
  std::set<std::uint32_t> true_set;

  std::size_t weight() const { return true_set.size(); }
  bool operator()(std::uint32_t var) const { return true_set.contains(var); }

  friend bool operator==(const Assignment&, const Assignment&) = default;
};

inline std::size_t weight(const Assignment& a) { return a.weight(); }

/// Alternating instance: exists_{k1} X1 forall_{k2} X2 ... over a g12n formula.
/// Odd blocks (1-based) are existential, even blocks universal.
struct AwsatInstance {
  WeightedFormula formula;
  std::vector<std::vector<std::uint32_t>> blocks;
  std::vector<std::uint64_t> block_weights;

  std::size_t l() const { return blocks.size(); }

  /// Checks the partition and weight invariants; throws FormulaError.
  void validate() const {
    if (formula.cls() != FormulaClass::G12N) throw FormulaError("awsat formula must be class g12n");
    if (blocks.empty()) throw FormulaError("awsat instance needs at least one block");
    if (blocks.size() != block_weights.size()) throw FormulaError("block/weight count mismatch");
    std::vector<int> seen(formula.num_vars() + 1, 0);
    std::uint64_t total = 0;
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      total += block_weights[i];
      if (!std::is_sorted(blocks[i].begin(), blocks[i].end())) throw FormulaError("block variables must be sorted");
      for (auto v : blocks[i]) {
        if (v == 0 || v > formula.num_vars()) throw FormulaError("block variable out of range");
        if (seen[v]++) throw FormulaError("variable " + std::to_string(v) + " appears in two blocks");
      }
    }
    for (std::size_t v = 1; v <= formula.num_vars(); ++v) {
      if (!seen[v]) throw FormulaError("variable " + std::to_string(v) + " is in no block");
    }
    if (total != formula.k()) throw FormulaError("header k must equal the sum of block weights");
  }
};

// ---------------------------------------------------------------------------
// Text format

enum class ParseErrorKind { MalformedHeader, MalformedLine, LiteralOutOfRange, ClassViolation, BlockError };

class ParseError : public std::runtime_error {
 public:
  ParseError(ParseErrorKind kind, std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), kind_(kind), line_(line) {}
  ParseErrorKind kind() const { return kind_; }
  std::size_t line() const { return line_; }

 private:
  ParseErrorKind kind_;
  std::size_t line_;
};

namespace detail {

inline bool parse_int(const std::string& tok, long long& out) {
  if (tok.empty()) return false;
  char* end = nullptr;
  out = std::strtoll(tok.c_str(), &end, 10);
  return end == tok.c_str() + tok.size();
}

struct ParsedFile {
  std::optional<WeightedFormula> formula;
  std::vector<std::vector<std::uint32_t>> blocks;
  std::vector<std::uint64_t> block_weights;
  bool has_blocks = false;
};

inline ParsedFile parse_instance_text(std::string_view text, bool allow_blocks) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t lineno = 0;
  bool have_header = false;
  FormulaClass cls = FormulaClass::G12N;
  long long nv = 0, nc = 0, k = 0;
  std::size_t header_line = 0;
  std::vector<Clause> clauses;
  std::map<long long, std::pair<std::uint64_t, std::vector<std::uint32_t>>> blocks;
  ParsedFile out;

  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream ls(line);
    std::vector<std::string> toks;
    for (std::string t; ls >> t;) toks.push_back(t);
    if (toks.empty() || toks[0] == "c" || toks[0][0] == 'c') continue;

    if (toks[0] == "p") {
      if (have_header) throw ParseError(ParseErrorKind::MalformedHeader, lineno, "duplicate header");
      if (toks.size() != 6 || toks[1] != "pwsat") {
        throw ParseError(ParseErrorKind::MalformedHeader, lineno, "expected 'p pwsat <class> <vars> <clauses> <k>'");
      }
      if (toks[2] == "g12n") {
        cls = FormulaClass::G12N;
      } else if (toks[2] == "g21p") {
        cls = FormulaClass::G21P;
      } else {
        throw ParseError(ParseErrorKind::MalformedHeader, lineno, "unknown class '" + toks[2] + "'");
      }
      if (!parse_int(toks[3], nv) || !parse_int(toks[4], nc) || !parse_int(toks[5], k) || nv < 1 || nc < 0 ||
          k < 0) {
        throw ParseError(ParseErrorKind::MalformedHeader, lineno, "header counts must be integers (vars >= 1)");
      }
      have_header = true;
      header_line = lineno;
      continue;
    }
    if (!have_header) throw ParseError(ParseErrorKind::MalformedHeader, lineno, "content before header");

    if (toks[0] == "b") {
      if (!allow_blocks) throw ParseError(ParseErrorKind::BlockError, lineno, "block lines are not allowed here");
      long long idx = 0, kb = 0;
      if (toks.size() < 4 || !parse_int(toks[1], idx) || !parse_int(toks[2], kb) || idx < 1 || kb < 0 ||
          toks.back() != "0") {
        throw ParseError(ParseErrorKind::BlockError, lineno, "expected 'b <i> <k_i> <vars...> 0'");
      }
      if (blocks.contains(idx)) throw ParseError(ParseErrorKind::BlockError, lineno, "duplicate block index");
      std::vector<std::uint32_t> vars;
      for (std::size_t t = 3; t + 1 < toks.size(); ++t) {
        long long v = 0;
        if (!parse_int(toks[t], v)) throw ParseError(ParseErrorKind::BlockError, lineno, "bad variable token");
        if (v < 1 || v > nv) throw ParseError(ParseErrorKind::LiteralOutOfRange, lineno, "block variable out of range");
        vars.push_back(static_cast<std::uint32_t>(v));
      }
      std::sort(vars.begin(), vars.end());
      blocks[idx] = {static_cast<std::uint64_t>(kb), std::move(vars)};
      continue;
    }

    Clause clause;
    bool terminated = false;
    for (const auto& t : toks) {
      long long lit = 0;
      if (terminated || !parse_int(t, lit)) {
        throw ParseError(ParseErrorKind::MalformedLine, lineno, "unexpected token '" + t + "'");
      }
      if (lit == 0) {
        terminated = true;
        continue;
      }
      if (std::llabs(lit) > nv) {
        throw ParseError(ParseErrorKind::LiteralOutOfRange, lineno, "literal " + t + " out of range");
      }
      if (cls == FormulaClass::G12N && lit > 0) {
        throw ParseError(ParseErrorKind::ClassViolation, lineno, "positive literal " + t + " in class g12n");
      }
      if (cls == FormulaClass::G21P && lit < 0) {
        throw ParseError(ParseErrorKind::ClassViolation, lineno, "negated literal " + t + " in class g21p");
      }
      clause.push_back(static_cast<int>(lit));
    }
    if (!terminated) throw ParseError(ParseErrorKind::MalformedLine, lineno, "clause not terminated by 0");
    if (clause.empty()) throw ParseError(ParseErrorKind::ClassViolation, lineno, "empty clause");
    if (cls == FormulaClass::G12N && clause.size() > 2) {
      throw ParseError(ParseErrorKind::ClassViolation, lineno, "clause longer than 2 in class g12n");
    }
    clauses.push_back(std::move(clause));
  }
  if (!have_header) throw ParseError(ParseErrorKind::MalformedHeader, lineno, "missing header");
  if (static_cast<long long>(clauses.size()) != nc) {
    throw ParseError(ParseErrorKind::MalformedHeader, header_line,
                     "header declares " + std::to_string(nc) + " clauses, found " + std::to_string(clauses.size()));
  }
  out.formula.emplace(cls, static_cast<std::size_t>(nv), std::move(clauses), static_cast<std::uint64_t>(k));
  if (!blocks.empty()) {
    out.has_blocks = true;
    long long expect = 1;
    for (auto& [idx, entry] : blocks) {
      if (idx != expect++) throw ParseError(ParseErrorKind::BlockError, header_line, "block indices must be 1..l");
      out.block_weights.push_back(entry.first);
      out.blocks.push_back(std::move(entry.second));
    }
  }
  return out;
}

}  // namespace detail

/// Parses the line-oriented pwsat format:
///   c comment
///   p pwsat <g12n|g21p> <num_vars> <num_clauses> <k>
///   <signed literals> 0
inline WeightedFormula parse_pwsat(std::string_view text) {
  return std::move(*detail::parse_instance_text(text, false).formula);
}

/// pwsat plus block lines "b <i> <k_i> <vars...> 0".
inline AwsatInstance parse_awsat(std::string_view text) {
  auto parsed = detail::parse_instance_text(text, true);
  if (!parsed.has_blocks) throw ParseError(ParseErrorKind::BlockError, 0, "awsat file declares no blocks");
  AwsatInstance inst{std::move(*parsed.formula), std::move(parsed.blocks), std::move(parsed.block_weights)};
  try {
    inst.validate();
  } catch (const FormulaError& e) {
    throw ParseError(ParseErrorKind::BlockError, 0, e.what());
  }
  return inst;
}

/// True when the text carries block declarations.
inline bool has_block_lines(std::string_view text) {
  std::istringstream in{std::string(text)};
  for (std::string line; std::getline(in, line);) {
    std::istringstream ls(line);
    std::string first;
    if (ls >> first && first == "b") return true;
  }
  return false;
}

inline std::string render_pwsat(const WeightedFormula& f) {
  std::ostringstream out;
  out << "p pwsat " << to_string(f.cls()) << ' ' << f.num_vars() << ' ' << f.num_clauses() << ' ' << f.k() << '\n';
  for (const auto& clause : f.clauses()) {
    for (int lit : clause) out << lit << ' ';
    out << "0\n";
  }
  return out.str();
}

inline std::string render_awsat(const AwsatInstance& inst) {
  std::string text = render_pwsat(inst.formula);
  std::ostringstream out;
  for (std::size_t i = 0; i < inst.blocks.size(); ++i) {
    out << "b " << (i + 1) << ' ' << inst.block_weights[i];
    for (auto v : inst.blocks[i]) out << ' ' << v;
    out << " 0\n";
  }
  // Block lines go right after the header.
  auto nl = text.find('\n');
  return text.substr(0, nl + 1) + out.str() + text.substr(nl + 1);
}

// ---------------------------------------------------------------------------
// Evaluation

inline bool literal_holds(int lit, const std::function<bool(std::uint32_t)>& value) {
  bool v = value(static_cast<std::uint32_t>(std::abs(lit)));
  return lit > 0 ? v : !v;
}

inline bool eval_clause(const WeightedFormula& f, std::size_t clause_index, const Assignment& a) {
  if (clause_index >= f.num_clauses()) throw std::out_of_range("clause index out of range");
  for (int lit : f.clauses()[clause_index]) {
    bool v = a(static_cast<std::uint32_t>(std::abs(lit)));
    if (lit > 0 ? v : !v) return true;
  }
  return false;
}

inline bool satisfies(const WeightedFormula& f, const Assignment& a) {
  for (std::size_t c = 0; c < f.num_clauses(); ++c) {
    if (!eval_clause(f, c, a)) return false;
  }
  return true;
}

namespace detail {

// Bitmask view: bit (v - 1) set when variable v is true.
inline bool satisfies_mask(const WeightedFormula& f, std::uint64_t mask) {
  for (const auto& clause : f.clauses()) {
    bool sat = false;
    for (int lit : clause) {
      bool v = (mask >> (std::abs(lit) - 1)) & 1;
      if (lit > 0 ? v : !v) {
        sat = true;
        break;
      }
    }
    if (!sat) return false;
  }
  return true;
}

inline std::size_t violated_mask(const WeightedFormula& f, std::uint64_t mask) {
  std::size_t bad = 0;
  for (const auto& clause : f.clauses()) {
    bool sat = false;
    for (int lit : clause) {
      bool v = (mask >> (std::abs(lit) - 1)) & 1;
      if (lit > 0 ? v : !v) sat = true;
    }
    bad += !sat;
  }
  return bad;
}

inline Assignment mask_to_assignment(std::uint64_t mask) {
  Assignment a;
  for (std::uint32_t v = 1; mask; ++v, mask >>= 1) {
    if (mask & 1) a.true_set.insert(v);
  }
  return a;
}

}  // namespace detail

/// Calls visit(subset) for every k-subset of items in lexicographic order.
/// Stops early when visit returns false; returns false in that case.
template <typename T, typename Visit>
bool for_each_subset(const std::vector<T>& items, std::size_t k, Visit&& visit) {
  if (k > items.size()) return true;
  std::vector<std::size_t> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = i;
  std::vector<T> subset(k);
  while (true) {
    for (std::size_t i = 0; i < k; ++i) subset[i] = items[idx[i]];
    if (!visit(static_cast<const std::vector<T>&>(subset))) return false;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == items.size() - k + (i - 1)) --i;
    if (i == 0) return true;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

/// Binomial coefficient, saturating at UINT64_MAX.
inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > UINT64_MAX) return UINT64_MAX;
  }
  return static_cast<std::uint64_t>(r);
}

inline constexpr std::size_t kMaxBruteForceVars = 24;

struct WsatResult {
  bool satisfiable = false;
  std::optional<Assignment> witness;
};

/// Exhaustive search over all weight-k assignments.
inline WsatResult brute_force_wsat(const WeightedFormula& f) {
  if (f.num_vars() > kMaxBruteForceVars) throw std::length_error("brute_force_wsat: more than 24 variables");
  WsatResult result;
  std::vector<std::uint32_t> vars(f.num_vars());
  for (std::uint32_t v = 0; v < vars.size(); ++v) vars[v] = v;
  for_each_subset(vars, f.k(), [&](const std::vector<std::uint32_t>& subset) {
    std::uint64_t mask = 0;
    for (auto b : subset) mask |= std::uint64_t{1} << b;
    if (detail::satisfies_mask(f, mask)) {
      result.satisfiable = true;
      result.witness = detail::mask_to_assignment(mask);
      return false;
    }
    return true;
  });
  return result;
}

/// Weight-min(k, num_vars) assignment violating the fewest clauses; the
/// natural table for a prover that has no witness.
inline Assignment closest_assignment(const WeightedFormula& f) {
  if (f.num_vars() > kMaxBruteForceVars) throw std::length_error("closest_assignment: more than 24 variables");
  std::vector<std::uint32_t> vars(f.num_vars());
  for (std::uint32_t v = 0; v < vars.size(); ++v) vars[v] = v;
  std::size_t best = SIZE_MAX;
  std::uint64_t best_mask = 0;
  for_each_subset(vars, std::min<std::uint64_t>(f.k(), f.num_vars()), [&](const std::vector<std::uint32_t>& subset) {
    std::uint64_t mask = 0;
    for (auto b : subset) mask |= std::uint64_t{1} << b;
    auto bad = detail::violated_mask(f, mask);
    if (bad < best) {
      best = bad;
      best_mask = mask;
    }
    return best > 0;
  });
  return detail::mask_to_assignment(best_mask);
}

inline constexpr std::uint64_t kMaxAwsatBranches = 10'000'000;

/// Number of leaves of the full quantifier tree (saturating).
inline std::uint64_t awsat_tree_size(const AwsatInstance& inst) {
  unsigned __int128 total = 1;
  for (std::size_t i = 0; i < inst.blocks.size(); ++i) {
    total *= std::max<std::uint64_t>(1, binomial(inst.blocks[i].size(), inst.block_weights[i]));
    if (total > UINT64_MAX) return UINT64_MAX;
  }
  return static_cast<std::uint64_t>(total);
}

namespace detail {

inline bool awsat_value(const AwsatInstance& inst, std::size_t block, std::uint64_t mask) {
  if (block == inst.blocks.size()) return satisfies_mask(inst.formula, mask);
  const bool existential = block % 2 == 0;
  bool found = false;
  bool complete = for_each_subset(inst.blocks[block], inst.block_weights[block], [&](const auto& subset) {
    std::uint64_t next = mask;
    for (auto v : subset) next |= std::uint64_t{1} << (v - 1);
    bool value = awsat_value(inst, block + 1, next);
    if (existential && value) {
      found = true;
      return false;
    }
    if (!existential && !value) {
      found = true;
      return false;
    }
    return true;
  });
  (void)complete;
  // Exists with no witness subset (including none of the right size) is false;
  // forall with no counterexample (including vacuously) is true.
  return existential ? found : !found;
}

}  // namespace detail

/// Truth of exists_{k1} X1 forall_{k2} X2 ... phi, each quantifier ranging
/// over exactly-weight-k_i subsets of its block.
inline bool brute_force_awsat(const AwsatInstance& inst) {
  inst.validate();
  if (inst.formula.num_vars() > 64) throw std::length_error("brute_force_awsat: more than 64 variables");
  if (awsat_tree_size(inst) > kMaxAwsatBranches) throw std::length_error("brute_force_awsat: more than 10^7 branches");
  return detail::awsat_value(inst, 0, 0);
}

/// Substitutes a partial assignment. Satisfied clauses disappear, false
/// literals drop out. A g12n clause reduced to one literal is kept binary by
/// repeating it. Returns nullopt when some clause loses every literal.
/// Variable count, k, and cube dimension are preserved.
inline std::optional<WeightedFormula> simplify(const WeightedFormula& f, const std::map<std::uint32_t, bool>& partial) {
  std::vector<Clause> out;
  for (const auto& clause : f.clauses()) {
    Clause reduced;
    bool satisfied = false;
    for (int lit : clause) {
      auto it = partial.find(static_cast<std::uint32_t>(std::abs(lit)));
      if (it == partial.end()) {
        if (std::find(reduced.begin(), reduced.end(), lit) == reduced.end()) reduced.push_back(lit);
        continue;
      }
      if ((lit > 0) == it->second) {
        satisfied = true;
        break;
      }
    }
    if (satisfied) continue;
    if (reduced.empty()) return std::nullopt;
    if (f.cls() == FormulaClass::G12N && reduced.size() == 1) reduced.push_back(reduced.front());
    out.push_back(std::move(reduced));
  }
  return WeightedFormula(f.cls(), f.num_vars(), std::move(out), f.k(), f.m());
}

}  // namespace ppcp
