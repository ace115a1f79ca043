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

// Field-valued functions whose boolean-cube sums encode satisfaction and
// weight: multilinear extensions, clause indicators, and the summands handed
// to the sum-check engine.

#include <cstdint>
#include <functional>
#include <algorithm>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ppcp/field.hpp"
#include "ppcp/formula.hpp"

namespace ppcp {

/// A function B^q -> {0,1} stored densely. Index bits are read most
/// significant first: point (b_1, ..., b_q) lives at sum b_i 2^(q-i).
class BooleanTable {
 public:
  explicit BooleanTable(unsigned arity) : arity_(arity), values_(std::size_t{1} << arity, 0) {
    if (arity > 30) throw std::length_error("BooleanTable arity above 30");
  }

  unsigned arity() const { return arity_; }
  std::size_t size() const { return values_.size(); }
  bool operator[](std::size_t index) const { return values_.at(index) != 0; }
  void set(std::size_t index, bool value) { values_.at(index) = value ? 1 : 0; }

  std::size_t popcount() const {
    std::size_t n = 0;
    for (auto v : values_) n += v;
    return n;
  }

  friend bool operator==(const BooleanTable&, const BooleanTable&) = default;

 private:
  unsigned arity_;
  std::vector<std::uint8_t> values_;
};

/// Table of an assignment over the formula's variable codes; codes past
/// num_vars are pinned false.
inline BooleanTable assignment_table(unsigned m, const Assignment& a) {
  BooleanTable table(m);
  for (auto v : a.true_set) {
    if (v == 0 || v > table.size()) throw std::out_of_range("assignment variable outside the cube");
    table.set(v - 1, true);
  }
  return table;
}

/// Indicator of a variable set (1-based indices) over the m-cube.
inline BooleanTable block_table(unsigned m, std::span<const std::uint32_t> vars) {
  BooleanTable table(m);
  for (auto v : vars) {
    if (v == 0 || v > table.size()) throw std::out_of_range("block variable outside the cube");
    table.set(v - 1, true);
  }
  return table;
}

/// Indicator of the real (non-padding) variables of a formula.
inline BooleanTable real_variable_table(const WeightedFormula& f) {
  BooleanTable table(f.m());
  for (std::size_t v = 0; v < f.num_vars(); ++v) table.set(v, true);
  return table;
}

/// All 2^q values of the basis polynomials eq(point, b), indexed like a BooleanTable.
inline std::vector<Fp> eq_table(std::span<const Fp> point, const PrimeField& field) {
  std::vector<Fp> table{field.one()};
  table.reserve(std::size_t{1} << point.size());
  for (const Fp& x : point) {
    std::vector<Fp> next;
    next.reserve(table.size() * 2);
    Fp one_minus = field.one() - x;
    for (const Fp& t : table) {
      next.push_back(t * one_minus);
      next.push_back(t * x);
    }
    table = std::move(next);
  }
  return table;
}

/// eq(point, code) for a single boolean code of point.size() bits.
inline Fp eq_at_code(std::span<const Fp> point, std::uint64_t code, const PrimeField& field) {
  Fp acc = field.one();
  const std::size_t q = point.size();
  for (std::size_t i = 0; i < q; ++i) {
    bool bit = (code >> (q - 1 - i)) & 1;
    acc *= bit ? point[i] : field.one() - point[i];
  }
  return acc;
}

/// Folds the leading coordinate of a multilinear table at x: T'[i] = T[i] + x (T[i+half] - T[i]).
inline void fold_front(std::vector<Fp>& table, const Fp& x) {
  const std::size_t half = table.size() / 2;
  for (std::size_t i = 0; i < half; ++i) table[i] += x * (table[i + half] - table[i]);
  table.resize(half);
}

inline std::vector<Fp> lift(const BooleanTable& table, const PrimeField& field) {
  std::vector<Fp> values;
  values.reserve(table.size());
  for (std::size_t i = 0; i < table.size(); ++i) values.push_back(table[i] ? field.one() : field.zero());
  return values;
}

/// Multilinear extension of a boolean table evaluated at an arbitrary point,
/// in O(2^q) field operations.
inline Fp mle_eval(const BooleanTable& table, std::span<const Fp> point, const PrimeField& field) {
  if (point.size() != table.arity()) {
    throw std::invalid_argument("mle_eval: point has " + std::to_string(point.size()) + " coordinates, table arity " +
                                std::to_string(table.arity()));
  }
  auto values = lift(table, field);
  for (const Fp& x : point) fold_front(values, x);
  return values.front();
}

/// The proof's assignment part as seen by the verifier: a function F^m -> F.
using AssignmentOracle = std::function<Fp(std::span<const Fp>)>;

inline AssignmentOracle table_oracle(BooleanTable table, PrimeField field) {
  return [table = std::move(table), field](std::span<const Fp> point) { return mle_eval(table, point, field); };
}

/// Random clause weights r_1..r_m; clause z is weighted by prod r_j^{z_j}.
struct ClauseWeights {
  std::vector<Fp> r;
};

/// Multilinear extension of z -> prod_j r_j^{z_j}: prod_j ((1 - z_j) + r_j z_j).
inline Fp weight_mle(const ClauseWeights& w, std::span<const Fp> z, const PrimeField& field) {
  if (z.size() != w.r.size()) throw std::invalid_argument("weight_mle: dimension mismatch");
  Fp acc = field.one();
  for (std::size_t j = 0; j < z.size(); ++j) acc *= (field.one() - z[j]) + w.r[j] * z[j];
  return acc;
}

/// A polynomial h: F^q -> F together with per-variable degree bounds.
struct SummandSpec {
  PrimeField field;
  std::vector<std::size_t> degree_bounds;
  std::function<Fp(std::span<const Fp>)> evaluate;

  std::size_t num_vars() const { return degree_bounds.size(); }
  std::size_t max_degree() const {
    std::size_t d = 0;
    for (auto b : degree_bounds) d = std::max(d, b);
    return d;
  }
};

/// How a literal position contributes to clause unsatisfaction.
///   Negated (g12n): the literal not-x is false exactly when A(x) = 1.
///   Positive (g21p): the literal x is false exactly when 1 - A(x) = 1.
enum class Polarity { Negated, Positive };

/// h(z, x^1..x^L) = w~(z) * prod_i C~_i(z, x^i) * lit(A~(x^i)).
///
/// Its boolean-cube sum is sum_z w(z) [clause z unsatisfied under A]. Clauses
/// shorter than L repeat their last variable. Variable order: the m bits of z,
/// then the m bits of each x^i in turn.
class ClauseProductSummand {
 public:
  ClauseProductSummand(const WeightedFormula& formula, std::size_t clause_len, Polarity polarity,
                       ClauseWeights weights, PrimeField field)
      : m_(formula.m()),
        num_clauses_(formula.num_clauses()),
        clause_len_(clause_len),
        polarity_(polarity),
        weights_(std::move(weights)),
        field_(field) {
    if (clause_len_ == 0) throw std::invalid_argument("clause length must be positive");
    if (formula.longest_clause() > clause_len_) {
      throw std::invalid_argument("padded clause length " + std::to_string(clause_len_) + " below longest clause " +
                                  std::to_string(formula.longest_clause()));
    }
    if (weights_.r.size() != m_) throw std::invalid_argument("clause weights must have length m");
    codes_.reserve(num_clauses_ * clause_len_);
    for (const auto& clause : formula.clauses()) {
      for (std::size_t i = 0; i < clause_len_; ++i) {
        int lit = clause[std::min(i, clause.size() - 1)];
        codes_.push_back(static_cast<std::uint32_t>(std::abs(lit)) - 1);
      }
    }
  }

  unsigned m() const { return m_; }
  std::size_t clause_len() const { return clause_len_; }
  std::size_t num_clauses() const { return num_clauses_; }
  Polarity polarity() const { return polarity_; }
  const ClauseWeights& weights() const { return weights_; }
  const PrimeField& field() const { return field_; }
  std::size_t num_vars() const { return (clause_len_ + 1) * m_; }

  /// Code of the i-th (0-based) variable of clause c.
  std::uint32_t variable_code(std::size_t c, std::size_t i) const { return codes_.at(c * clause_len_ + i); }

  std::vector<std::size_t> degree_bounds() const {
    std::vector<std::size_t> bounds(num_vars(), 2);
    for (unsigned j = 0; j < m_; ++j) bounds[j] = clause_len_ + 1;
    return bounds;
  }

  Fp literal(const Fp& a) const { return polarity_ == Polarity::Negated ? a : field_.one() - a; }

  /// C~_i(z, x) for 0-based position i: sum over real clauses c of eq(z, c) eq(x, v(c, i)).
  Fp indicator(std::size_t position, std::span<const Fp> z, std::span<const Fp> x) const {
    if (position >= clause_len_) throw std::out_of_range("clause position out of range");
    if (z.size() != m_ || x.size() != m_) throw std::invalid_argument("indicator: dimension mismatch");
    auto ez = eq_table(z, field_);
    auto ex = eq_table(x, field_);
    Fp acc = field_.zero();
    for (std::size_t c = 0; c < num_clauses_; ++c) acc += ez[c] * ex[variable_code(c, position)];
    return acc;
  }

  /// h at a full point given the assignment values A~(x^i) (one per position).
  Fp evaluate_with(std::span<const Fp> point, std::span<const Fp> assignment_values) const {
    check_point(point);
    if (assignment_values.size() != clause_len_) throw std::invalid_argument("need one assignment value per position");
    auto z = point.subspan(0, m_);
    Fp acc = weight_mle(weights_, z, field_);
    for (std::size_t i = 0; i < clause_len_; ++i) {
      acc *= indicator(i, z, x_part(point, i)) * literal(assignment_values[i]);
    }
    return acc;
  }

  Fp evaluate(std::span<const Fp> point, const AssignmentOracle& oracle) const {
    check_point(point);
    std::vector<Fp> values;
    for (std::size_t i = 0; i < clause_len_; ++i) values.push_back(oracle(x_part(point, i)));
    return evaluate_with(point, values);
  }

  std::span<const Fp> x_part(std::span<const Fp> point, std::size_t position) const {
    return point.subspan((position + 1) * m_, m_);
  }

  SummandSpec spec(AssignmentOracle oracle) const {
    auto self = std::make_shared<ClauseProductSummand>(*this);
    return SummandSpec{field_, degree_bounds(),
                       [self, oracle = std::move(oracle)](std::span<const Fp> p) { return self->evaluate(p, oracle); }};
  }

 private:
  void check_point(std::span<const Fp> point) const {
    if (point.size() != num_vars()) throw std::invalid_argument("summand point has the wrong dimension");
  }

  unsigned m_;
  std::size_t num_clauses_;
  std::size_t clause_len_;
  Polarity polarity_;
  ClauseWeights weights_;
  PrimeField field_;
  std::vector<std::uint32_t> codes_;
};

/// C~_i(z, x) for a formula; position is 1-based as in clause notation.
inline Fp clause_indicator_eval(const WeightedFormula& f, std::size_t position, std::span<const Fp> z,
                                std::span<const Fp> x, const PrimeField& field) {
  const std::size_t len = f.cls() == FormulaClass::G12N ? 2 : std::max<std::size_t>(1, f.longest_clause());
  if (position == 0 || position > len) throw std::out_of_range("clause position out of range");
  ClauseWeights unit{std::vector<Fp>(f.m(), field.one())};
  ClauseProductSummand s(f, len, Polarity::Negated, unit, field);
  return s.indicator(position - 1, z, x);
}

inline ClauseProductSummand w1_summand(const WeightedFormula& f, ClauseWeights weights, const PrimeField& field) {
  if (f.cls() != FormulaClass::G12N) throw std::invalid_argument("W[1] summand needs a g12n formula");
  return ClauseProductSummand(f, 2, Polarity::Negated, std::move(weights), field);
}

inline ClauseProductSummand w2_summand(const WeightedFormula& f, ClauseWeights weights, std::size_t clause_len,
                                       const PrimeField& field) {
  if (f.cls() != FormulaClass::G21P) throw std::invalid_argument("W[2] summand needs a g21p formula");
  return ClauseProductSummand(f, clause_len, Polarity::Positive, std::move(weights), field);
}

/// h(z, x1, x2) = w~(z) C~_1(z, x1) A~(x1) C~_2(z, x2) A~(x2) over 3m variables.
inline SummandSpec build_w1_summand(const WeightedFormula& f, AssignmentOracle oracle, ClauseWeights weights,
                                    const PrimeField& field) {
  return w1_summand(f, std::move(weights), field).spec(std::move(oracle));
}

/// Positive-literal variant over (L+1)m variables with (1 - A~) factors.
inline SummandSpec build_w2_summand(const WeightedFormula& f, AssignmentOracle oracle, ClauseWeights weights,
                                    std::size_t clause_len, const PrimeField& field) {
  return w2_summand(f, std::move(weights), clause_len, field).spec(std::move(oracle));
}

/// h(z) = A~(z) B~(z): counts true variables inside a block.
class WeightSummand {
 public:
  WeightSummand(BooleanTable block, PrimeField field) : block_(std::move(block)), field_(field) {}

  unsigned m() const { return block_.arity(); }
  const BooleanTable& block() const { return block_; }
  const PrimeField& field() const { return field_; }
  std::vector<std::size_t> degree_bounds() const { return std::vector<std::size_t>(m(), 2); }

  Fp evaluate_with(std::span<const Fp> z, const Fp& assignment_value) const {
    return assignment_value * mle_eval(block_, z, field_);
  }

  SummandSpec spec(AssignmentOracle oracle) const {
    auto self = std::make_shared<WeightSummand>(*this);
    return SummandSpec{field_, degree_bounds(),
                       [self, oracle = std::move(oracle)](std::span<const Fp> z) {
                         return self->evaluate_with(z, oracle(z));
                       }};
  }

 private:
  BooleanTable block_;
  PrimeField field_;
};

/// Weight summand; without a block the block factor is identically 1.
inline SummandSpec build_weight_summand(AssignmentOracle oracle, unsigned m, const std::optional<BooleanTable>& block,
                                        const PrimeField& field) {
  if (block && block->arity() != m) throw std::invalid_argument("block table arity must equal m");
  BooleanTable all(m);
  for (std::size_t i = 0; i < all.size(); ++i) all.set(i, true);
  return WeightSummand(block ? *block : all, field).spec(std::move(oracle));
}

}  // namespace ppcp
