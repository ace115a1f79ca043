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

// Proof strategies: what a proof string answers when the verifier asks for
// an assignment value or a round polynomial.

#include <cstdint>
#include <functional>
#include <memory>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

#include "ppcp/arithmetize.hpp"
#include "ppcp/sumcheck.hpp"

namespace ppcp {

/// A proof: an assignment oracle plus round polynomials for each sum-check
/// the verifier opens.
class ProverStrategy {
 public:
  virtual ~ProverStrategy() = default;
  virtual Fp assignment_query(std::span<const Fp> point, const PrimeField& field) = 0;
  virtual std::unique_ptr<RoundProver> clause_rounds(const ClauseProductSummand& summand) = 0;
  virtual std::unique_ptr<RoundProver> weight_rounds(const WeightSummand& summand) = 0;
};

namespace detail {

/// Round polynomial of sum_i prod_f table_f over the leading variable, where
/// every table_f is multilinear: evaluate at t = 0..degree and interpolate.
inline UniPoly product_round_poly(std::span<const std::vector<Fp>* const> tables, const Fp& scale,
                                  std::size_t degree, const PrimeField& field) {
  const std::size_t half = tables.front()->size() / 2;
  std::vector<Fp> values(degree + 1, field.zero());
  for (std::size_t t = 0; t <= degree; ++t) {
    const Fp x = field(t);
    Fp sum = field.zero();
    for (std::size_t i = 0; i < half; ++i) {
      Fp prod = field.one();
      for (const auto* table : tables) {
        const Fp& lo = (*table)[i];
        prod *= lo + x * ((*table)[i + half] - lo);
      }
      sum += prod;
    }
    values[t] = sum * scale;
  }
  return interpolate_consecutive(values);
}

}  // namespace detail

/// Honest rounds for a clause-product summand whose A~ is the multilinear
/// extension of a committed table.
///
/// Over z the boolean sums over every x^i collapse: h sums to
/// w(z) prod_i lit(A(v(z, i))), a product of L + 1 multilinear tables in z.
/// Once z is fixed to zeta, each x^i block is a product of two multilinear
/// tables, C~_i(zeta, .) and lit(A~), scaled by the already-fixed factors.
/// Each round therefore costs O(2^m L^2) instead of O(2^{(L+1)m}).
class ClauseProductRoundProver : public RoundProver {
 public:
  ClauseProductRoundProver(const ClauseProductSummand& summand, const BooleanTable& table)
      : summand_(summand), field_(summand.field()), m_(summand.m()), len_(summand.clause_len()) {
    if (table.arity() != m_) throw std::invalid_argument("committed table arity must equal m");
    const std::size_t cube = std::size_t{1} << m_;
    literal_.reserve(cube);
    for (std::size_t x = 0; x < cube; ++x) literal_.push_back(summand.literal(table[x] ? field_.one() : field_.zero()));
    weights_.assign(cube, field_.zero());
    for (std::size_t c = 0; c < cube; ++c) {
      Fp w = field_.one();
      for (unsigned j = 0; j < m_; ++j) {
        if ((c >> (m_ - 1 - j)) & 1) w *= summand.weights().r[j];
      }
      weights_[c] = w;
    }
    per_clause_.assign(len_, std::vector<Fp>(cube, field_.zero()));
    for (std::size_t i = 0; i < len_; ++i) {
      for (std::size_t c = 0; c < summand.num_clauses(); ++c) per_clause_[i][c] = literal_[summand.variable_code(c, i)];
    }
  }

  UniPoly round_poly(std::size_t round, std::span<const Fp> challenges, const Fp&) override {
    if (round == 0 || round > summand_.num_vars() || challenges.size() != round - 1 || challenges.size() < consumed_) {
      throw std::logic_error("clause prover: rounds must be requested in order");
    }
    while (consumed_ < challenges.size()) absorb(challenges[consumed_]);
    if (consumed_ < m_) {
      std::vector<const std::vector<Fp>*> tables{&weights_};
      for (const auto& t : per_clause_) tables.push_back(&t);
      return detail::product_round_poly(tables, field_.one(), len_ + 1, field_);
    }
    std::vector<const std::vector<Fp>*> tables{&position_indicator_, &position_literal_};
    Fp scale = fixed_factor_;
    for (std::size_t i = position_ + 1; i < len_; ++i) scale *= collapsed_[i];
    return detail::product_round_poly(tables, scale, 2, field_);
  }

 private:
  void absorb(const Fp& r) {
    if (consumed_ < m_) {
      fold_front(weights_, r);
      for (auto& t : per_clause_) fold_front(t, r);
      zeta_.push_back(r);
      if (++consumed_ == m_) {
        fixed_factor_ = weights_.front();
        for (const auto& t : per_clause_) collapsed_.push_back(t.front());
        start_position(0);
      }
      return;
    }
    fold_front(position_indicator_, r);
    fold_front(position_literal_, r);
    if ((++consumed_ - m_) % m_ == 0) {
      fixed_factor_ *= position_indicator_.front() * position_literal_.front();
      if (position_ + 1 < len_) start_position(position_ + 1);
    }
  }

  void start_position(std::size_t position) {
    position_ = position;
    const std::size_t cube = std::size_t{1} << m_;
    auto eq_zeta = eq_table(zeta_, field_);
    position_indicator_.assign(cube, field_.zero());
    for (std::size_t c = 0; c < summand_.num_clauses(); ++c) {
      position_indicator_[summand_.variable_code(c, position)] += eq_zeta[c];
    }
    position_literal_ = literal_;
  }

  const ClauseProductSummand summand_;
  PrimeField field_;
  unsigned m_;
  std::size_t len_;
  std::vector<Fp> literal_;
  std::vector<Fp> weights_;
  std::vector<std::vector<Fp>> per_clause_;
  std::size_t consumed_ = 0;
  std::vector<Fp> zeta_;
  Fp fixed_factor_;
  std::vector<Fp> collapsed_;
  std::size_t position_ = 0;
  std::vector<Fp> position_indicator_;
  std::vector<Fp> position_literal_;
};

/// Honest rounds for A~ B~ with A~ the extension of a committed table.
class WeightRoundProver : public RoundProver {
 public:
  WeightRoundProver(const WeightSummand& summand, const BooleanTable& table)
      : field_(summand.field()),
        m_(summand.m()),
        assignment_(lift(table, field_)),
        block_(lift(summand.block(), field_)) {
    if (table.arity() != summand.m()) throw std::invalid_argument("committed table arity must equal m");
  }

  UniPoly round_poly(std::size_t round, std::span<const Fp> challenges, const Fp&) override {
    if (round == 0 || round > m_ || challenges.size() != round - 1 || challenges.size() < consumed_) {
      throw std::logic_error("weight prover: rounds must be requested in order");
    }
    while (consumed_ < challenges.size()) {
      fold_front(assignment_, challenges[consumed_]);
      fold_front(block_, challenges[consumed_]);
      ++consumed_;
    }
    const std::vector<Fp>* tables[] = {&assignment_, &block_};
    return detail::product_round_poly(tables, field_.one(), 2, field_);
  }

 private:
  PrimeField field_;
  unsigned m_;
  std::vector<Fp> assignment_;
  std::vector<Fp> block_;
  std::size_t consumed_ = 0;
};

/// A proof that is honest with respect to a fixed boolean table: assignment
/// queries return its exact multilinear extension and every sum-check is
/// answered with the true round polynomials.
class TableCommittedProver : public ProverStrategy {
 public:
  explicit TableCommittedProver(BooleanTable table) : table_(std::move(table)) {}

  const BooleanTable& table() const { return table_; }

  Fp assignment_query(std::span<const Fp> point, const PrimeField& field) override {
    return mle_eval(table_, point, field);
  }
  std::unique_ptr<RoundProver> clause_rounds(const ClauseProductSummand& summand) override {
    return std::make_unique<ClauseProductRoundProver>(summand, table_);
  }
  std::unique_ptr<RoundProver> weight_rounds(const WeightSummand& summand) override {
    return std::make_unique<WeightRoundProver>(summand, table_);
  }

 private:
  BooleanTable table_;
};

/// Honest with respect to an arbitrary assignment function; round
/// polynomials come from brute-force summation. Desk-scale only.
class OracleProver : public ProverStrategy {
 public:
  using Function = std::function<Fp(std::span<const Fp>, const PrimeField&)>;
  explicit OracleProver(Function f) : f_(std::move(f)) {}

  Fp assignment_query(std::span<const Fp> point, const PrimeField& field) override { return f_(point, field); }
  std::unique_ptr<RoundProver> clause_rounds(const ClauseProductSummand& summand) override {
    return std::make_unique<BruteForceRoundProver>(summand.spec(bind(summand.field())));
  }
  std::unique_ptr<RoundProver> weight_rounds(const WeightSummand& summand) override {
    return std::make_unique<BruteForceRoundProver>(summand.spec(bind(summand.field())));
  }

 private:
  AssignmentOracle bind(const PrimeField& field) const {
    return [f = f_, field](std::span<const Fp> p) { return f(p, field); };
  }
  Function f_;
};

/// Wraps a base proof, shifting every sum-check's error forward round by round.
/// Assignment queries are answered by the base.
class AdaptiveCheater : public ProverStrategy {
 public:
  explicit AdaptiveCheater(std::unique_ptr<ProverStrategy> base) : base_(std::move(base)) {}

  Fp assignment_query(std::span<const Fp> point, const PrimeField& field) override {
    return base_->assignment_query(point, field);
  }
  std::unique_ptr<RoundProver> clause_rounds(const ClauseProductSummand& summand) override {
    return std::make_unique<AdaptiveRoundProver>(base_->clause_rounds(summand));
  }
  std::unique_ptr<RoundProver> weight_rounds(const WeightSummand& summand) override {
    return std::make_unique<AdaptiveRoundProver>(base_->weight_rounds(summand));
  }

 private:
  std::unique_ptr<ProverStrategy> base_;
};

inline std::unique_ptr<ProverStrategy> table_committed_prover(BooleanTable table) {
  return std::make_unique<TableCommittedProver>(std::move(table));
}

inline std::unique_ptr<ProverStrategy> adaptive_cheater(std::unique_ptr<ProverStrategy> base) {
  return std::make_unique<AdaptiveCheater>(std::move(base));
}

/// Uniform garbage: random coefficients in every round, random assignment values.
class RandomProver : public ProverStrategy {
 public:
  explicit RandomProver(std::uint64_t seed) : engine_(std::make_shared<std::mt19937_64>(seed)) {}

  Fp assignment_query(std::span<const Fp>, const PrimeField& field) override { return draw(field); }
  std::unique_ptr<RoundProver> clause_rounds(const ClauseProductSummand& summand) override {
    return std::make_unique<Rounds>(summand.degree_bounds(), summand.field(), engine_);
  }
  std::unique_ptr<RoundProver> weight_rounds(const WeightSummand& summand) override {
    return std::make_unique<Rounds>(summand.degree_bounds(), summand.field(), engine_);
  }

 private:
  Fp draw(const PrimeField& field) {
    return field(std::uniform_int_distribution<std::uint64_t>(0, field.modulus() - 1)(*engine_));
  }

  class Rounds : public RoundProver {
   public:
    Rounds(std::vector<std::size_t> bounds, PrimeField field, std::shared_ptr<std::mt19937_64> engine)
        : bounds_(std::move(bounds)), field_(field), engine_(std::move(engine)) {}
    UniPoly round_poly(std::size_t round, std::span<const Fp>, const Fp&) override {
      std::uniform_int_distribution<std::uint64_t> dist(0, field_.modulus() - 1);
      std::vector<Fp> coeffs;
      for (std::size_t i = 0; i <= bounds_.at(round - 1); ++i) coeffs.push_back(field_(dist(*engine_)));
      return UniPoly(std::move(coeffs));
    }

   private:
    std::vector<std::size_t> bounds_;
    PrimeField field_;
    std::shared_ptr<std::mt19937_64> engine_;
  };

  std::shared_ptr<std::mt19937_64> engine_;
};

}  // namespace ppcp
