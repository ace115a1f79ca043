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

// End-to-end verifiers for weighted satisfiability: multilinearity test,
// random clause weights, the clause-product sum-check, and weight checks,
// with every random and proof bit metered.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ppcp/arithmetize.hpp"
#include "ppcp/field.hpp"
#include "ppcp/formula.hpp"
#include "ppcp/provers.hpp"
#include "ppcp/reductions.hpp"
#include "ppcp/sumcheck.hpp"

namespace ppcp {

struct VerifierConfig {
  /// Target soundness error; the field is sized from it.
  Ratio epsilon{1, 2};
  /// Multilinearity-test repetitions; 5m when unset.
  std::optional<std::size_t> ml_test_reps;
  /// Use this prime instead of the selected one.
  std::optional<std::uint64_t> explicit_prime;
  /// Padded clause length for g21p formulas; the longest clause when unset.
  std::optional<std::size_t> clause_len;

  void validate() const {
    if (epsilon.num == 0 || epsilon.den == 0 || 2 * epsilon.num > epsilon.den) {
      throw std::invalid_argument("epsilon must lie in (0, 1/2]");
    }
    if (ml_test_reps && *ml_test_reps == 0) throw std::invalid_argument("ml_test_reps must be at least 1");
  }
};

/// Everything that fixes the shape (and hence the metered cost) of a run.
struct ProtocolParameters {
  unsigned m = 1;
  std::size_t clause_len = 2;
  std::size_t weight_checks = 1;
  std::size_t ml_reps = 5;
  /// Union-bound terms: all sum-check rounds plus the multilinearity reps.
  std::uint64_t total_rounds = 0;
  std::size_t degree = 3;
  std::uint64_t prime = 2;

  std::size_t main_rounds() const { return (clause_len + 1) * m; }
  std::size_t sumcheck_rounds() const { return main_rounds() + weight_checks * m; }
  double union_bound() const {
    return static_cast<double>(total_rounds) * static_cast<double>(degree) / static_cast<double>(prime);
  }
};

/// `max_weight` bounds any honest weight claim; the prime is kept above it so
/// weight sums cannot wrap around the modulus.
inline ProtocolParameters protocol_parameters(unsigned m, std::size_t clause_len, std::size_t weight_checks,
                                              const VerifierConfig& config, Ratio epsilon,
                                              std::uint64_t max_weight) {
  config.validate();
  ProtocolParameters p;
  p.m = m;
  p.clause_len = clause_len;
  p.weight_checks = weight_checks;
  p.ml_reps = config.ml_test_reps.value_or(5 * std::size_t{m});
  p.degree = std::max<std::size_t>(clause_len + 1, 2);
  p.total_rounds = p.sumcheck_rounds() + p.ml_reps;
  if (config.explicit_prime) {
    p.prime = *config.explicit_prime;
    if (!is_prime(p.prime) || p.prime <= std::max<std::uint64_t>({p.degree, 2, max_weight})) {
      throw std::invalid_argument("explicit prime must be a prime above max(degree, 2, weight bound)");
    }
  } else {
    p.prime = select_prime(p.total_rounds, p.degree, epsilon);
    while (p.prime <= max_weight) p.prime = select_prime(p.prime, 1, Ratio{1, 1});
  }
  return p;
}

inline std::size_t w2_clause_len(const WeightedFormula& f, const VerifierConfig& config) {
  std::size_t len = std::max<std::size_t>(f.longest_clause(), 1);
  if (config.clause_len) {
    if (*config.clause_len < len) throw std::invalid_argument("clause_len below the longest clause");
    len = *config.clause_len;
  }
  return len;
}

inline ProtocolParameters w1_parameters(const WeightedFormula& f, const VerifierConfig& config = {}) {
  return protocol_parameters(f.m(), 2, 1, config, config.epsilon, std::max<std::uint64_t>(f.num_vars(), f.k()));
}

inline ProtocolParameters w2_parameters(const WeightedFormula& f, const VerifierConfig& config = {}) {
  return protocol_parameters(f.m(), w2_clause_len(f, config), 1, config, config.epsilon,
                             std::max<std::uint64_t>(f.num_vars(), f.k()));
}

/// Metered cost of a run that accepts, excluding rejection-sampling overhead.
struct BitCounts {
  std::uint64_t random_bits = 0;
  std::uint64_t proof_bits = 0;
};

inline BitCounts accepted_run_bits(const ProtocolParameters& p) {
  const std::uint64_t b = ceil_log2(p.prime);
  const std::uint64_t m = p.m, reps = p.ml_reps, len = p.clause_len;
  BitCounts c;
  const std::uint64_t field_draws = p.sumcheck_rounds() + reps * (m + 3) + m;
  c.random_bits = field_draws * b + reps * ceil_log2(m);
  const std::uint64_t main_coeffs = m * (len + 2) + len * m * 3;
  const std::uint64_t weight_coeffs = p.weight_checks * m * 3;
  c.proof_bits = (main_coeffs + len + weight_coeffs + p.weight_checks + 3 * reps) * b;
  return c;
}

struct MlTestResult {
  bool accepted = true;
  /// 1-based repetition that failed.
  std::optional<std::size_t> failing_rep;
};

/// Axis-parallel collinearity test. Each repetition picks an axis and a base
/// point, queries three distinct points on that axis line, and rejects unless
/// the third value lies on the line through the first two.
inline MlTestResult multilinearity_test(const AssignmentOracle& oracle, unsigned m, std::size_t reps,
                                        const PrimeField& field, RandomTape& tape, ResourceMeter& meter) {
  if (reps == 0) throw std::invalid_argument("multilinearity_test: reps must be positive");
  if (field.modulus() < 3) throw std::invalid_argument("multilinearity_test: field needs three distinct points");
  const unsigned b = field.element_bits();
  MlTestResult result;
  for (std::size_t rep = 1; rep <= reps; ++rep) {
    const auto axis = static_cast<std::size_t>(tape.index(m, meter));
    std::vector<Fp> y;
    y.reserve(m);
    for (unsigned j = 0; j < m; ++j) y.push_back(tape.element(field, meter));
    std::vector<Fp> t;
    while (t.size() < 3) {
      Fp candidate = tape.element(field, meter);
      if (std::find(t.begin(), t.end(), candidate) != t.end()) {
        meter.overhead_bits += b;
        continue;
      }
      t.push_back(candidate);
    }
    Fp f[3];
    for (int j = 0; j < 3; ++j) {
      y[axis] = t[j];
      f[j] = oracle(y);
      meter.proof_bits += b;
      ++meter.oracle_queries;
    }
    Fp predicted = f[0] + (f[1] - f[0]) * (t[2] - t[0]) / (t[1] - t[0]);
    if (predicted != f[2]) {
      result.accepted = false;
      result.failing_rep = rep;
      return result;
    }
  }
  return result;
}

/// A weight claim sum_z A~(z) B~(z) = k over one block.
struct WeightClaim {
  std::string name;
  BooleanTable block;
  std::uint64_t k;
};

namespace detail {

class StageScope {
 public:
  StageScope(Verdict& v, std::string name) : verdict_(v), name_(std::move(name)), start_(v.meter) {}
  void finish(std::size_t rounds, bool accepted) {
    verdict_.stages.push_back(StageReport{name_, rounds, verdict_.meter - start_, accepted});
  }

 private:
  Verdict& verdict_;
  std::string name_;
  ResourceMeter start_;
};

}  // namespace detail

/// The shared protocol body: multilinearity test, clause weights, the
/// clause-product sum-check with claim 0, then one sum-check per weight claim.
/// Appends to `verdict`; stops at the first rejection.
inline void run_clause_protocol(const WeightedFormula& formula, std::size_t clause_len, Polarity polarity,
                                std::span<const WeightClaim> claims, const ProtocolParameters& params,
                                ProverStrategy& prover, RandomTape& tape, Verdict& verdict) {
  const PrimeField field(params.prime);
  const unsigned m = formula.m();
  const unsigned b = field.element_bits();
  ResourceMeter& meter = verdict.meter;
  auto query = [&](std::span<const Fp> point) {
    meter.proof_bits += b;
    ++meter.oracle_queries;
    return prover.assignment_query(point, field);
  };

  {
    detail::StageScope scope(verdict, "ml-test");
    // Query accounting happens inside the test itself.
    AssignmentOracle oracle = [&](std::span<const Fp> p) { return prover.assignment_query(p, field); };
    auto ml = multilinearity_test(oracle, m, params.ml_reps, field, tape, meter);
    scope.finish(params.ml_reps, ml.accepted);
    if (!ml.accepted) {
      verdict.reject("ml-test", *ml.failing_rep);
      return;
    }
  }

  ClauseWeights weights;
  {
    detail::StageScope scope(verdict, "clause-weights");
    for (unsigned j = 0; j < m; ++j) weights.r.push_back(tape.element(field, meter));
    scope.finish(0, true);
  }

  {
    detail::StageScope scope(verdict, "main");
    ClauseProductSummand summand(formula, clause_len, polarity, weights, field);
    auto spec = SummandSpec{field, summand.degree_bounds(), {}};
    auto rounds = prover.clause_rounds(summand);
    auto sc = run_sumcheck(spec, field.zero(), *rounds, tape, meter, &verdict.transcript, "main");
    if (!sc.accepted) {
      scope.finish(*sc.rejection_round, false);
      verdict.reject("main", *sc.rejection_round);
      return;
    }
    std::vector<Fp> values;
    for (std::size_t i = 0; i < clause_len; ++i) values.push_back(query(summand.x_part(sc.point, i)));
    bool ok = summand.evaluate_with(sc.point, values) == sc.expected;
    scope.finish(summand.num_vars(), ok);
    if (!ok) {
      verdict.reject("main", 0);
      return;
    }
  }

  for (const auto& claim : claims) {
    detail::StageScope scope(verdict, claim.name);
    WeightSummand summand(claim.block, field);
    auto spec = SummandSpec{field, summand.degree_bounds(), {}};
    auto rounds = prover.weight_rounds(summand);
    auto sc = run_sumcheck(spec, field(claim.k), *rounds, tape, meter, &verdict.transcript, claim.name);
    if (!sc.accepted) {
      scope.finish(*sc.rejection_round, false);
      verdict.reject(claim.name, *sc.rejection_round);
      return;
    }
    bool ok = summand.evaluate_with(sc.point, query(sc.point)) == sc.expected;
    scope.finish(m, ok);
    if (!ok) {
      verdict.reject(claim.name, 0);
      return;
    }
  }
}

/// Verifier for WSAT over g12n formulas.
///
/// The weight check runs against the indicator of the real variables, so
/// padding codes cannot contribute weight.
inline Verdict verify_w1(const WeightedFormula& formula, ProverStrategy& prover, RandomTape& tape,
                         const VerifierConfig& config = {}) {
  if (formula.cls() != FormulaClass::G12N) throw std::invalid_argument("verify_w1 needs a g12n formula");
  auto params = w1_parameters(formula, config);
  WeightClaim claim{"weight", real_variable_table(formula), formula.k()};
  Verdict verdict;
  run_clause_protocol(formula, 2, Polarity::Negated, std::span(&claim, 1), params, prover, tape, verdict);
  return verdict;
}

/// Verifier for WSAT over g21p formulas: (L+1)m main rounds with L values of
/// A~ read in the final check.
inline Verdict verify_w2(const WeightedFormula& formula, ProverStrategy& prover, RandomTape& tape,
                         const VerifierConfig& config = {}) {
  if (formula.cls() != FormulaClass::G21P) throw std::invalid_argument("verify_w2 needs a g21p formula");
  auto params = w2_parameters(formula, config);
  WeightClaim claim{"weight", real_variable_table(formula), formula.k()};
  Verdict verdict;
  run_clause_protocol(formula, params.clause_len, Polarity::Positive, std::span(&claim, 1), params, prover, tape,
                      verdict);
  return verdict;
}

inline Verdict verify_wsat(const WeightedFormula& formula, ProverStrategy& prover, RandomTape& tape,
                           const VerifierConfig& config = {}) {
  return formula.cls() == FormulaClass::G12N ? verify_w1(formula, prover, tape, config)
                                             : verify_w2(formula, prover, tape, config);
}

inline ProtocolParameters wsat_parameters(const WeightedFormula& f, const VerifierConfig& config = {}) {
  return f.cls() == FormulaClass::G12N ? w1_parameters(f, config) : w2_parameters(f, config);
}

/// Table of the formula's witness when one exists, otherwise of the
/// closest weight-k assignment.
inline BooleanTable honest_table(const WeightedFormula& f) {
  auto solved = brute_force_wsat(f);
  return assignment_table(f.m(), solved.witness ? *solved.witness : closest_assignment(f));
}

// ---------------------------------------------------------------------------
// Resource scaling

struct ResourceRow {
  unsigned m = 0;
  std::uint64_t prime = 0;
  std::uint64_t random_bits = 0;
  std::uint64_t overhead_bits = 0;
  std::uint64_t proof_bits = 0;
  BitCounts closed_form;
  bool accepted = false;
  double random_norm = 0;
  double proof_norm = 0;
};

inline double m_log_m(unsigned m) { return std::max(1.0, m * std::log2(static_cast<double>(m))); }

/// Honest planted instance with exactly 2^m variables for a given m.
inline PlantedInstance scaling_instance(unsigned m, std::uint64_t seed) {
  const std::size_t n = std::size_t{1} << m;
  const std::uint64_t k = std::min<std::uint64_t>(4, n / 2);
  const std::size_t legal = n * (n - 1) / 2 - k * (k - 1) / 2;
  return gen_planted(n, k, std::min(n, legal), seed);
}

/// Runs the W[1] verifier with honest provers on planted instances for each
/// m in [m_min, m_max] and reports the metered cost.
inline std::vector<ResourceRow> resource_report(unsigned m_min, unsigned m_max, std::size_t per_m,
                                                const VerifierConfig& config, std::uint64_t seed) {
  if (m_min < 1 || m_max > 10 || m_min > m_max) throw std::invalid_argument("m range must lie within [1, 10]");
  std::vector<ResourceRow> rows;
  for (unsigned m = m_min; m <= m_max; ++m) {
    for (std::size_t i = 0; i < per_m; ++i) {
      auto inst_seed = derive_seed(derive_seed(seed, m), i);
      auto planted = scaling_instance(m, inst_seed);
      TableCommittedProver prover(assignment_table(planted.formula.m(), planted.witness));
      RandomTape tape(derive_seed(inst_seed, 1));
      auto verdict = verify_w1(planted.formula, prover, tape, config);
      auto params = w1_parameters(planted.formula, config);
      ResourceRow row;
      row.m = m;
      row.prime = params.prime;
      row.random_bits = verdict.meter.random_bits;
      row.overhead_bits = verdict.meter.overhead_bits;
      row.proof_bits = verdict.meter.proof_bits;
      row.closed_form = accepted_run_bits(params);
      row.accepted = verdict.accepted;
      row.random_norm = static_cast<double>(row.random_bits) / m_log_m(m);
      row.proof_norm = static_cast<double>(row.proof_bits) / m_log_m(m);
      rows.push_back(row);
    }
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Soundness experiments

enum class AdversaryKind { Adaptive, Committed, Random };

inline std::string to_string(AdversaryKind k) {
  switch (k) {
    case AdversaryKind::Adaptive: return "adaptive";
    case AdversaryKind::Committed: return "committed";
    case AdversaryKind::Random: return "random";
  }
  return "?";
}

struct ExperimentResult {
  std::size_t trials = 0;
  std::size_t accepted = 0;
  double acceptance_rate = 0;
  double analytic_bound = 0;
  ProtocolParameters params;
};

/// Builds a fresh adversary for one trial. `table` is the committed table
/// for adaptive and committed kinds.
inline std::unique_ptr<ProverStrategy> make_adversary(AdversaryKind kind, const BooleanTable& table,
                                                      std::uint64_t trial_seed) {
  switch (kind) {
    case AdversaryKind::Adaptive: return adaptive_cheater(table_committed_prover(table));
    case AdversaryKind::Committed: return table_committed_prover(table);
    case AdversaryKind::Random: return std::make_unique<RandomProver>(derive_seed(trial_seed, 1));
  }
  throw std::invalid_argument("unknown adversary");
}

/// Runs `trials` independent verifications of a no-instance. Trial t uses
/// tape seed derive_seed(base_seed, t). The reported bound is
/// (total rounds) * degree / p.
inline ExperimentResult soundness_experiment(const WeightedFormula& formula, AdversaryKind kind, std::size_t trials,
                                             std::uint64_t base_seed, const VerifierConfig& config = {},
                                             std::optional<BooleanTable> committed = std::nullopt) {
  if (brute_force_wsat(formula).satisfiable) {
    throw std::invalid_argument("soundness_experiment needs a no-instance");
  }
  BooleanTable table = committed ? *committed : assignment_table(formula.m(), closest_assignment(formula));
  if (table.arity() != formula.m()) throw std::invalid_argument("committed table arity must equal m");
  ExperimentResult result;
  result.params = wsat_parameters(formula, config);
  result.trials = trials;
  for (std::size_t t = 0; t < trials; ++t) {
    const auto seed = derive_seed(base_seed, t);
    auto prover = make_adversary(kind, table, seed);
    RandomTape tape(seed);
    result.accepted += verify_wsat(formula, *prover, tape, config).accepted;
  }
  result.acceptance_rate = trials ? static_cast<double>(result.accepted) / static_cast<double>(trials) : 0.0;
  result.analytic_bound = result.params.union_bound();
  return result;
}

}  // namespace ppcp
