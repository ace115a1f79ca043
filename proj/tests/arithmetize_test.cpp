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

#include "ppcp/arithmetize.hpp"

#include <random>

#include "gtest/gtest.h"
#include "oracles.hpp"
#include "ppcp/reductions.hpp"
#include "ppcp/sumcheck.hpp"

namespace ppcp {
namespace {

std::vector<Fp> random_point(std::size_t q, const PrimeField& field, std::mt19937_64& rng) {
  std::vector<Fp> point;
  for (std::size_t i = 0; i < q; ++i) point.push_back(field(rng()));
  return point;
}

BooleanTable random_table(unsigned q, std::mt19937_64& rng) {
  BooleanTable t(q);
  for (std::size_t i = 0; i < t.size(); ++i) t.set(i, rng() & 1);
  return t;
}

std::vector<Fp> boolean_point(std::uint64_t code, std::size_t q, const PrimeField& field) {
  std::vector<Fp> point;
  for (std::size_t i = 0; i < q; ++i) point.push_back(field((code >> (q - 1 - i)) & 1));
  return point;
}

ClauseWeights random_weights(unsigned m, const PrimeField& field, std::mt19937_64& rng) {
  return ClauseWeights{random_point(m, field, rng)};
}

WeightedFormula g12n(std::size_t n, std::vector<Clause> clauses, std::uint64_t k) {
  return WeightedFormula(FormulaClass::G12N, n, std::move(clauses), k);
}

WeightedFormula g21p(std::size_t n, std::vector<Clause> clauses, std::uint64_t k) {
  return WeightedFormula(FormulaClass::G21P, n, std::move(clauses), k);
}

TEST(MleEval, Examples) {
  PrimeField z5(5);
  BooleanTable t(1);
  t.set(0, true);
  EXPECT_EQ(mle_eval(t, std::vector<Fp>{z5(2)}, z5), z5(4));

  BooleanTable ones(3);
  for (std::size_t i = 0; i < ones.size(); ++i) ones.set(i, true);
  std::mt19937_64 rng(1);
  PrimeField f(3001);
  for (int i = 0; i < 20; ++i) EXPECT_EQ(mle_eval(ones, random_point(3, f, rng), f), f.one());

  EXPECT_THROW(mle_eval(ones, std::vector<Fp>{f(1)}, f), std::invalid_argument);
}

TEST(MleEval, AgreesWithTableOnBooleanPoints) {
  std::mt19937_64 rng(2);
  PrimeField f(109);
  for (unsigned q = 1; q <= 6; ++q) {
    auto t = random_table(q, rng);
    for (std::uint64_t b = 0; b < t.size(); ++b) {
      EXPECT_EQ(mle_eval(t, boolean_point(b, q, f), f), t[b] ? f.one() : f.zero());
    }
  }
}

TEST(MleEval, MatchesExplicitInterpolationSum) {
  std::mt19937_64 rng(3);
  for (std::uint64_t p : {5ULL, 109ULL, 1000000007ULL}) {
    PrimeField f(p);
    for (unsigned q = 1; q <= 6; ++q) {
      for (int trial = 0; trial < 10; ++trial) {
        auto t = random_table(q, rng);
        std::vector<int> raw(t.size());
        for (std::size_t i = 0; i < t.size(); ++i) raw[i] = t[i];
        auto point = random_point(q, f, rng);
        std::vector<std::uint64_t> coords;
        for (auto& x : point) coords.push_back(x.value());
        EXPECT_EQ(mle_eval(t, point, f).value(), oracle::naive_mle(raw, coords, p));
      }
    }
  }
}

// Three values along any axis line are collinear.
bool collinear_along_axis(const BooleanTable& t, std::vector<Fp> point, std::size_t axis, const Fp& a,
                          const Fp& b, const Fp& c, const PrimeField& f) {
  point[axis] = a;
  auto fa = mle_eval(t, point, f);
  point[axis] = b;
  auto fb = mle_eval(t, point, f);
  point[axis] = c;
  auto fc = mle_eval(t, point, f);
  return fa + (fb - fa) * (c - a) / (b - a) == fc;
}

TEST(MleEval, MultilinearExhaustiveSmallArity) {
  PrimeField f(5);
  for (unsigned q = 1; q <= 3; ++q) {
    for (std::uint32_t bits = 0; bits < (1u << (1u << q)); ++bits) {
      BooleanTable t(q);
      for (std::size_t i = 0; i < t.size(); ++i) t.set(i, (bits >> i) & 1);
      // Every point of F_5^q, every axis, one fixed triple of distinct points.
      std::uint64_t points = 1;
      for (unsigned i = 0; i < q; ++i) points *= 5;
      for (std::uint64_t code = 0; code < points; ++code) {
        std::vector<Fp> point;
        for (std::uint64_t c = code, i = 0; i < q; ++i, c /= 5) point.push_back(f(c % 5));
        for (std::size_t axis = 0; axis < q; ++axis) {
          ASSERT_TRUE(collinear_along_axis(t, point, axis, f(0), f(2), f(4), f));
        }
      }
    }
  }
}

TEST(MleEval, MultilinearRandomized) {
  std::mt19937_64 rng(4);
  PrimeField f(1000003);
  for (unsigned q = 1; q <= 8; ++q) {
    for (int trial = 0; trial < 20; ++trial) {
      auto t = random_table(q, rng);
      auto point = random_point(q, f, rng);
      auto a = f(rng()), b = a + f(1 + rng() % 1000), c = b + f(1 + rng() % 1000);
      ASSERT_TRUE(collinear_along_axis(t, point, rng() % q, a, b, c, f));
    }
  }
}

TEST(MleEval, EqualTablesHaveEqualExtensions) {
  std::mt19937_64 rng(5);
  PrimeField f(3001);
  for (unsigned q = 1; q <= 6; ++q) {
    auto t = random_table(q, rng);
    BooleanTable copy(q);
    for (std::size_t i = 0; i < t.size(); ++i) copy.set(i, t[i]);
    for (int i = 0; i < 100; ++i) {
      auto point = random_point(q, f, rng);
      ASSERT_EQ(mle_eval(t, point, f), mle_eval(copy, point, f));
    }
  }
}

TEST(ClauseIndicator, BooleanIndicatorProperty) {
  PrimeField f(109);
  auto phi = g12n(4, {{-1, -2}, {-3, -4}, {-2, -2}}, 1);
  const unsigned m = phi.m();
  for (std::uint64_t z = 0; z < (1u << m); ++z) {
    for (std::uint64_t x = 0; x < (1u << m); ++x) {
      for (std::size_t pos = 1; pos <= 2; ++pos) {
        bool expected = z < phi.num_clauses() &&
                        static_cast<std::uint64_t>(-phi.clauses()[z][pos - 1]) - 1 == x;
        EXPECT_EQ(clause_indicator_eval(phi, pos, boolean_point(z, m, f), boolean_point(x, m, f), f),
                  expected ? f.one() : f.zero());
      }
    }
  }
  EXPECT_THROW(clause_indicator_eval(phi, 3, boolean_point(0, m, f), boolean_point(0, m, f), f), std::out_of_range);
  EXPECT_THROW(clause_indicator_eval(phi, 0, boolean_point(0, m, f), boolean_point(0, m, f), f), std::out_of_range);
}

TEST(ClauseIndicator, VariableWithCode101) {
  // Variable 6 has code 101; at the boolean clause index its x-factor is
  // v1 (1 - v2) v3.
  PrimeField f(3001);
  auto phi = g12n(6, {{-6, -1}}, 1);
  ASSERT_EQ(phi.m(), 3u);
  std::mt19937_64 rng(6);
  auto z = boolean_point(0, 3, f);
  for (int i = 0; i < 50; ++i) {
    auto v = random_point(3, f, rng);
    EXPECT_EQ(clause_indicator_eval(phi, 1, z, v, f), v[0] * (f.one() - v[1]) * v[2]);
  }
}

TEST(W1Summand, BooleanPointWithBothVariablesTrue) {
  PrimeField f(109);
  std::mt19937_64 rng(7);
  auto phi = g12n(3, {{-1, -2}, {-1, -3}}, 1);
  auto weights = random_weights(phi.m(), f, rng);
  auto spec = build_w1_summand(phi, table_oracle(assignment_table(2, Assignment{{1, 3}}), f), weights, f);
  // z = clause 1, x^1 = code of x1, x^2 = code of x3: both true, so h = w(01) = r_2.
  std::vector<Fp> point;
  for (auto& p : {boolean_point(1, 2, f), boolean_point(0, 2, f), boolean_point(2, 2, f)}) {
    point.insert(point.end(), p.begin(), p.end());
  }
  EXPECT_EQ(spec.evaluate(point), weights.r[1]);
  EXPECT_EQ(spec.num_vars(), 6u);
  EXPECT_EQ(spec.degree_bounds, (std::vector<std::size_t>{3, 3, 2, 2, 2, 2}));
  EXPECT_THROW(build_w1_summand(g21p(2, {{1}}, 1), table_oracle(BooleanTable(1), f), ClauseWeights{{f(1)}}, f),
               std::invalid_argument);
}

TEST(W1Summand, CubeSumExamples) {
  PrimeField f(109);
  auto phi = g12n(2, {{-1, -2}}, 1);
  std::mt19937_64 rng(42);
  auto weights = random_weights(phi.m(), f, rng);
  auto honest = build_w1_summand(phi, table_oracle(assignment_table(1, Assignment{{1}}), f), weights, f);
  EXPECT_EQ(cube_sum(honest), f.zero());
  auto both = build_w1_summand(phi, table_oracle(assignment_table(1, Assignment{{1, 2}}), f), weights, f);
  // Clause 0 has code 0, whose weight is the empty product.
  EXPECT_EQ(cube_sum(both), f.one());
  EXPECT_EQ(cube_sum(both).value(), oracle::weighted_unsat_total(phi, {1, 2}, {weights.r[0].value()}, 109));
}

TEST(W1Summand, CubeSumMatchesWeightedUnsatOracle) {
  PrimeField f(109);
  std::mt19937_64 rng(8);
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    auto phi = gen_random(2 + seed % 3, 1 + seed % 4, 0, seed, FormulaClass::G12N).formula;
    auto a = random_table(phi.m(), rng);
    for (std::size_t i = phi.num_vars(); i < a.size(); ++i) a.set(i, false);
    std::set<std::uint32_t> true_set;
    for (std::size_t i = 0; i < phi.num_vars(); ++i) {
      if (a[i]) true_set.insert(static_cast<std::uint32_t>(i + 1));
    }
    auto weights = random_weights(phi.m(), f, rng);
    std::vector<std::uint64_t> r;
    for (auto& x : weights.r) r.push_back(x.value());
    auto spec = build_w1_summand(phi, table_oracle(a, f), weights, f);
    EXPECT_EQ(cube_sum(spec).value(), oracle::weighted_unsat_total(phi, true_set, r, 109));
  }
}

TEST(W1Summand, ClauseUnsatisfactionIffExhaustive) {
  // All g12n formulas over at most 3 variables built from the 6 distinct
  // negated pairs, under every boolean assignment.
  PrimeField f(109);
  std::vector<Clause> pool{{-1, -1}, {-1, -2}, {-1, -3}, {-2, -2}, {-2, -3}, {-3, -3}};
  for (std::size_t n = 1; n <= 3; ++n) {
    std::vector<Clause> usable;
    for (const auto& c : pool) {
      if (static_cast<std::size_t>(-c[1]) <= n) usable.push_back(c);
    }
    for (std::uint32_t pick = 1; pick < (1u << usable.size()); ++pick) {
      std::vector<Clause> clauses;
      for (std::size_t i = 0; i < usable.size(); ++i) {
        if ((pick >> i) & 1) clauses.push_back(usable[i]);
      }
      auto phi = g12n(n, clauses, 0);
      const unsigned m = phi.m();
      ClauseProductSummand s = w1_summand(phi, ClauseWeights{std::vector<Fp>(m, f.one())}, f);
      for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        Assignment a;
        for (std::uint32_t v = 1; v <= n; ++v) {
          if ((mask >> (v - 1)) & 1) a.true_set.insert(v);
        }
        auto oracle = table_oracle(assignment_table(m, a), f);
        for (std::size_t c = 0; c < phi.num_clauses(); ++c) {
          Fp sum = f.zero();
          for (std::uint64_t xs = 0; xs < (std::uint64_t{1} << (2 * m)); ++xs) {
            auto point = boolean_point(c, m, f);
            auto xpart = boolean_point(xs, 2 * m, f);
            point.insert(point.end(), xpart.begin(), xpart.end());
            sum += s.evaluate(point, oracle);
          }
          ASSERT_EQ(sum == f.zero(), eval_clause(phi, c, a));
        }
      }
    }
  }
}

TEST(W1Summand, RandomWeightSeparation) {
  // Three unsatisfied clauses make the weighted total a nonzero polynomial of
  // degree <= m in r; its zero probability over random r is at most m/p.
  PrimeField f(13);
  auto phi = g12n(4, {{-1, -2}, {-1, -3}, {-2, -3}, {-3, -4}}, 3);
  const std::set<std::uint32_t> bad{1, 2, 3};
  std::size_t zeros = 0;
  const std::size_t trials = 10000;
  for (std::size_t seed = 0; seed < trials; ++seed) {
    RandomTape tape(seed);
    ResourceMeter meter;
    std::vector<std::uint64_t> r;
    for (unsigned j = 0; j < phi.m(); ++j) r.push_back(tape.element(f, meter).value());
    zeros += oracle::weighted_unsat_total(phi, bad, r, 13) == 0;
  }
  EXPECT_LE(static_cast<double>(zeros) / trials, 2.0 * phi.m() / 13.0);
  EXPECT_GT(zeros, 0u);
}

TEST(W2Summand, Examples) {
  PrimeField f(109);
  std::mt19937_64 rng(9);
  auto phi = g21p(2, {{1, 2}}, 1);
  auto weights = random_weights(phi.m(), f, rng);
  auto s = w2_summand(phi, weights, 2, f);
  auto point_for = [&](std::uint64_t z) {
    std::vector<Fp> point;
    for (auto& p : {boolean_point(z, 1, f), boolean_point(0, 1, f), boolean_point(1, 1, f)}) {
      point.insert(point.end(), p.begin(), p.end());
    }
    return point;
  };
  auto all_false = table_oracle(BooleanTable(1), f);
  EXPECT_EQ(s.evaluate(point_for(0), all_false), f.one());
  EXPECT_NE(s.evaluate(point_for(0), all_false), f.zero());

  BooleanTable x1(1);
  x1.set(0, true);
  auto spec = s.spec(table_oracle(x1, f));
  for (std::uint64_t code = 0; code < 8; ++code) EXPECT_EQ(spec.evaluate(boolean_point(code, 3, f)), f.zero());

  EXPECT_EQ(s.degree_bounds(), (std::vector<std::size_t>{3, 2, 2}));
  EXPECT_THROW(w2_summand(phi, weights, 1, f), std::invalid_argument);
  EXPECT_THROW(w2_summand(g12n(2, {{-1, -2}}, 1), weights, 2, f), std::invalid_argument);
}

TEST(W2Summand, PaddingKeepsTheVerdict) {
  PrimeField f(109);
  std::mt19937_64 rng(10);
  auto phi = g21p(2, {{1, 2}}, 1);
  auto weights = random_weights(phi.m(), f, rng);
  for (std::uint32_t mask = 0; mask < 4; ++mask) {
    BooleanTable t(1);
    t.set(0, mask & 1);
    t.set(1, (mask >> 1) & 1);
    auto two = cube_sum(build_w2_summand(phi, table_oracle(t, f), weights, 2, f));
    auto three = cube_sum(build_w2_summand(phi, table_oracle(t, f), weights, 3, f));
    EXPECT_EQ(two == f.zero(), three == f.zero());
    EXPECT_EQ(two == f.zero(), mask != 0);
  }
}

TEST(W2Summand, CubeSumMatchesWeightedUnsatOracle) {
  PrimeField f(109);
  std::mt19937_64 rng(11);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto phi = gen_random(2 + seed % 2, 1 + seed % 3, 0, seed, FormulaClass::G21P, 2).formula;
    auto a = random_table(phi.m(), rng);
    std::set<std::uint32_t> true_set;
    for (std::size_t i = 0; i < phi.num_vars(); ++i) {
      if (a[i]) true_set.insert(static_cast<std::uint32_t>(i + 1));
    }
    auto weights = random_weights(phi.m(), f, rng);
    std::vector<std::uint64_t> r;
    for (auto& x : weights.r) r.push_back(x.value());
    auto spec = build_w2_summand(phi, table_oracle(a, f), weights, 2, f);
    EXPECT_EQ(cube_sum(spec).value(), oracle::weighted_unsat_total(phi, true_set, r, 109));
  }
}

TEST(WeightSummand, Examples) {
  PrimeField f(109);
  auto oracle_of = [&](std::set<std::uint32_t> s) { return table_oracle(assignment_table(2, Assignment{s}), f); };
  EXPECT_EQ(cube_sum(build_weight_summand(oracle_of({1}), 2, std::nullopt, f)), f(1));
  std::vector<std::uint32_t> block{2, 3};
  EXPECT_EQ(cube_sum(build_weight_summand(oracle_of({1, 2, 3}), 2, block_table(2, block), f)), f(2));
  EXPECT_EQ(cube_sum(build_weight_summand(oracle_of({}), 2, std::nullopt, f)), f(0));
  EXPECT_THROW(build_weight_summand(oracle_of({}), 2, BooleanTable(3), f), std::invalid_argument);
}

// Interpolates each univariate restriction through degree+1 points and
// checks a further point lies on it.
void expect_degree_bounds(const SummandSpec& spec, std::mt19937_64& rng) {
  const PrimeField& f = spec.field;
  for (int trial = 0; trial < 5; ++trial) {
    auto point = random_point(spec.num_vars(), f, rng);
    for (std::size_t i = 0; i < spec.num_vars(); ++i) {
      const std::size_t d = spec.degree_bounds[i];
      std::vector<std::pair<Fp, Fp>> pts;
      for (std::size_t t = 0; t <= d; ++t) {
        point[i] = f(t);
        pts.emplace_back(f(t), spec.evaluate(point));
      }
      auto poly = interpolate(pts);
      point[i] = f(rng());
      ASSERT_EQ(poly(point[i]), spec.evaluate(point)) << "variable " << i;
    }
  }
}

TEST(SummandSpec, DegreeBoundsHold) {
  std::mt19937_64 rng(12);
  PrimeField f(1000003);
  auto phi = g12n(5, {{-1, -2}, {-3, -4}, {-5, -5}, {-2, -4}}, 2);
  auto a = random_table(phi.m(), rng);
  expect_degree_bounds(build_w1_summand(phi, table_oracle(a, f), random_weights(phi.m(), f, rng), f), rng);
  auto psi = g21p(4, {{1, 2, 3}, {4}, {2, 4}}, 2);
  auto b = random_table(psi.m(), rng);
  expect_degree_bounds(build_w2_summand(psi, table_oracle(b, f), random_weights(psi.m(), f, rng), 3, f), rng);
  expect_degree_bounds(build_weight_summand(table_oracle(b, f), psi.m(), std::nullopt, f), rng);
}

TEST(ClauseWeights, ProductFormIsTheExtensionOfTheMonomials) {
  PrimeField f(109);
  std::mt19937_64 rng(13);
  auto w = random_weights(3, f, rng);
  for (std::uint64_t z = 0; z < 8; ++z) {
    Fp expected = f.one();
    for (unsigned j = 0; j < 3; ++j) {
      if ((z >> (2 - j)) & 1) expected *= w.r[j];
    }
    EXPECT_EQ(weight_mle(w, boolean_point(z, 3, f), f), expected);
  }
}

}  // namespace
}  // namespace ppcp
