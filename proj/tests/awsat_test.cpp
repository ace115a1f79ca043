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

#include "ppcp/awsat.hpp"

#include "gtest/gtest.h"
#include "ppcp/reductions.hpp"

namespace ppcp {
namespace {

WeightedFormula g12n(std::size_t n, std::vector<Clause> clauses, std::uint64_t k) {
  return WeightedFormula(FormulaClass::G12N, n, std::move(clauses), k);
}

AwsatInstance three_block(std::uint64_t k3) {
  return AwsatInstance{g12n(4, {{-2, -4}}, 2 + k3), {{1}, {2, 3}, {4}}, {1, 1, k3}};
}

TEST(EnumerateUniversal, Examples) {
  AwsatInstance single{g12n(3, {}, 1), {{1, 2, 3}}, {1}};
  auto one = enumerate_universal(single);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_TRUE(one.front().choices.empty());
  EXPECT_EQ(one.front().key(), "");

  AwsatInstance k1{g12n(4, {}, 1), {{1}, {2, 3, 4}, {}}, {0, 1, 0}};
  auto three = enumerate_universal(k1);
  ASSERT_EQ(three.size(), 3u);
  EXPECT_EQ(three[0].choices[0], (std::vector<std::uint32_t>{2}));
  EXPECT_EQ(three[2].choices[0], (std::vector<std::uint32_t>{4}));

  AwsatInstance k2{g12n(4, {}, 2), {{1}, {2, 3, 4}, {}}, {0, 2, 0}};
  auto pairs = enumerate_universal(k2);
  ASSERT_EQ(pairs.size(), 3u);
  EXPECT_EQ(pairs[1].key(), "2:{2,4}");
  EXPECT_EQ(universal_branch_count(k2), 3u);
}

TEST(EnumerateUniversal, PrefixKeysAndGuards) {
  UniversalBranch b{{{3, 5}, {}}};
  EXPECT_EQ(b.prefix_key(1), "");
  EXPECT_EQ(b.prefix_key(3), "2:{3,5}");
  EXPECT_EQ(b.key(), "2:{3,5}|4:{}");

  AwsatInstance infeasible{g12n(3, {}, 2), {{1}, {2}, {3}}, {0, 2, 0}};
  EXPECT_THROW(enumerate_universal(infeasible), std::invalid_argument);

  std::vector<std::uint32_t> wide(40);
  for (std::uint32_t i = 0; i < 40; ++i) wide[i] = i + 2;
  AwsatInstance huge{g12n(41, {}, 6), {{1}, wide, {}}, {0, 6, 0}};
  EXPECT_THROW(enumerate_universal(huge), std::length_error);
}

TEST(VerifyAwsat, ThreeBlockExampleMatchesBruteForce) {
  for (std::uint64_t k3 : {0u, 1u}) {
    auto inst = three_block(k3);
    const bool truth = brute_force_awsat(inst);
    EXPECT_EQ(truth, k3 == 0);
    auto tables = honest_awsat_tables(inst);
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
      RandomTape tape(seed);
      auto result = verify_awsat(inst, tables, honest_factory(), tape);
      ASSERT_EQ(result.verdict.accepted, truth) << seed;
      EXPECT_EQ(result.branches, 2u);
      if (!truth) {
        // The branch choosing x2 forces the clause false.
        EXPECT_EQ(result.rejected_branch, 0u);
        EXPECT_EQ(result.verdict.rejection_stage, "b0/main");
      }
    }
  }
}

TEST(VerifyAwsat, UnsatSubstitutionAndMissingTablesReject) {
  AwsatInstance clash{g12n(4, {{-2, -3}}, 2), {{1}, {2, 3}, {4}}, {0, 2, 0}};
  auto tables = honest_awsat_tables(clash);
  RandomTape tape(1);
  auto r = verify_awsat(clash, tables, honest_factory(), tape);
  EXPECT_FALSE(r.verdict.accepted);
  EXPECT_EQ(r.verdict.rejection_stage, "simplify");
  EXPECT_EQ(r.verdict.rejection_round, 0u);

  auto inst = three_block(0);
  BranchProofTables empty;
  RandomTape tape2(1);
  auto missing = verify_awsat(inst, empty, honest_factory(), tape2);
  EXPECT_FALSE(missing.verdict.accepted);
  EXPECT_EQ(missing.verdict.rejection_stage, "b0/tables");

  AwsatInstance even{g12n(2, {}, 0), {{1}, {2}}, {0, 0}};
  RandomTape tape3(1);
  EXPECT_THROW(verify_awsat(even, tables, honest_factory(), tape3), std::invalid_argument);
}

TEST(VerifyAwsat, PrefixConsistencyUnderFaultInjection) {
  AwsatInstance inst{g12n(5, {}, 2), {{1, 2}, {3, 4}, {5}}, {1, 1, 0}};
  auto tables = honest_awsat_tables(inst);
  auto branches = enumerate_universal(inst);
  ASSERT_EQ(branches.size(), 2u);
  std::vector<BooleanTable> before;
  for (const auto& b : branches) before.push_back(*branch_assignment(inst, tables, b));

  // Block 1's table has the empty prefix: flipping it reaches every branch.
  BooleanTable* shared = tables.find_mutable(1, "");
  ASSERT_NE(shared, nullptr);
  shared->set(1, !(*shared)[1]);
  for (std::size_t i = 0; i < branches.size(); ++i) {
    auto after = *branch_assignment(inst, tables, branches[i]);
    EXPECT_NE(after, before[i]);
    EXPECT_EQ(after[1], (*shared)[1]);
  }

  // Block 3's table under prefix "2:{3}" belongs to the first branch only.
  auto tables2 = honest_awsat_tables(inst);
  BooleanTable* own = tables2.find_mutable(3, branches[0].prefix_key(3));
  ASSERT_NE(own, nullptr);
  own->set(4, !(*own)[4]);
  const auto pristine = honest_awsat_tables(inst);
  EXPECT_NE(*branch_assignment(inst, tables2, branches[0]), *branch_assignment(inst, pristine, branches[0]));
  EXPECT_EQ(*branch_assignment(inst, tables2, branches[1]), *branch_assignment(inst, pristine, branches[1]));
  EXPECT_THROW(tables.set(2, "", BooleanTable(3)), std::invalid_argument);
}

TEST(VerifyAwsat, ProofBitsScaleWithBranchCount) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto inst = gen_awsat(6, 3, 3, seed);
    auto branches = enumerate_universal(inst);
    auto tables = honest_awsat_tables(inst);
    auto params = awsat_parameters(inst);
    RandomTape tape(seed);
    auto all = verify_awsat(inst, tables, honest_factory(), tape);
    if (!all.verdict.accepted) continue;
    Verdict single;
    RandomTape tape1(seed);
    verify_awsat_branch(inst, tables, branches[0], 0, honest_factory(), params, tape1, single);
    EXPECT_EQ(all.verdict.meter.proof_bits, branches.size() * single.meter.proof_bits);
    EXPECT_EQ(all.verdict.meter.random_bits - all.verdict.meter.overhead_bits,
              branches.size() * (single.meter.random_bits - single.meter.overhead_bits));
  }
}

TEST(VerifyAwsat, SingleBlockMatchesW1Transcript) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto planted = gen_planted(6, 2, 5, seed);
    std::vector<std::uint32_t> all{1, 2, 3, 4, 5, 6};
    AwsatInstance inst{planted.formula, {all}, {2}};
    BranchProofTables tables;
    tables.set(1, "", assignment_table(planted.formula.m(), planted.witness));
    RandomTape a(seed), b(seed);
    auto awsat = verify_awsat(inst, tables, honest_factory(), a);
    TableCommittedProver prover(assignment_table(planted.formula.m(), planted.witness));
    auto w1 = verify_w1(planted.formula, prover, b);
    ASSERT_TRUE(w1.accepted);
    EXPECT_EQ(awsat.verdict.accepted, w1.accepted);
    EXPECT_EQ(awsat.verdict.meter, w1.meter);
    ASSERT_EQ(awsat.verdict.transcript.size(), w1.transcript.size());
    for (std::size_t i = 0; i < w1.transcript.size(); ++i) {
      auto x = awsat.verdict.transcript[i], y = w1.transcript[i];
      x.stage = y.stage = "";
      EXPECT_EQ(x, y);
    }
  }
}

TEST(PadToOdd, Examples) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    auto inst = gen_awsat(5, 4, 2, seed);
    auto padded = pad_to_odd(inst);
    EXPECT_EQ(padded.l(), 3u);
    EXPECT_TRUE(padded.blocks.back().empty());
    EXPECT_EQ(padded.block_weights.back(), 0u);
    EXPECT_EQ(brute_force_awsat(padded), brute_force_awsat(inst));
    EXPECT_THROW(pad_to_odd(padded), std::invalid_argument);
  }
  AwsatInstance none{g12n(1, {}, 0), {}, {}};
  EXPECT_THROW(pad_to_odd(none), std::invalid_argument);
}

TEST(AwsatSoundness, NoInstanceAcceptanceWithinEpsilon) {
  auto inst = three_block(1);
  for (auto kind : {AdversaryKind::Adaptive, AdversaryKind::Committed, AdversaryKind::Random}) {
    auto r = awsat_soundness_experiment(inst, kind, 200, 5);
    EXPECT_LE(r.acceptance_rate, 0.5) << to_string(kind);
  }
  EXPECT_THROW(awsat_soundness_experiment(three_block(0), AdversaryKind::Adaptive, 10, 0), std::invalid_argument);
}

TEST(AwsatParameters, PerBranchEpsilon) {
  auto inst = three_block(1);
  auto p = awsat_parameters(inst);
  EXPECT_EQ(p.weight_checks, 2u);
  EXPECT_EQ(p.total_rounds, 3u * p.m + 2u * p.m + 5u * p.m);
  // epsilon / 2 branches.
  EXPECT_EQ(p.prime, select_prime(p.total_rounds, 3, Ratio{1, 4}));
}

}  // namespace
}  // namespace ppcp
