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

// Alternating weighted satisfiability: enumerate every universal branch,
// substitute it into the formula, and run the W[1] protocol on what remains
// with one weight check per existential block.

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ppcp/arithmetize.hpp"
#include "ppcp/formula.hpp"
#include "ppcp/pcpverify.hpp"
#include "ppcp/provers.hpp"

namespace ppcp {

inline constexpr std::uint64_t kMaxUniversalBranches = 1'000'000;

/// One exactly-weight choice for every universal (even, 1-based) block.
struct UniversalBranch {
  /// choices[u] is the chosen subset of block 2u + 2 (1-based).
  std::vector<std::vector<std::uint32_t>> choices;

  /// Canonical encoding of the choices in universal blocks before `block`
  /// (1-based), e.g. "2:{3,5}|4:{}".
  std::string prefix_key(std::size_t block) const {
    std::string key;
    for (std::size_t u = 0; u < choices.size() && 2 * u + 2 < block; ++u) {
      if (!key.empty()) key += '|';
      key += std::to_string(2 * u + 2) + ":{";
      for (std::size_t i = 0; i < choices[u].size(); ++i) {
        if (i) key += ',';
        key += std::to_string(choices[u][i]);
      }
      key += '}';
    }
    return key;
  }

  std::string key() const { return prefix_key(SIZE_MAX); }

  friend bool operator==(const UniversalBranch&, const UniversalBranch&) = default;
};

namespace detail {

inline void require_feasible_universals(const AwsatInstance& inst) {
  for (std::size_t i = 1; i < inst.l(); i += 2) {
    if (inst.block_weights[i] > inst.blocks[i].size()) {
      throw std::invalid_argument("universal block " + std::to_string(i + 1) + " has no subset of weight " +
                                  std::to_string(inst.block_weights[i]));
    }
  }
}

}  // namespace detail

/// Number of universal branches, saturating.
inline std::uint64_t universal_branch_count(const AwsatInstance& inst) {
  unsigned __int128 count = 1;
  for (std::size_t i = 1; i < inst.l(); i += 2) {
    count *= binomial(inst.blocks[i].size(), inst.block_weights[i]);
    if (count > UINT64_MAX) return UINT64_MAX;
  }
  return static_cast<std::uint64_t>(count);
}

/// Every combination of exact-weight subsets of the universal blocks, in
/// lexicographic order.
inline std::vector<UniversalBranch> enumerate_universal(const AwsatInstance& inst) {
  inst.validate();
  detail::require_feasible_universals(inst);
  if (universal_branch_count(inst) > kMaxUniversalBranches) {
    throw std::length_error("more than 10^6 universal branches");
  }
  std::vector<UniversalBranch> out{UniversalBranch{}};
  for (std::size_t i = 1; i < inst.l(); i += 2) {
    std::vector<UniversalBranch> next;
    for (const auto& partial : out) {
      for_each_subset(inst.blocks[i], inst.block_weights[i], [&](const std::vector<std::uint32_t>& subset) {
        UniversalBranch extended = partial;
        extended.choices.push_back(subset);
        next.push_back(std::move(extended));
        return true;
      });
    }
    out = std::move(next);
  }
  return out;
}

/// Existential assignments keyed by (block, universal prefix). A block's table
/// can depend only on universal choices made before it, so two branches that
/// share a prefix necessarily see the same table. Only the entries for the
/// block's own variables are read.
class BranchProofTables {
 public:
  void set(std::size_t block, const std::string& prefix, BooleanTable table) {
    if (block % 2 == 0) throw std::invalid_argument("tables exist only for existential (odd) blocks");
    tables_.insert_or_assign({block, prefix}, std::move(table));
  }
  const BooleanTable* find(std::size_t block, const std::string& prefix) const {
    auto it = tables_.find({block, prefix});
    return it == tables_.end() ? nullptr : &it->second;
  }
  BooleanTable* find_mutable(std::size_t block, const std::string& prefix) {
    auto it = tables_.find({block, prefix});
    return it == tables_.end() ? nullptr : &it->second;
  }
  std::size_t size() const { return tables_.size(); }
  const std::map<std::pair<std::size_t, std::string>, BooleanTable>& entries() const { return tables_; }

 private:
  std::map<std::pair<std::size_t, std::string>, BooleanTable> tables_;
};

namespace detail {

inline std::uint64_t subset_mask(const std::vector<std::uint32_t>& vars) {
  std::uint64_t mask = 0;
  for (auto v : vars) mask |= std::uint64_t{1} << (v - 1);
  return mask;
}

// Walks the quantifier tree, recording for every existential block and
// universal prefix the first subset that keeps the game winnable (or the
// first subset at all when none does).
inline void walk_strategy(const AwsatInstance& inst, std::size_t block, std::uint64_t mask, UniversalBranch& prefix,
                          BranchProofTables& tables) {
  if (block == inst.l()) return;
  const auto& vars = inst.blocks[block];
  const auto weight = inst.block_weights[block];
  if (block % 2 == 1) {
    for_each_subset(vars, weight, [&](const std::vector<std::uint32_t>& subset) {
      prefix.choices.push_back(subset);
      walk_strategy(inst, block + 1, mask | subset_mask(subset), prefix, tables);
      prefix.choices.pop_back();
      return true;
    });
    return;
  }
  std::optional<std::vector<std::uint32_t>> chosen;
  for_each_subset(vars, weight, [&](const std::vector<std::uint32_t>& subset) {
    if (!chosen) chosen = subset;
    if (awsat_value(inst, block + 1, mask | subset_mask(subset))) {
      chosen = subset;
      return false;
    }
    return true;
  });
  BooleanTable table(inst.formula.m());
  // With no subset of the right weight, fall back to the whole block.
  const auto& picked = chosen ? *chosen : vars;
  for (auto v : picked) table.set(v - 1, true);
  tables.set(block + 1, prefix.prefix_key(block + 1), table);
  walk_strategy(inst, block + 1, mask | subset_mask(picked), prefix, tables);
}

}  // namespace detail

/// Tables following a winning existential strategy when one exists; on
/// no-instances, the first subset at each losing position.
inline BranchProofTables honest_awsat_tables(const AwsatInstance& inst) {
  inst.validate();
  if (inst.formula.num_vars() > 64) throw std::length_error("honest_awsat_tables: more than 64 variables");
  if (awsat_tree_size(inst) > kMaxAwsatBranches) throw std::length_error("honest_awsat_tables: tree too large");
  BranchProofTables tables;
  UniversalBranch prefix;
  detail::walk_strategy(inst, 0, 0, prefix, tables);
  return tables;
}

/// The assignment a branch sees: each existential block's variables read from
/// its prefix-keyed table; universal variables are left false. Returns
/// nullopt when a table is missing.
inline std::optional<BooleanTable> branch_assignment(const AwsatInstance& inst, const BranchProofTables& tables,
                                                     const UniversalBranch& branch) {
  BooleanTable combined(inst.formula.m());
  for (std::size_t i = 0; i < inst.l(); i += 2) {
    const BooleanTable* table = tables.find(i + 1, branch.prefix_key(i + 1));
    if (!table || table->arity() != combined.arity()) return std::nullopt;
    for (auto v : inst.blocks[i]) combined.set(v - 1, (*table)[v - 1]);
  }
  return combined;
}

/// Substitutes a branch: chosen universal variables true, the rest of every
/// universal block false.
inline std::map<std::uint32_t, bool> branch_substitution(const AwsatInstance& inst, const UniversalBranch& branch) {
  std::map<std::uint32_t, bool> partial;
  for (std::size_t u = 0; u < branch.choices.size(); ++u) {
    for (auto v : inst.blocks[2 * u + 1]) partial[v] = false;
    for (auto v : branch.choices[u]) partial[v] = true;
  }
  return partial;
}

using ProverFactory = std::function<std::unique_ptr<ProverStrategy>(const BooleanTable& branch_table,
                                                                    std::size_t branch_index)>;

inline ProverFactory honest_factory() {
  return [](const BooleanTable& table, std::size_t) { return table_committed_prover(table); };
}

/// Parameters of each branch run. The per-branch soundness target is
/// epsilon / (branch count) so the conjunction stays within epsilon.
inline ProtocolParameters awsat_parameters(const AwsatInstance& inst, const VerifierConfig& config = {}) {
  const std::uint64_t branches = std::max<std::uint64_t>(universal_branch_count(inst), 1);
  std::uint64_t max_weight = inst.formula.num_vars();
  for (auto k : inst.block_weights) max_weight = std::max(max_weight, k);
  Ratio per_branch{config.epsilon.num, config.epsilon.den * branches};
  return protocol_parameters(inst.formula.m(), 2, (inst.l() + 1) / 2, config, per_branch, max_weight);
}

struct AwsatVerdict {
  Verdict verdict;
  std::size_t branches = 0;
  std::size_t branches_checked = 0;
  std::optional<std::size_t> rejected_branch;
  ProtocolParameters params;
};

/// One branch's run, appended to `verdict`. Stage names are prefixed with
/// `label`.
inline void verify_awsat_branch(const AwsatInstance& inst, const BranchProofTables& tables,
                                const UniversalBranch& branch, std::size_t branch_index, const ProverFactory& factory,
                                const ProtocolParameters& params, RandomTape& tape, Verdict& verdict,
                                const std::string& label = "") {
  auto simplified = simplify(inst.formula, branch_substitution(inst, branch));
  if (!simplified) {
    verdict.stages.push_back(StageReport{label + "simplify", 0, {}, false});
    verdict.reject(label + "simplify", 0);
    return;
  }
  auto combined = branch_assignment(inst, tables, branch);
  if (!combined) {
    verdict.stages.push_back(StageReport{label + "tables", 0, {}, false});
    verdict.reject(label + "tables", 0);
    return;
  }
  std::vector<WeightClaim> claims;
  for (std::size_t i = 0; i < inst.l(); i += 2) {
    claims.push_back(WeightClaim{"weight[" + std::to_string(i + 1) + "]", block_table(inst.formula.m(), inst.blocks[i]),
                                 inst.block_weights[i]});
  }
  auto prover = factory(*combined, branch_index);
  Verdict local;
  run_clause_protocol(*simplified, 2, Polarity::Negated, claims, params, *prover, tape, local);
  verdict.meter += local.meter;
  for (auto& s : local.stages) {
    s.name = label + s.name;
    verdict.stages.push_back(std::move(s));
  }
  for (auto& t : local.transcript) {
    t.stage = label + t.stage;
    verdict.transcript.push_back(std::move(t));
  }
  if (!local.accepted) verdict.reject(label + *local.rejection_stage, *local.rejection_round);
}

/// Accepts iff every universal branch accepts. Branches run in enumeration
/// order on one tape and stop at the first rejection.
inline AwsatVerdict verify_awsat(const AwsatInstance& inst, const BranchProofTables& tables,
                                 const ProverFactory& factory, RandomTape& tape, const VerifierConfig& config = {}) {
  if (inst.l() % 2 == 0) throw std::invalid_argument("verify_awsat needs an odd number of blocks");
  auto branches = enumerate_universal(inst);
  AwsatVerdict out;
  out.params = awsat_parameters(inst, config);
  out.branches = branches.size();
  for (std::size_t i = 0; i < branches.size(); ++i) {
    std::string label = branches.size() == 1 ? "" : "b" + std::to_string(i) + "/";
    verify_awsat_branch(inst, tables, branches[i], i, factory, out.params, tape, out.verdict, label);
    ++out.branches_checked;
    if (!out.verdict.accepted) {
      out.rejected_branch = i;
      break;
    }
  }
  return out;
}

/// Appends an empty existential block of weight 0 to an even-length instance.
inline AwsatInstance pad_to_odd(const AwsatInstance& inst) {
  if (inst.l() == 0) throw std::invalid_argument("instance has no blocks");
  if (inst.l() % 2 == 1) throw std::invalid_argument("instance already has an odd number of blocks");
  AwsatInstance padded = inst;
  padded.blocks.emplace_back();
  padded.block_weights.push_back(0);
  padded.validate();
  return padded;
}

/// Soundness experiment over a no-instance: the adversary sees the
/// best-effort strategy tables for every branch.
inline ExperimentResult awsat_soundness_experiment(const AwsatInstance& inst, AdversaryKind kind, std::size_t trials,
                                                   std::uint64_t base_seed, const VerifierConfig& config = {}) {
  if (brute_force_awsat(inst)) throw std::invalid_argument("awsat_soundness_experiment needs a no-instance");
  auto tables = honest_awsat_tables(inst);
  ExperimentResult result;
  result.params = awsat_parameters(inst, config);
  result.trials = trials;
  for (std::size_t t = 0; t < trials; ++t) {
    const auto seed = derive_seed(base_seed, t);
    ProverFactory factory = [kind, seed](const BooleanTable& table, std::size_t branch) {
      return make_adversary(kind, table, derive_seed(seed, branch + 2));
    };
    RandomTape tape(seed);
    result.accepted += verify_awsat(inst, tables, factory, tape, config).verdict.accepted;
  }
  result.acceptance_rate = trials ? static_cast<double>(result.accepted) / static_cast<double>(trials) : 0.0;
  result.analytic_bound =
      result.params.union_bound() * static_cast<double>(std::max<std::uint64_t>(universal_branch_count(inst), 1));
  return result;
}

}  // namespace ppcp
