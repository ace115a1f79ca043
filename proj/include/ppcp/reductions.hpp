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

// Independent Set -> WSAT(g12n) and seeded instance generators.

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ppcp/formula.hpp"

namespace ppcp {

struct Graph {
  std::size_t n = 0;
  std::set<std::pair<std::uint32_t, std::uint32_t>> edges;  // u < v

  void add_edge(std::uint32_t u, std::uint32_t v) {
    if (u == v) throw std::invalid_argument("self-loop on vertex " + std::to_string(u));
    if (u == 0 || v == 0 || u > n || v > n) throw std::out_of_range("edge endpoint out of range");
    edges.emplace(std::min(u, v), std::max(u, v));
  }
};

/// "g <n>" header, then "e <u> <v>" lines; "c" lines are comments.
inline Graph parse_graph(std::string_view text) {
  std::istringstream in{std::string(text)};
  Graph g;
  bool header = false;
  std::size_t lineno = 0;
  for (std::string line; std::getline(in, line);) {
    ++lineno;
    std::istringstream ls(line);
    std::string tag;
    if (!(ls >> tag) || tag[0] == 'c') continue;
    auto fail = [&](const std::string& why) {
      return ParseError(ParseErrorKind::MalformedLine, lineno, why);
    };
    if (tag == "g") {
      long long n = 0;
      std::string extra;
      if (header || !(ls >> n) || n < 1 || (ls >> extra)) throw fail("expected a single 'g <n>' header with n >= 1");
      g.n = static_cast<std::size_t>(n);
      header = true;
    } else if (tag == "e") {
      long long u = 0, v = 0;
      std::string extra;
      if (!header || !(ls >> u >> v) || (ls >> extra)) throw fail("expected 'e <u> <v>' after the header");
      if (u < 1 || v < 1 || u > static_cast<long long>(g.n) || v > static_cast<long long>(g.n) || u == v) {
        throw fail("invalid edge " + std::to_string(u) + " " + std::to_string(v));
      }
      g.add_edge(static_cast<std::uint32_t>(u), static_cast<std::uint32_t>(v));
    } else {
      throw fail("unknown line tag '" + tag + "'");
    }
  }
  if (!header) throw ParseError(ParseErrorKind::MalformedHeader, lineno, "missing 'g <n>' header");
  return g;
}

inline std::string render_graph(const Graph& g) {
  std::ostringstream out;
  out << "g " << g.n << '\n';
  for (auto [u, v] : g.edges) out << "e " << u << ' ' << v << '\n';
  return out.str();
}

/// One variable per vertex, one clause (not u or not v) per edge, weight k.
/// The parameter passes through unchanged.
inline WeightedFormula independent_set_to_wsat(const Graph& g, std::uint64_t k) {
  if (k > g.n) throw std::invalid_argument("k exceeds the vertex count");
  std::vector<Clause> clauses;
  for (auto [u, v] : g.edges) clauses.push_back({-static_cast<int>(u), -static_cast<int>(v)});
  return WeightedFormula(FormulaClass::G12N, g.n, std::move(clauses), k);
}

namespace detail {

inline std::vector<std::uint32_t> random_subset(std::size_t n, std::size_t k, std::mt19937_64& rng) {
  std::vector<std::uint32_t> all(n);
  for (std::uint32_t i = 0; i < n; ++i) all[i] = i + 1;
  for (std::size_t i = 0; i < k; ++i) {
    std::size_t j = i + rng() % (n - i);
    std::swap(all[i], all[j]);
  }
  all.resize(k);
  std::sort(all.begin(), all.end());
  return all;
}

}  // namespace detail

struct PlantedInstance {
  WeightedFormula formula;
  Assignment witness;
};

/// Hides a weight-k set S and draws distinct clauses (not u or not v) with
/// u, v not both in S, so the result is always a yes-instance.
inline PlantedInstance gen_planted(std::size_t n, std::uint64_t k, std::size_t num_clauses, std::uint64_t seed) {
  if (n == 0) throw std::invalid_argument("need at least one variable");
  if (k > n) throw std::invalid_argument("k exceeds the variable count");
  std::mt19937_64 rng(seed);
  auto hidden = detail::random_subset(n, k, rng);
  std::set<std::uint32_t> in_s(hidden.begin(), hidden.end());
  std::vector<std::pair<std::uint32_t, std::uint32_t>> slots;
  for (std::uint32_t u = 1; u <= n; ++u) {
    for (std::uint32_t v = u + 1; v <= n; ++v) {
      if (!(in_s.contains(u) && in_s.contains(v))) slots.emplace_back(u, v);
    }
  }
  if (num_clauses > slots.size()) {
    throw std::invalid_argument("only " + std::to_string(slots.size()) + " legal clause slots for the planted set");
  }
  for (std::size_t i = 0; i < num_clauses; ++i) {
    std::size_t j = i + rng() % (slots.size() - i);
    std::swap(slots[i], slots[j]);
  }
  slots.resize(num_clauses);
  std::sort(slots.begin(), slots.end());
  std::vector<Clause> clauses;
  for (auto [u, v] : slots) clauses.push_back({-static_cast<int>(u), -static_cast<int>(v)});
  return {WeightedFormula(FormulaClass::G12N, n, std::move(clauses), k), Assignment{in_s}};
}

inline WeightedFormula gen_planted_yes(std::size_t n, std::uint64_t k, std::size_t num_clauses, std::uint64_t seed) {
  return gen_planted(n, k, num_clauses, seed).formula;
}

struct LabeledFormula {
  WeightedFormula formula;
  bool yes;
};

/// Uniform random clauses of the class: g12n draws (not u or not v) with
/// u != v; g21p draws a length in [1, min(n, max_len)] then distinct variables.
/// Labeled by brute force.
inline LabeledFormula gen_random(std::size_t n, std::size_t num_clauses, std::uint64_t k, std::uint64_t seed,
                                 FormulaClass cls, std::size_t max_len = 3) {
  if (n == 0 || n > kMaxBruteForceVars) throw std::invalid_argument("gen_random: need 1..24 variables");
  if (cls == FormulaClass::G12N && n < 2 && num_clauses > 0) throw std::invalid_argument("g12n clauses need 2 variables");
  if (max_len == 0) throw std::invalid_argument("max_len must be positive");
  std::mt19937_64 rng(seed);
  std::vector<Clause> clauses;
  for (std::size_t c = 0; c < num_clauses; ++c) {
    if (cls == FormulaClass::G12N) {
      auto pair = detail::random_subset(n, 2, rng);
      clauses.push_back({-static_cast<int>(pair[0]), -static_cast<int>(pair[1])});
    } else {
      std::size_t len = 1 + rng() % std::min(n, max_len);
      auto vars = detail::random_subset(n, len, rng);
      clauses.emplace_back(vars.begin(), vars.end());
    }
  }
  WeightedFormula f(cls, n, std::move(clauses), k);
  bool yes = brute_force_wsat(f).satisfiable;
  return {std::move(f), yes};
}

/// Random l-block alternating instance over a g12n formula with block
/// weights k_i <= min(max_block_weight, |X_i|).
inline AwsatInstance gen_awsat(std::size_t n, std::size_t num_clauses, std::size_t l, std::uint64_t seed,
                               std::uint64_t max_block_weight = 2) {
  if (l == 0 || n < l) throw std::invalid_argument("gen_awsat: need 1 <= l <= n");
  if (n > 64) throw std::invalid_argument("gen_awsat: at most 64 variables");
  std::mt19937_64 rng(seed);
  auto order = detail::random_subset(n, n, rng);
  for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[rng() % i]);
  // Every block gets at least one variable; the rest land uniformly.
  std::vector<std::vector<std::uint32_t>> blocks(l);
  for (std::size_t i = 0; i < n; ++i) blocks[i < l ? i : rng() % l].push_back(order[i]);
  std::vector<std::uint64_t> weights;
  std::uint64_t total = 0;
  for (auto& b : blocks) {
    std::sort(b.begin(), b.end());
    std::uint64_t cap = std::min<std::uint64_t>(max_block_weight, b.size());
    weights.push_back(rng() % (cap + 1));
    total += weights.back();
  }
  std::vector<Clause> clauses;
  for (std::size_t c = 0; c < num_clauses && n >= 2; ++c) {
    auto pair = detail::random_subset(n, 2, rng);
    clauses.push_back({-static_cast<int>(pair[0]), -static_cast<int>(pair[1])});
  }
  AwsatInstance inst{WeightedFormula(FormulaClass::G12N, n, std::move(clauses), total), std::move(blocks),
                     std::move(weights)};
  inst.validate();
  return inst;
}

}  // namespace ppcp
