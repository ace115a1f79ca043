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

// Independent reference computations used only by the tests. None of these
// share code paths with the library routines they check.

#include <cstdint>
#include <set>
#include <span>
#include <utility>
#include <vector>

#include "ppcp/ppcp.hpp"

namespace ppcp::oracle {

inline bool trial_division_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

/// Smallest prime p with p * num > q * d * den, by upward scan.
inline std::uint64_t scan_prime(std::uint64_t q, std::uint64_t d, std::uint64_t num, std::uint64_t den) {
  std::uint64_t p = 2;
  while (!(p * num > q * d * den && trial_division_prime(p))) ++p;
  return p;
}

/// Direct evaluation of sum_b f(b) prod_i (x_i b_i + (1 - x_i)(1 - b_i)).
inline std::uint64_t naive_mle(const std::vector<int>& table, const std::vector<std::uint64_t>& point,
                               std::uint64_t p) {
  const std::size_t q = point.size();
  unsigned __int128 total = 0;
  for (std::size_t b = 0; b < table.size(); ++b) {
    if (!table[b]) continue;
    unsigned __int128 term = 1;
    for (std::size_t i = 0; i < q; ++i) {
      bool bit = (b >> (q - 1 - i)) & 1;
      std::uint64_t factor = bit ? point[i] % p : (1 + p - point[i] % p) % p;
      term = term * factor % p;
    }
    total = (total + term) % p;
  }
  return static_cast<std::uint64_t>(total);
}

/// sum over clauses z of prod_j r_j^{z_j} * [clause z unsatisfied under a].
inline std::uint64_t weighted_unsat_total(const WeightedFormula& f, const std::set<std::uint32_t>& true_set,
                                          const std::vector<std::uint64_t>& r, std::uint64_t p) {
  const unsigned m = f.m();
  unsigned __int128 total = 0;
  for (std::size_t c = 0; c < f.num_clauses(); ++c) {
    bool sat = false;
    for (int lit : f.clauses()[c]) {
      bool v = true_set.contains(static_cast<std::uint32_t>(lit < 0 ? -lit : lit));
      if (lit > 0 ? v : !v) sat = true;
    }
    if (sat) continue;
    unsigned __int128 w = 1;
    for (unsigned j = 0; j < m; ++j) {
      if ((c >> (m - 1 - j)) & 1) w = w * r[j] % p;
    }
    total = (total + w) % p;
  }
  return static_cast<std::uint64_t>(total);
}

/// Exhaustive independent-set decision.
inline bool has_independent_set(std::size_t n, const std::set<std::pair<std::uint32_t, std::uint32_t>>& edges,
                                std::size_t k) {
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    if (static_cast<std::size_t>(__builtin_popcount(mask)) != k) continue;
    bool independent = true;
    for (auto [u, v] : edges) {
      if (((mask >> (u - 1)) & 1) && ((mask >> (v - 1)) & 1)) independent = false;
    }
    if (independent) return true;
  }
  return false;
}

}  // namespace ppcp::oracle
