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

// Generic sum-check engine: claim -> one univariate polynomial per variable
// -> random instantiation. The caller performs the final direct evaluation.

#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "ppcp/arithmetize.hpp"
#include "ppcp/field.hpp"

namespace ppcp {

/// SplitMix64 finalizer; used to derive independent per-trial and per-stage seeds.
inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Exact accounting of verifier resources. All counters only grow.
struct ResourceMeter {
  std::uint64_t random_bits = 0;
  /// Portion of random_bits spent on rejected samples.
  std::uint64_t overhead_bits = 0;
  std::uint64_t proof_bits = 0;
  std::uint64_t oracle_queries = 0;

  ResourceMeter& operator+=(const ResourceMeter& o) {
    random_bits += o.random_bits;
    overhead_bits += o.overhead_bits;
    proof_bits += o.proof_bits;
    oracle_queries += o.oracle_queries;
    return *this;
  }
  friend ResourceMeter operator-(ResourceMeter a, const ResourceMeter& b) {
    a.random_bits -= b.random_bits;
    a.overhead_bits -= b.overhead_bits;
    a.proof_bits -= b.proof_bits;
    a.oracle_queries -= b.oracle_queries;
    return a;
  }
  friend bool operator==(const ResourceMeter&, const ResourceMeter&) = default;
};

/// Seeded source of verifier coins. Every bit handed out is charged to the
/// meter passed in; samples outside the requested range are redrawn and their
/// bits charged as overhead.
class RandomTape {
 public:
  explicit RandomTape(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t bits_drawn() const { return bits_drawn_; }

  std::uint64_t bits(unsigned n, ResourceMeter& meter) {
    if (n > 64) throw std::invalid_argument("at most 64 bits per draw");
    bits_drawn_ += n;
    meter.random_bits += n;
    if (n == 0) return 0;
    std::uint64_t word = engine_();
    return n == 64 ? word : word & ((std::uint64_t{1} << n) - 1);
  }

  /// Uniform index in [0, n) from ceil(log2 n) bit blocks.
  std::uint64_t index(std::uint64_t n, ResourceMeter& meter) {
    if (n == 0) throw std::invalid_argument("index range is empty");
    const unsigned width = ceil_log2(n);
    while (true) {
      auto v = bits(width, meter);
      if (v < n) return v;
      meter.overhead_bits += width;
    }
  }

  /// Uniform field element from ceil(log2 p) bit blocks.
  Fp element(const PrimeField& field, ResourceMeter& meter) { return field(index(field.modulus(), meter)); }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  std::uint64_t bits_drawn_ = 0;
};

/// One round as seen by the verifier: the polynomial read from the proof, the
/// challenge drawn, and the resulting running claim a_i = g'_i(r_i).
struct RoundTranscript {
  std::string stage;
  std::size_t round = 0;
  UniPoly poly;
  std::optional<Fp> challenge;
  std::optional<Fp> expected;

  friend bool operator==(const RoundTranscript&, const RoundTranscript&) = default;
};

/// Resources and outcome of one named verifier stage.
struct StageReport {
  std::string name;
  std::size_t rounds = 0;
  ResourceMeter meter;
  bool accepted = true;

  friend bool operator==(const StageReport&, const StageReport&) = default;
};

struct Verdict {
  bool accepted = true;
  /// Stage that rejected, if any.
  std::optional<std::string> rejection_stage;
  /// Round within that stage; 0 is the final direct evaluation.
  std::optional<std::size_t> rejection_round;
  ResourceMeter meter;
  std::vector<StageReport> stages;
  std::vector<RoundTranscript> transcript;

  void reject(std::string stage, std::size_t round) {
    if (!accepted) return;
    accepted = false;
    rejection_stage = std::move(stage);
    rejection_round = round;
  }

  friend bool operator==(const Verdict&, const Verdict&) = default;
};

/// The part of a proof answering one sum-check: round polynomials on demand.
class RoundProver {
 public:
  virtual ~RoundProver() = default;
  /// Polynomial claimed to be g_round (1-based), given challenges r_1..r_{round-1}
  /// and the verifier's current claim a_{round-1}.
  virtual UniPoly round_poly(std::size_t round, std::span<const Fp> challenges, const Fp& claim) = 0;
};

/// g_i(t) = sum over boolean x_{i+1..q} of h(r_1..r_{i-1}, t, x_{i+1..q}), evaluated
/// at t = 0..d_i and interpolated. Exponential in the remaining variables.
inline UniPoly honest_round_poly(const SummandSpec& spec, std::span<const Fp> prefix, std::size_t round) {
  const std::size_t q = spec.num_vars();
  if (round == 0 || round > q || prefix.size() != round - 1) {
    throw std::invalid_argument("honest_round_poly: prefix length must equal round - 1");
  }
  const std::size_t rest = q - round;
  const std::size_t degree = spec.degree_bounds[round - 1];
  std::vector<Fp> point(prefix.begin(), prefix.end());
  point.resize(q, spec.field.zero());
  std::vector<Fp> values;
  values.reserve(degree + 1);
  for (std::size_t t = 0; t <= degree; ++t) {
    point[round - 1] = spec.field(t);
    Fp sum = spec.field.zero();
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << rest); ++mask) {
      for (std::size_t j = 0; j < rest; ++j) {
        point[round + j] = spec.field((mask >> (rest - 1 - j)) & 1);
      }
      sum += spec.evaluate(point);
    }
    values.push_back(sum);
  }
  return interpolate_consecutive(values);
}

/// Sum of h over the whole boolean cube by direct enumeration.
inline Fp cube_sum(const SummandSpec& spec) {
  const std::size_t q = spec.num_vars();
  std::vector<Fp> point(q, spec.field.zero());
  Fp sum = spec.field.zero();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << q); ++mask) {
    for (std::size_t j = 0; j < q; ++j) point[j] = spec.field((mask >> (q - 1 - j)) & 1);
    sum += spec.evaluate(point);
  }
  return sum;
}

/// Honest prover that knows h only as a black box.
class BruteForceRoundProver : public RoundProver {
 public:
  explicit BruteForceRoundProver(SummandSpec spec) : spec_(std::move(spec)) {}
  UniPoly round_poly(std::size_t round, std::span<const Fp> challenges, const Fp&) override {
    return honest_round_poly(spec_, challenges, round);
  }

 private:
  SummandSpec spec_;
};

/// Emits g_i(t) + delta_i t with delta_i = a_{i-1} - g_i(0) - g_i(1): every
/// consistency check passes and the discrepancy is pushed into later rounds.
class AdaptiveRoundProver : public RoundProver {
 public:
  explicit AdaptiveRoundProver(std::unique_ptr<RoundProver> base) : base_(std::move(base)) {}

  UniPoly round_poly(std::size_t round, std::span<const Fp> challenges, const Fp& claim) override {
    UniPoly honest = base_->round_poly(round, challenges, claim);
    std::vector<Fp> coeffs = honest.coefficients();
    while (coeffs.size() < 2) coeffs.push_back(claim.same_field(0));
    Fp zero = claim.same_field(0), one = claim.same_field(1);
    Fp delta = claim - honest(zero) - honest(one);
    coeffs[1] += delta;
    return UniPoly(std::move(coeffs));
  }

 private:
  std::unique_ptr<RoundProver> base_;
};

struct SumcheckResult {
  bool accepted = true;
  /// Round that failed; 0 never occurs here (the final check is the caller's).
  std::optional<std::size_t> rejection_round;
  std::vector<Fp> point;
  Fp expected;
};

/// Runs the round protocol for a_0 = claim over spec's variables.
///
/// Each round reads d_i + 1 coefficients (charged in full whatever the
/// prover sends), rejects on a degree violation or g'(0) + g'(1) != a_{i-1},
/// then draws r_i and sets a_i = g'(r_i). The caller must compare
/// `expected` against h(point).
inline SumcheckResult run_sumcheck(const SummandSpec& spec, const Fp& claim, RoundProver& prover, RandomTape& tape,
                                   ResourceMeter& meter, std::vector<RoundTranscript>* transcript = nullptr,
                                   const std::string& stage = "sumcheck") {
  const PrimeField& field = spec.field;
  const unsigned b = field.element_bits();
  SumcheckResult result;
  result.expected = claim;
  for (std::size_t round = 1; round <= spec.num_vars(); ++round) {
    const std::size_t degree = spec.degree_bounds[round - 1];
    UniPoly g = prover.round_poly(round, result.point, result.expected);
    meter.proof_bits += (degree + 1) * b;
    RoundTranscript entry{stage, round, g, std::nullopt, std::nullopt};
    bool well_formed = g.fits_degree(degree);
    for (const auto& c : g.coefficients()) well_formed = well_formed && c.modulus() == field.modulus();
    if (!well_formed || g(field.zero()) + g(field.one()) != result.expected) {
      if (transcript) transcript->push_back(std::move(entry));
      result.accepted = false;
      result.rejection_round = round;
      return result;
    }
    Fp r = tape.element(field, meter);
    result.point.push_back(r);
    result.expected = g(r);
    entry.challenge = r;
    entry.expected = result.expected;
    if (transcript) transcript->push_back(std::move(entry));
  }
  return result;
}

/// run_sumcheck followed by the final check against spec.evaluate, for
/// summands the verifier can evaluate on its own.
inline bool run_sumcheck_with_final_eval(const SummandSpec& spec, const Fp& claim, RoundProver& prover,
                                         RandomTape& tape, ResourceMeter& meter) {
  auto result = run_sumcheck(spec, claim, prover, tape, meter);
  return result.accepted && spec.evaluate(result.point) == result.expected;
}

}  // namespace ppcp
