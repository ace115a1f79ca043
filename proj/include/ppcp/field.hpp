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

// Prime-field arithmetic over Z_p, univariate polynomials, and soundness-driven
// prime selection.

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>
#include <span>

namespace ppcp {

/// Largest admissible modulus. Products of two reduced elements fit in 128 bits.
inline constexpr std::uint64_t kMaxModulus = (std::uint64_t{1} << 61) - 1;

namespace detail {

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

}  // namespace detail

/// Deterministic Miller-Rabin, exact for every 64-bit input.
inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t small : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    if (n % small == 0) return n == small;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = detail::pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = detail::mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

/// ceil(log2(n)) for n >= 1; ceil_log2(1) == 0.
inline unsigned ceil_log2(std::uint64_t n) {
  unsigned bits = 0;
  while (bits < 64 && (std::uint64_t{1} << bits) < n) ++bits;
  return bits;
}

/// Positive rational num/den, used for soundness targets.
struct Ratio {
  std::uint64_t num = 1;
  std::uint64_t den = 2;

  double value() const { return static_cast<double>(num) / static_cast<double>(den); }

  /// Accepts "a/b" or a decimal such as "0.125".
  static Ratio parse(const std::string& text) {
    auto bad = [&] { return std::invalid_argument("malformed ratio '" + text + "'"); };
    if (text.empty()) throw bad();
    Ratio r;
    if (auto slash = text.find('/'); slash != std::string::npos) {
      try {
        std::size_t used = 0;
        r.num = std::stoull(text.substr(0, slash), &used);
        if (used != slash) throw bad();
        std::string rest = text.substr(slash + 1);
        r.den = std::stoull(rest, &used);
        if (used != rest.size()) throw bad();
      } catch (const std::logic_error&) {
        throw bad();
      }
    } else {
      std::uint64_t whole = 0, frac = 0, scale = 1;
      std::size_t i = 0;
      for (; i < text.size() && text[i] != '.'; ++i) {
        if (text[i] < '0' || text[i] > '9') throw bad();
        whole = whole * 10 + static_cast<std::uint64_t>(text[i] - '0');
      }
      if (i < text.size()) {
        for (++i; i < text.size(); ++i) {
          if (text[i] < '0' || text[i] > '9' || scale > 1'000'000'000'000ULL) throw bad();
          frac = frac * 10 + static_cast<std::uint64_t>(text[i] - '0');
          scale *= 10;
        }
      }
      r.num = whole * scale + frac;
      r.den = scale;
    }
    if (r.den == 0) throw bad();
    auto g = std::gcd(r.num, r.den);
    if (g > 1) {
      r.num /= g;
      r.den /= g;
    }
    return r;
  }

  std::string str() const { return std::to_string(num) + "/" + std::to_string(den); }

  friend bool operator==(const Ratio&, const Ratio&) = default;
};

/// Smallest prime p with p > rounds * degree / epsilon.
///
/// `rounds` is the total number of union-bound terms across every
/// sub-protocol of a verifier, each contributing at most degree/p error.
inline std::uint64_t select_prime(std::uint64_t rounds, std::uint64_t degree, Ratio epsilon) {
  if (rounds == 0 || degree == 0) throw std::invalid_argument("select_prime: rounds and degree must be positive");
  if (epsilon.num == 0 || epsilon.den == 0 || epsilon.num > epsilon.den) {
    throw std::invalid_argument("select_prime: epsilon must lie in (0, 1]");
  }
  // p * num > rounds * degree * den  <=>  p > floor(rounds * degree * den / num)
  unsigned __int128 bound = static_cast<unsigned __int128>(rounds) * degree * epsilon.den / epsilon.num;
  if (bound >= kMaxModulus) throw std::out_of_range("select_prime: required modulus exceeds 2^61 - 1");
  for (auto candidate = static_cast<std::uint64_t>(bound) + 1; candidate <= kMaxModulus; ++candidate) {
    if (is_prime(candidate)) return candidate;
  }
  throw std::out_of_range("select_prime: required modulus exceeds 2^61 - 1");
}

class PrimeField;

/// An element of Z_p. Carries its modulus so mixed-field arithmetic is caught.
/// A default-constructed element is unbound and rejects every operation.
class Fp {
 public:
  Fp() = default;

  std::uint64_t value() const { return value_; }
  std::uint64_t modulus() const { return modulus_; }
  bool is_zero() const { return value_ == 0; }

  /// Element of the same field with the given (reduced) value.
  Fp same_field(std::uint64_t v) const {
    require_bound();
    return Fp(v % modulus_, modulus_);
  }

  Fp& operator+=(const Fp& o) {
    check(o);
    value_ += o.value_;
    if (value_ >= modulus_) value_ -= modulus_;
    return *this;
  }
  Fp& operator-=(const Fp& o) {
    check(o);
    value_ = value_ >= o.value_ ? value_ - o.value_ : value_ + modulus_ - o.value_;
    return *this;
  }
  Fp& operator*=(const Fp& o) {
    check(o);
    value_ = detail::mul_mod(value_, o.value_, modulus_);
    return *this;
  }
  Fp& operator/=(const Fp& o) { return *this *= o.inv(); }

  friend Fp operator+(Fp a, const Fp& b) { return a += b; }
  friend Fp operator-(Fp a, const Fp& b) { return a -= b; }
  friend Fp operator*(Fp a, const Fp& b) { return a *= b; }
  friend Fp operator/(Fp a, const Fp& b) { return a /= b; }
  Fp operator-() const {
    require_bound();
    return Fp(value_ == 0 ? 0 : modulus_ - value_, modulus_);
  }

  friend bool operator==(const Fp& a, const Fp& b) { return a.value_ == b.value_ && a.modulus_ == b.modulus_; }

  /// Multiplicative inverse via the extended Euclidean algorithm.
  Fp inv() const {
    require_bound();
    if (value_ == 0) throw std::domain_error("inverse of zero in Z_" + std::to_string(modulus_));
    std::int64_t t = 0, new_t = 1;
    auto r = static_cast<std::int64_t>(modulus_), new_r = static_cast<std::int64_t>(value_);
    while (new_r != 0) {
      std::int64_t q = r / new_r;
      t = std::exchange(new_t, t - q * new_t);
      r = std::exchange(new_r, r - q * new_r);
    }
    if (t < 0) t += static_cast<std::int64_t>(modulus_);
    return Fp(static_cast<std::uint64_t>(t), modulus_);
  }

  Fp pow(std::uint64_t exp) const {
    require_bound();
    return Fp(detail::pow_mod(value_, exp, modulus_), modulus_);
  }

 private:
  friend class PrimeField;
  Fp(std::uint64_t v, std::uint64_t p) : value_(v), modulus_(p) {}

  void require_bound() const {
    if (modulus_ == 0) throw std::logic_error("operation on an unbound field element");
  }
  void check(const Fp& o) const {
    require_bound();
    if (o.modulus_ != modulus_) {
      throw std::invalid_argument("mixed-field operation: Z_" + std::to_string(modulus_) + " vs Z_" +
                                  std::to_string(o.modulus_));
    }
  }

  std::uint64_t value_ = 0;
  std::uint64_t modulus_ = 0;
};

/// Z_p for a verified prime p <= 2^61 - 1.
class PrimeField {
 public:
  explicit PrimeField(std::uint64_t modulus) : modulus_(modulus), bits_(ceil_log2(modulus)) {
    if (modulus > kMaxModulus) throw std::out_of_range("modulus exceeds 2^61 - 1");
    if (!is_prime(modulus)) throw std::invalid_argument(std::to_string(modulus) + " is not prime");
  }

  std::uint64_t modulus() const { return modulus_; }
  /// Bits needed to transmit or sample one element: ceil(log2 p).
  unsigned element_bits() const { return bits_; }

  Fp operator()(std::uint64_t v) const { return Fp(v % modulus_, modulus_); }
  Fp from_signed(std::int64_t v) const {
    auto m = static_cast<std::int64_t>(modulus_);
    auto r = v % m;
    if (r < 0) r += m;
    return Fp(static_cast<std::uint64_t>(r), modulus_);
  }
  Fp zero() const { return Fp(0, modulus_); }
  Fp one() const { return Fp(1 % modulus_, modulus_); }

  friend bool operator==(const PrimeField& a, const PrimeField& b) { return a.modulus_ == b.modulus_; }

 private:
  std::uint64_t modulus_;
  unsigned bits_;
};

/// Univariate polynomial, coefficients lowest degree first.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<Fp> coefficients) : coeffs_(std::move(coefficients)) {}

  const std::vector<Fp>& coefficients() const { return coeffs_; }
  std::size_t size() const { return coeffs_.size(); }

  /// Horner evaluation. The empty polynomial is zero.
  Fp operator()(const Fp& x) const {
    Fp acc = x.same_field(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  /// True when the coefficient list fits a polynomial of degree <= bound.
  bool fits_degree(std::size_t bound) const { return coeffs_.size() <= bound + 1; }

  friend bool operator==(const UniPoly&, const UniPoly&) = default;

 private:
  std::vector<Fp> coeffs_;
};

/// Lagrange interpolation: the unique polynomial of degree < points.size()
/// through every (x, y). Trailing zero coefficients are kept.
inline UniPoly interpolate(std::span<const std::pair<Fp, Fp>> points) {
  if (points.empty()) return UniPoly{};
  const std::size_t n = points.size();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (points[i].first == points[j].first) throw std::invalid_argument("interpolate: duplicate x-value");
    }
  }
  const Fp zero = points[0].first.same_field(0);
  std::vector<Fp> result(n, zero);
  for (std::size_t i = 0; i < n; ++i) {
    // basis = prod_{j != i} (x - x_j), built up in coefficient form
    std::vector<Fp> basis{zero.same_field(1)};
    Fp denom = zero.same_field(1);
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      std::vector<Fp> next(basis.size() + 1, zero);
      for (std::size_t c = 0; c < basis.size(); ++c) {
        next[c + 1] += basis[c];
        next[c] -= basis[c] * points[j].first;
      }
      basis = std::move(next);
      denom *= points[i].first - points[j].first;
    }
    Fp scale = points[i].second / denom;
    for (std::size_t c = 0; c < n; ++c) result[c] += basis[c] * scale;
  }
  return UniPoly(std::move(result));
}

/// Interpolates from values at x = 0, 1, ..., values.size() - 1.
inline UniPoly interpolate_consecutive(std::span<const Fp> values) {
  std::vector<std::pair<Fp, Fp>> points;
  points.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) points.emplace_back(values[i].same_field(i), values[i]);
  return interpolate(points);
}

}  // namespace ppcp
