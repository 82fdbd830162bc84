#pragma once

#include <bit>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace forge {

class CodeTooLarge : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Binary linear code of length <= 64. Bit c of a word is coordinate c.
class BinaryCode {
 public:
  BinaryCode(unsigned length, const std::vector<std::uint64_t> &generators) : n_(length) {
    if (length == 0 || length > 64) throw std::invalid_argument("BinaryCode: length must be in 1..64");
    const std::uint64_t mask = length == 64 ? ~0ULL : (1ULL << length) - 1;
    // keep an echelon copy for independence, store the original rows that were independent
    std::vector<std::uint64_t> echelon;
    for (auto g : generators) {
      if (g & ~mask) throw std::invalid_argument("BinaryCode: generator has bits beyond the length");
      auto v = g;
      for (auto e : echelon)
        if (v & std::bit_floor(e)) v ^= e;
      if (!v) continue;
      for (auto &e : echelon)
        if (e & std::bit_floor(v)) e ^= v;
      echelon.push_back(v);
      rows_.push_back(g);
    }
  }

  unsigned length() const { return n_; }
  std::size_t dimension() const { return rows_.size(); }
  const std::vector<std::uint64_t> &generators() const { return rows_; }

  /// All 2^dim codewords in Gray-code order.
  std::vector<std::uint64_t> codewords() const {
    check_enumerable();
    std::vector<std::uint64_t> out;
    out.reserve(std::size_t{1} << dimension());
    std::uint64_t w = 0;
    out.push_back(w);
    for (std::uint64_t i = 1; i < (std::uint64_t{1} << dimension()); ++i) {
      w ^= rows_[std::countr_zero(i)];
      out.push_back(w);
    }
    return out;
  }

  bool contains(std::uint64_t word) const {
    auto v = word;
    for (auto e : reduced_rows())
      if (v & std::bit_floor(e)) v ^= e;
    return v == 0;
  }

  void check_enumerable() const {
    if (dimension() > 24)
      throw CodeTooLarge("weight enumeration needs dimension <= 24, got " + std::to_string(dimension()));
  }

 private:
  std::vector<std::uint64_t> reduced_rows() const {
    std::vector<std::uint64_t> echelon;
    for (auto g : rows_) {
      auto v = g;
      for (auto e : echelon)
        if (v & std::bit_floor(e)) v ^= e;
      for (auto &e : echelon)
        if (e & std::bit_floor(v)) e ^= v;
      echelon.push_back(v);
    }
    return echelon;
  }

  unsigned n_;
  std::vector<std::uint64_t> rows_;
};

inline std::map<unsigned, std::uint64_t> weight_distribution(const BinaryCode &c) {
  std::map<unsigned, std::uint64_t> dist;
  for (auto w : c.codewords()) ++dist[static_cast<unsigned>(std::popcount(w))];
  return dist;
}

namespace gf2 {

// Polynomials over F_2 of degree < 64, bit i = coefficient of x^i.
using Poly = std::uint64_t;

inline int degree(Poly a) { return a ? 63 - std::countl_zero(a) : -1; }

inline Poly mod(Poly a, Poly m) {
  const int dm = degree(m);
  if (dm < 0) throw std::domain_error("gf2::mod: zero modulus");
  for (int d = degree(a); d >= dm; d = degree(a)) a ^= m << (d - dm);
  return a;
}

inline Poly div(Poly a, Poly m, Poly *rem = nullptr) {
  const int dm = degree(m);
  if (dm < 0) throw std::domain_error("gf2::div: zero divisor");
  Poly q = 0;
  for (int d = degree(a); d >= dm; d = degree(a)) {
    q |= Poly{1} << (d - dm);
    a ^= m << (d - dm);
  }
  if (rem) *rem = a;
  return q;
}

/// Product reduced modulo m, so the intermediate never overflows.
inline Poly mulmod(Poly a, Poly b, Poly m) {
  a = mod(a, m);
  Poly r = 0;
  const int dm = degree(m);
  while (b) {
    if (b & 1) r ^= a;
    b >>= 1;
    a <<= 1;
    if (degree(a) >= dm) a ^= m;
  }
  return r;
}

inline Poly invmod(Poly a, Poly m) {
  Poly r0 = m, r1 = mod(a, m), s0 = 0, s1 = 1;
  while (r1) {
    Poly r;
    Poly q = div(r0, r1, &r);
    Poly s = s0;
    for (Poly t = q; t; t &= t - 1) s ^= s1 << std::countr_zero(t);
    r0 = r1;
    r1 = r;
    s0 = s1;
    s1 = s;
  }
  if (r0 != 1) throw std::domain_error("gf2::invmod: not invertible");
  return mod(s0, m);
}

inline bool irreducible(Poly p) {
  const int d = degree(p);
  if (d < 1) return false;
  for (Poly q = 2; degree(q) <= d / 2; ++q)
    if (mod(p, q) == 0) return false;
  return true;
}

inline Poly cyclic_modulus(unsigned n) { return (Poly{1} << n) | 1; }

/// Irreducible factors of x^n - 1 of the given degree, by trial of every monic candidate.
inline std::vector<Poly> factors_of_degree(unsigned n, unsigned d) {
  if (n >= 64 || d == 0 || d >= 63) throw std::invalid_argument("factors_of_degree: out of range");
  std::vector<Poly> out;
  const Poly m = cyclic_modulus(n);
  for (Poly p = Poly{1} << d; p < (Poly{1} << (d + 1)); ++p)
    if (mod(m, p) == 0 && irreducible(p)) out.push_back(p);
  return out;
}

}  // namespace gf2

/// Minimal ideal of F_2[x]/(x^n - 1) attached to an irreducible factor P:
/// generated by the idempotent e with e = 1 mod P and e = 0 mod (x^n - 1)/P.
inline BinaryCode minimal_cyclic_code(unsigned n, gf2::Poly factor) {
  const auto m = gf2::cyclic_modulus(n);
  gf2::Poly rem;
  const auto cofactor = gf2::div(m, factor, &rem);
  if (rem) throw std::invalid_argument("minimal_cyclic_code: not a factor of x^n - 1");
  const auto e = gf2::mulmod(cofactor, gf2::invmod(cofactor, factor), m);
  std::vector<std::uint64_t> shifts;
  for (unsigned i = 0; i < n; ++i) shifts.push_back(gf2::mulmod(e, gf2::Poly{1} << i, m));
  return BinaryCode(n, shifts);
}

/// Cyclic shift of a length-n word, coordinate i -> i + 1 mod n.
inline std::uint64_t cyclic_shift(std::uint64_t w, unsigned n) {
  const std::uint64_t mask = n == 64 ? ~0ULL : (1ULL << n) - 1;
  return ((w << 1) | (w >> (n - 1))) & mask;
}

/// The degree-8 factor used for U51: the first, in bit order, whose roots are
/// primitive 51st roots of unity (it does not divide x^17 - 1).
inline gf2::Poly u51_factor() {
  for (auto p : gf2::factors_of_degree(51, 8))
    if (gf2::mod(gf2::cyclic_modulus(17), p) != 0) return p;
  throw std::logic_error("u51_factor: no primitive factor");
}

inline BinaryCode build_U51() { return minimal_cyclic_code(51, u51_factor()); }

/// U51 padded with five zero coordinates, plus the all-ones word of length 56.
inline BinaryCode build_K56() {
  auto rows = build_U51().generators();
  rows.push_back((1ULL << 56) - 1);
  return BinaryCode(56, rows);
}

/// Congruence sieve on the cardinality t of an even (or half-even) set of
/// nodes on a degree-d surface.
struct WeightPredicate {
  unsigned d;
  bool half_even;
  unsigned modulus;
  unsigned residue;
  bool operator()(long long t) const { return ((t % modulus) + modulus) % modulus == residue; }
};

inline WeightPredicate admissible_even_weights(unsigned d, bool half_even = false) {
  if (d < 3) throw std::invalid_argument("admissible_even_weights: degree must be at least 3");
  if (half_even) {
    if (d % 2) throw std::invalid_argument("admissible_even_weights: half-even sets need even degree");
    const long long r = static_cast<long long>(d) * (2LL * d - 7) / 2;
    return {d, true, 4, static_cast<unsigned>(((r % 4) + 4) % 4)};
  }
  return {d, false, d % 2 == 0 ? 8u : 4u, 0};
}

}  // namespace forge
