#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace forge {

class ModulusMismatch : public std::logic_error {
public:
  explicit ModulusMismatch(const std::string &what) : std::logic_error(what) {}
};

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// Arithmetic context for Z/p with p an odd prime below 2^31.
///
/// Residues are plain std::uint32_t values in [0, p). Containers (matrices,
/// polynomials) carry the modulus they were built with and refuse to combine
/// with a container built over a different one.
class PrimeField {
public:
  PrimeField() : PrimeField(101) {}

  explicit PrimeField(std::uint32_t p) : p_(p) {
    if (p < 3 || p >= (1u << 31) || !is_prime(p))
      throw std::invalid_argument("modulus must be an odd prime below 2^31, got " + std::to_string(p));
    // floor(2^64 / p), used for Barrett reduction of 64-bit products.
    inv_ = ~std::uint64_t{0} / p;
  }

  std::uint32_t prime() const { return p_; }

  std::uint32_t reduce(std::uint64_t x) const {
    std::uint64_t q = static_cast<std::uint64_t>((static_cast<unsigned __int128>(x) * inv_) >> 64);
    std::uint64_t r = x - q * p_;
    while (r >= p_) r -= p_;
    return static_cast<std::uint32_t>(r);
  }

  std::uint32_t from_int(std::int64_t v) const {
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    if (r < 0) r += p_;
    return static_cast<std::uint32_t>(r);
  }

  std::uint32_t add(std::uint32_t a, std::uint32_t b) const {
    std::uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  std::uint32_t sub(std::uint32_t a, std::uint32_t b) const { return a >= b ? a - b : a + p_ - b; }
  std::uint32_t neg(std::uint32_t a) const { return a == 0 ? 0 : p_ - a; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const {
    return reduce(static_cast<std::uint64_t>(a) * b);
  }

  std::uint32_t pow(std::uint32_t a, std::uint64_t e) const {
    std::uint32_t r = 1;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }

  std::uint32_t inv(std::uint32_t a) const {
    if (a == 0) throw std::domain_error("inverse of zero in Z/p");
    // extended Euclid on signed integers
    std::int64_t t = 0, nt = 1, r = p_, nr = a;
    while (nr != 0) {
      std::int64_t q = r / nr;
      std::int64_t tmp = t - q * nt;
      t = nt;
      nt = tmp;
      tmp = r - q * nr;
      r = nr;
      nr = tmp;
    }
    if (t < 0) t += p_;
    return static_cast<std::uint32_t>(t);
  }

  std::uint32_t div(std::uint32_t a, std::uint32_t b) const { return mul(a, inv(b)); }

  /// Symmetric representative in (-p/2, p/2], used when printing small signed values.
  std::int64_t signed_value(std::uint32_t a) const {
    return a > p_ / 2 ? static_cast<std::int64_t>(a) - p_ : a;
  }

  void check_same(const PrimeField &other) const {
    if (p_ != other.p_)
      throw ModulusMismatch("mixing residues mod " + std::to_string(p_) + " and mod " +
                            std::to_string(other.p_));
  }

  friend bool operator==(const PrimeField &a, const PrimeField &b) { return a.p_ == b.p_; }

private:
  std::uint32_t p_;
  std::uint64_t inv_;
};

/// A single residue together with its modulus. Convenient for scalar code and
/// tests; bulk storage uses raw residues plus one PrimeField per container.
class Fp {
public:
  Fp(const PrimeField &f, std::int64_t v) : field_(f), v_(f.from_int(v)) {}

  static Fp raw(const PrimeField &f, std::uint32_t residue) {
    Fp r(f, 0);
    r.v_ = residue;
    return r;
  }

  std::uint32_t value() const { return v_; }
  const PrimeField &field() const { return field_; }
  bool is_zero() const { return v_ == 0; }

  Fp inverse() const { return raw(field_, field_.inv(v_)); }

  friend Fp operator+(const Fp &a, const Fp &b) {
    a.field_.check_same(b.field_);
    return raw(a.field_, a.field_.add(a.v_, b.v_));
  }
  friend Fp operator-(const Fp &a, const Fp &b) {
    a.field_.check_same(b.field_);
    return raw(a.field_, a.field_.sub(a.v_, b.v_));
  }
  friend Fp operator*(const Fp &a, const Fp &b) {
    a.field_.check_same(b.field_);
    return raw(a.field_, a.field_.mul(a.v_, b.v_));
  }
  friend Fp operator/(const Fp &a, const Fp &b) {
    a.field_.check_same(b.field_);
    return raw(a.field_, a.field_.div(a.v_, b.v_));
  }
  Fp operator-() const { return raw(field_, field_.neg(v_)); }

  friend bool operator==(const Fp &a, const Fp &b) {
    a.field_.check_same(b.field_);
    return a.v_ == b.v_;
  }

private:
  PrimeField field_;
  std::uint32_t v_;
};

}  // namespace forge
