#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "forge/field.hpp"

namespace forge {

/// Dense univariate polynomial over Z/p, coefficients in increasing degree.
class UPoly {
public:
  explicit UPoly(const PrimeField &f) : field_(f) {}
  UPoly(const PrimeField &f, std::vector<std::uint32_t> coeffs) : field_(f), c_(std::move(coeffs)) { trim(); }

  static UPoly constant(const PrimeField &f, std::uint32_t c) { return UPoly(f, {c}); }
  /// x - a
  static UPoly linear_root(const PrimeField &f, std::uint32_t a) { return UPoly(f, {f.neg(a), 1}); }

  const PrimeField &field() const { return field_; }
  const std::vector<std::uint32_t> &coeffs() const { return c_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  std::uint32_t coeff(std::size_t i) const { return i < c_.size() ? c_[i] : 0; }
  std::uint32_t leading() const { return c_.empty() ? 0 : c_.back(); }

  std::uint32_t evaluate(std::uint32_t x) const {
    std::uint32_t acc = 0;
    for (std::size_t i = c_.size(); i-- > 0;) acc = field_.add(field_.mul(acc, x), c_[i]);
    return acc;
  }

  UPoly monic() const {
    if (c_.empty()) return *this;
    return scaled(field_.inv(c_.back()));
  }

  UPoly scaled(std::uint32_t s) const {
    UPoly r(field_);
    if (!s) return r;
    r.c_.resize(c_.size());
    for (std::size_t i = 0; i < c_.size(); ++i) r.c_[i] = field_.mul(c_[i], s);
    return r;
  }

  UPoly derivative() const {
    UPoly r(field_);
    if (c_.size() <= 1) return r;
    r.c_.resize(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) r.c_[i - 1] = field_.mul(c_[i], static_cast<std::uint32_t>(i % field_.prime()));
    r.trim();
    return r;
  }

  friend UPoly operator+(const UPoly &a, const UPoly &b) {
    a.field_.check_same(b.field_);
    UPoly r(a.field_);
    r.c_.resize(std::max(a.c_.size(), b.c_.size()), 0);
    for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = a.field_.add(a.coeff(i), b.coeff(i));
    r.trim();
    return r;
  }

  friend UPoly operator-(const UPoly &a, const UPoly &b) {
    a.field_.check_same(b.field_);
    UPoly r(a.field_);
    r.c_.resize(std::max(a.c_.size(), b.c_.size()), 0);
    for (std::size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = a.field_.sub(a.coeff(i), b.coeff(i));
    r.trim();
    return r;
  }

  friend UPoly operator*(const UPoly &a, const UPoly &b) {
    a.field_.check_same(b.field_);
    UPoly r(a.field_);
    if (a.is_zero() || b.is_zero()) return r;
    const auto &f = a.field_;
    r.c_.assign(a.c_.size() + b.c_.size() - 1, 0);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (!a.c_[i]) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r.c_[i + j] = f.add(r.c_[i + j], f.mul(a.c_[i], b.c_[j]));
    }
    r.trim();
    return r;
  }

  /// Quotient and remainder.
  friend std::pair<UPoly, UPoly> divmod(const UPoly &a, const UPoly &b) {
    a.field_.check_same(b.field_);
    if (b.is_zero()) throw std::domain_error("UPoly division by zero");
    const auto &f = a.field_;
    UPoly q(f), r = a;
    if (a.degree() < b.degree()) return {q, r};
    q.c_.assign(a.c_.size() - b.c_.size() + 1, 0);
    std::uint32_t inv = f.inv(b.c_.back());
    for (int d = r.degree(); d >= b.degree(); --d) {
      std::uint32_t coef = f.mul(r.c_[d], inv);
      if (!coef) continue;
      std::size_t shift = static_cast<std::size_t>(d - b.degree());
      q.c_[shift] = coef;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r.c_[shift + j] = f.sub(r.c_[shift + j], f.mul(coef, b.c_[j]));
    }
    q.trim();
    r.trim();
    return {q, r};
  }

  friend UPoly operator/(const UPoly &a, const UPoly &b) { return divmod(a, b).first; }
  friend UPoly operator%(const UPoly &a, const UPoly &b) { return divmod(a, b).second; }

  friend bool operator==(const UPoly &a, const UPoly &b) { return a.field_ == b.field_ && a.c_ == b.c_; }

private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  PrimeField field_;
  std::vector<std::uint32_t> c_;
};

/// Monic gcd; gcd(0, 0) = 0.
inline UPoly gcd(UPoly a, UPoly b) {
  while (!b.is_zero()) {
    UPoly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

inline bool is_squarefree(const UPoly &h) {
  if (h.degree() <= 0) return true;
  return gcd(h, h.derivative()).degree() == 0;
}

}  // namespace forge
