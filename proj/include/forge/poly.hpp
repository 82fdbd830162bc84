#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "forge/field.hpp"
#include "forge/matrix.hpp"
#include "forge/monomial.hpp"

namespace forge {

struct Term {
  Monomial mono;
  std::uint32_t coeff;
};

/// Multivariate polynomial over Z/p in x0..x{n-1}.
///
/// Terms are kept sorted in decreasing degree-lexicographic order
/// (x0 > x1 > ... ), with no zero coefficients. This order is also the one
/// used for printing and for coefficient extraction.
class MultiPoly {
public:
  MultiPoly(const PrimeField &f, unsigned nvars) : field_(f), nvars_(nvars) {
    if (nvars == 0 || nvars > kMaxVars) throw std::invalid_argument("MultiPoly: unsupported variable count");
  }

  static MultiPoly constant(const PrimeField &f, unsigned nvars, std::int64_t c) {
    MultiPoly p(f, nvars);
    auto r = f.from_int(c);
    if (r) p.terms_.push_back({Monomial{}, r});
    return p;
  }

  static MultiPoly variable(const PrimeField &f, unsigned nvars, unsigned i) {
    if (i >= nvars) throw std::invalid_argument("MultiPoly::variable: index out of range");
    MultiPoly p(f, nvars);
    p.terms_.push_back({Monomial::variable(i), 1});
    return p;
  }

  static MultiPoly monomial(const PrimeField &f, unsigned nvars, Monomial m, std::uint32_t c = 1) {
    MultiPoly p(f, nvars);
    if (c % f.prime()) p.terms_.push_back({m, c % f.prime()});
    return p;
  }

  /// Sorts, merges duplicate monomials and drops zeros.
  static MultiPoly from_terms(const PrimeField &f, unsigned nvars, std::vector<Term> terms) {
    MultiPoly p(f, nvars);
    std::sort(terms.begin(), terms.end(), [](const Term &a, const Term &b) { return deglex_greater(a.mono, b.mono); });
    for (const auto &t : terms) {
      if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
        p.terms_.back().coeff = f.add(p.terms_.back().coeff, t.coeff);
        if (!p.terms_.back().coeff) p.terms_.pop_back();
      } else if (t.coeff) {
        p.terms_.push_back(t);
      }
    }
    return p;
  }

  const PrimeField &field() const { return field_; }
  unsigned nvars() const { return nvars_; }
  const std::vector<Term> &terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }

  /// Total degree; -1 for the zero polynomial.
  int degree() const { return terms_.empty() ? -1 : static_cast<int>(terms_.front().mono.degree()); }

  bool is_homogeneous() const {
    for (const auto &t : terms_)
      if (t.mono.degree() != terms_.front().mono.degree()) return false;
    return true;
  }

  int degree_in(unsigned var) const {
    int d = -1;
    for (const auto &t : terms_) d = std::max(d, static_cast<int>(t.mono.exponent(var)));
    return d;
  }

  const Term &leading_term() const {
    if (terms_.empty()) throw std::domain_error("leading term of zero polynomial");
    return terms_.front();
  }

  std::uint32_t coefficient(Monomial m) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                               [](const Term &t, Monomial x) { return deglex_greater(t.mono, x); });
    return (it != terms_.end() && it->mono == m) ? it->coeff : 0;
  }

  MultiPoly homogeneous_part(unsigned d) const {
    MultiPoly p(field_, nvars_);
    for (const auto &t : terms_)
      if (t.mono.degree() == d) p.terms_.push_back(t);
    return p;
  }

  MultiPoly scaled(std::uint32_t c) const {
    MultiPoly p(field_, nvars_);
    c %= field_.prime();
    if (!c) return p;
    p.terms_.reserve(terms_.size());
    for (const auto &t : terms_) p.terms_.push_back({t.mono, field_.mul(t.coeff, c)});
    return p;
  }

  MultiPoly monic() const {
    if (is_zero()) return *this;
    return scaled(field_.inv(terms_.front().coeff));
  }

  MultiPoly times_monomial(Monomial m, std::uint32_t c = 1) const {
    MultiPoly p(field_, nvars_);
    c %= field_.prime();
    if (!c) return p;
    p.terms_.reserve(terms_.size());
    // multiplying by a monomial preserves deglex order
    for (const auto &t : terms_) p.terms_.push_back({t.mono * m, field_.mul(t.coeff, c)});
    return p;
  }

  MultiPoly operator-() const { return scaled(field_.neg(1)); }

  friend MultiPoly operator+(const MultiPoly &a, const MultiPoly &b) { return combine(a, b, 1); }
  friend MultiPoly operator-(const MultiPoly &a, const MultiPoly &b) {
    return combine(a, b, a.field_.neg(1));
  }
  MultiPoly &operator+=(const MultiPoly &b) { return *this = *this + b; }
  MultiPoly &operator-=(const MultiPoly &b) { return *this = *this - b; }

  friend MultiPoly operator*(const MultiPoly &a, const MultiPoly &b) {
    a.check_compatible(b);
    const auto &f = a.field_;
    if (a.is_zero() || b.is_zero()) return MultiPoly(f, a.nvars_);
    if (a.size() == 1) return b.times_monomial(a.terms_[0].mono, a.terms_[0].coeff);
    if (b.size() == 1) return a.times_monomial(b.terms_[0].mono, b.terms_[0].coeff);
    std::unordered_map<std::uint64_t, std::uint64_t> acc;
    acc.reserve(a.size() * b.size());
    for (const auto &s : a.terms_)
      for (const auto &t : b.terms_) {
        auto &slot = acc[(s.mono * t.mono).bits()];
        slot = f.reduce(slot + static_cast<std::uint64_t>(s.coeff) * t.coeff);
      }
    std::vector<Term> terms;
    terms.reserve(acc.size());
    for (const auto &[m, c] : acc)
      if (c) terms.push_back({Monomial(m), static_cast<std::uint32_t>(c)});
    std::sort(terms.begin(), terms.end(), [](const Term &x, const Term &y) { return deglex_greater(x.mono, y.mono); });
    MultiPoly r(f, a.nvars_);
    r.terms_ = std::move(terms);
    return r;
  }
  MultiPoly &operator*=(const MultiPoly &b) { return *this = *this * b; }

  MultiPoly pow(unsigned e) const {
    MultiPoly r = constant(field_, nvars_, 1), base = *this;
    while (e) {
      if (e & 1) r *= base;
      e >>= 1;
      if (e) base *= base;
    }
    return r;
  }

  friend bool operator==(const MultiPoly &a, const MultiPoly &b) {
    if (!(a.field_ == b.field_) || a.nvars_ != b.nvars_ || a.terms_.size() != b.terms_.size()) return false;
    for (std::size_t i = 0; i < a.terms_.size(); ++i)
      if (!(a.terms_[i].mono == b.terms_[i].mono) || a.terms_[i].coeff != b.terms_[i].coeff) return false;
    return true;
  }

  std::uint32_t evaluate(std::span<const std::uint32_t> point) const {
    if (point.size() != nvars_) throw std::invalid_argument("evaluate: point dimension mismatch");
    std::vector<std::vector<std::uint32_t>> powers(nvars_);
    for (unsigned i = 0; i < nvars_; ++i) powers[i].push_back(1);
    std::uint32_t acc = 0;
    for (const auto &t : terms_) {
      std::uint32_t v = t.coeff;
      for (unsigned i = 0; i < nvars_; ++i) {
        unsigned e = t.mono.exponent(i);
        auto &pw = powers[i];
        while (pw.size() <= e) pw.push_back(field_.mul(pw.back(), point[i]));
        v = field_.mul(v, pw[e]);
      }
      acc = field_.add(acc, v);
    }
    return acc;
  }

  MultiPoly derivative(unsigned var) const {
    if (var >= nvars_) throw std::invalid_argument("derivative: variable out of range");
    std::vector<Term> out;
    for (const auto &t : terms_) {
      unsigned e = t.mono.exponent(var);
      if (!e) continue;
      auto c = field_.mul(t.coeff, e % field_.prime());
      if (c) out.push_back({t.mono.with_exponent(var, e - 1), c});
    }
    return from_terms(field_, nvars_, std::move(out));
  }

  /// Replaces x_var by a constant; the variable count is unchanged.
  MultiPoly specialize(unsigned var, std::uint32_t value) const {
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto &t : terms_) {
      unsigned e = t.mono.exponent(var);
      out.push_back({t.mono.with_exponent(var, 0), field_.mul(t.coeff, field_.pow(value, e))});
    }
    return from_terms(field_, nvars_, std::move(out));
  }

  /// Substitutes x_i -> images[i]. All images must share field and variable count.
  MultiPoly substitute(const std::vector<MultiPoly> &images) const {
    if (images.size() != nvars_) throw std::invalid_argument("substitute: need one image per variable");
    unsigned target = images.front().nvars();
    std::vector<std::vector<MultiPoly>> powers(nvars_);
    for (unsigned i = 0; i < nvars_; ++i) {
      images[i].field_.check_same(field_);
      powers[i].push_back(constant(field_, target, 1));
    }
    MultiPoly acc(field_, target);
    for (const auto &t : terms_) {
      MultiPoly v = constant(field_, target, t.coeff);
      for (unsigned i = 0; i < nvars_; ++i) {
        unsigned e = t.mono.exponent(i);
        auto &pw = powers[i];
        while (pw.size() <= e) pw.push_back(pw.back() * images[i]);
        if (e) v *= pw[e];
      }
      acc += v;
    }
    return acc;
  }

  /// Same polynomial viewed in a ring with a different number of variables.
  /// Shrinking is allowed only when the dropped variables do not occur.
  MultiPoly with_nvars(unsigned n) const {
    if (n < nvars_)
      for (const auto &t : terms_)
        for (unsigned i = n; i < nvars_; ++i)
          if (t.mono.exponent(i)) throw std::invalid_argument("with_nvars: variable still in use");
    MultiPoly p(field_, n);
    p.terms_ = terms_;
    return p;
  }

  /// Exact quotient a / b if b divides a, otherwise nullopt.
  friend std::optional<MultiPoly> divide_exact(const MultiPoly &a, const MultiPoly &b) {
    a.check_compatible(b);
    if (b.is_zero()) throw std::domain_error("division by zero polynomial");
    const auto &f = a.field_;
    const Term lead = b.leading_term();
    const std::uint32_t lead_inv = f.inv(lead.coeff);
    MultiPoly rem = a;
    std::vector<Term> quot;
    while (!rem.is_zero()) {
      const Term &t = rem.terms_.front();
      if (!lead.mono.divides(t.mono)) return std::nullopt;
      Monomial m = t.mono / lead.mono;
      std::uint32_t c = f.mul(t.coeff, lead_inv);
      quot.push_back({m, c});
      rem = combine(rem, b.times_monomial(m, c), f.neg(1));
    }
    return from_terms(f, a.nvars_, std::move(quot));
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string s;
    for (const auto &t : terms_) {
      if (!s.empty()) s += " + ";
      s += std::to_string(t.coeff);
      if (!t.mono.is_one()) s += "*" + t.mono.to_string(nvars_);
    }
    return s;
  }

  /// Parses the format produced by to_string (also accepts '-' between terms
  /// and bare monomials without a coefficient).
  static MultiPoly parse(const PrimeField &f, unsigned nvars, std::string_view text) {
    std::vector<Term> terms;
    std::size_t i = 0;
    auto skip_ws = [&] { while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i; };
    auto read_int = [&]() -> std::int64_t {
      std::size_t start = i;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      if (start == i) throw std::invalid_argument("parse: expected integer");
      return std::stoll(std::string(text.substr(start, i - start)));
    };
    bool negative = false;
    skip_ws();
    if (i < text.size() && text[i] == '-') { negative = true; ++i; }
    while (true) {
      skip_ws();
      std::int64_t coeff = 1;
      std::array<unsigned, kMaxVars> exps{};
      bool need_factor = true;
      if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        coeff = read_int();
        need_factor = false;
      }
      while (true) {
        skip_ws();
        if (!need_factor) {
          if (i < text.size() && text[i] == '*') ++i;
          else break;
          skip_ws();
        }
        if (i >= text.size() || text[i] != 'x') throw std::invalid_argument("parse: expected variable");
        ++i;
        auto var = read_int();
        if (var < 0 || static_cast<unsigned>(var) >= nvars) throw std::invalid_argument("parse: variable out of range");
        unsigned e = 1;
        skip_ws();
        if (i < text.size() && text[i] == '^') {
          ++i;
          skip_ws();
          e = static_cast<unsigned>(read_int());
        }
        exps[var] += e;
        need_factor = false;
      }
      auto c = f.from_int(coeff);
      if (negative) c = f.neg(c);
      std::array<unsigned, kMaxVars> trimmed = exps;
      terms.push_back({Monomial::from_exponents(trimmed), c});
      skip_ws();
      if (i >= text.size()) break;
      if (text[i] == '+') negative = false;
      else if (text[i] == '-') negative = true;
      else throw std::invalid_argument("parse: expected '+' or '-'");
      ++i;
    }
    return from_terms(f, nvars, std::move(terms));
  }

  friend std::ostream &operator<<(std::ostream &os, const MultiPoly &p) { return os << p.to_string(); }

  static bool deglex_greater(Monomial a, Monomial b) {
    unsigned da = a.degree(), db = b.degree();
    return da != db ? da > db : a.bits() > b.bits();
  }

private:
  void check_compatible(const MultiPoly &b) const {
    field_.check_same(b.field_);
    if (nvars_ != b.nvars_) throw std::invalid_argument("polynomials live in rings with different variable counts");
  }

  /// a + c*b by merging the two sorted term lists.
  static MultiPoly combine(const MultiPoly &a, const MultiPoly &b, std::uint32_t c) {
    a.check_compatible(b);
    const auto &f = a.field_;
    MultiPoly r(f, a.nvars_);
    r.terms_.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
      if (j == b.size() || (i < a.size() && deglex_greater(a.terms_[i].mono, b.terms_[j].mono))) {
        r.terms_.push_back(a.terms_[i++]);
      } else if (i == a.size() || deglex_greater(b.terms_[j].mono, a.terms_[i].mono)) {
        auto v = f.mul(b.terms_[j].coeff, c);
        if (v) r.terms_.push_back({b.terms_[j].mono, v});
        ++j;
      } else {
        auto v = f.add(a.terms_[i].coeff, f.mul(b.terms_[j].coeff, c));
        if (v) r.terms_.push_back({a.terms_[i].mono, v});
        ++i;
        ++j;
      }
    }
    return r;
  }

  PrimeField field_;
  unsigned nvars_;
  std::vector<Term> terms_;
};

/// All monomials of total degree d in nvars variables, in decreasing deglex
/// order (x0^d first). There are C(nvars-1+d, d) of them.
inline std::vector<Monomial> graded_piece_basis(unsigned nvars, unsigned d) {
  std::vector<Monomial> out;
  std::array<unsigned, kMaxVars> exps{};
  // recursive enumeration: exponent of x_i from high to low gives lex-decreasing order
  auto rec = [&](auto &&self, unsigned var, unsigned remaining) -> void {
    if (var + 1 == nvars) {
      exps[var] = remaining;
      out.push_back(Monomial::from_exponents(exps));
      exps[var] = 0;
      return;
    }
    for (int e = static_cast<int>(remaining); e >= 0; --e) {
      exps[var] = static_cast<unsigned>(e);
      self(self, var + 1, remaining - static_cast<unsigned>(e));
    }
    exps[var] = 0;
  };
  if (nvars == 0 || nvars > kMaxVars) throw std::invalid_argument("graded_piece_basis: bad variable count");
  rec(rec, 0, d);
  return out;
}

/// Position lookup for the monomials of one graded piece.
class GradedIndex {
public:
  GradedIndex(unsigned nvars, unsigned d) : basis_(graded_piece_basis(nvars, d)) {
    index_.reserve(basis_.size());
    for (std::size_t i = 0; i < basis_.size(); ++i) index_.emplace(basis_[i].bits(), i);
  }
  std::size_t size() const { return basis_.size(); }
  const std::vector<Monomial> &basis() const { return basis_; }
  std::size_t operator[](Monomial m) const {
    auto it = index_.find(m.bits());
    if (it == index_.end()) throw std::invalid_argument("monomial not in this graded piece");
    return it->second;
  }

private:
  std::vector<Monomial> basis_;
  std::unordered_map<std::uint64_t, std::size_t> index_;
};

/// Row i holds the coefficients of polys[i] against graded_piece_basis(nvars, d).
inline ScalarMatrix coefficient_matrix(std::span<const MultiPoly> polys, unsigned d) {
  if (polys.empty()) throw std::invalid_argument("coefficient_matrix: empty input");
  const auto &f = polys.front().field();
  unsigned nvars = polys.front().nvars();
  GradedIndex idx(nvars, d);
  ScalarMatrix m(f, polys.size(), idx.size());
  for (std::size_t i = 0; i < polys.size(); ++i) {
    const auto &p = polys[i];
    f.check_same(p.field());
    if (p.nvars() != nvars) throw std::invalid_argument("coefficient_matrix: mixed variable counts");
    for (const auto &t : p.terms()) {
      if (t.mono.degree() != d)
        throw std::invalid_argument("coefficient_matrix: polynomial " + std::to_string(i) +
                                    " is not homogeneous of degree " + std::to_string(d));
      m(i, idx[t.mono]) = t.coeff;
    }
  }
  return m;
}

/// Inverse of one coefficient_matrix row.
inline MultiPoly poly_from_coefficients(const PrimeField &f, unsigned nvars, unsigned d,
                                        std::span<const std::uint32_t> row) {
  auto basis = graded_piece_basis(nvars, d);
  if (row.size() != basis.size()) throw std::invalid_argument("poly_from_coefficients: length mismatch");
  std::vector<Term> terms;
  for (std::size_t i = 0; i < basis.size(); ++i)
    if (row[i]) terms.push_back({basis[i], row[i]});
  return MultiPoly::from_terms(f, nvars, std::move(terms));
}

}  // namespace forge
