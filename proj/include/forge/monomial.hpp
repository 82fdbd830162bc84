#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace forge {

inline constexpr unsigned kMaxVars = 8;
inline constexpr unsigned kMaxExponent = 127;

/// Monomial in at most 8 variables, one byte per exponent, packed into a
/// 64-bit word with x0 in the most significant byte. With that layout plain
/// integer comparison is lex order with x0 > x1 > ... > x7.
class Monomial {
public:
  constexpr Monomial() = default;
  constexpr explicit Monomial(std::uint64_t bits) : bits_(bits) {}

  template <class Range>
  static Monomial from_exponents(const Range &exps) {
    std::uint64_t bits = 0;
    unsigned i = 0;
    for (auto e : exps) {
      if (i >= kMaxVars) throw std::invalid_argument("monomial: too many variables");
      if (static_cast<long long>(e) < 0 || static_cast<unsigned long long>(e) > kMaxExponent)
        throw std::overflow_error("monomial: exponent out of range");
      bits |= static_cast<std::uint64_t>(e) << shift(i);
      ++i;
    }
    return Monomial(bits);
  }

  static Monomial variable(unsigned i, unsigned e = 1) {
    if (i >= kMaxVars) throw std::invalid_argument("monomial: variable index out of range");
    if (e > kMaxExponent) throw std::overflow_error("monomial: exponent out of range");
    return Monomial(static_cast<std::uint64_t>(e) << shift(i));
  }

  constexpr std::uint64_t bits() const { return bits_; }
  constexpr unsigned exponent(unsigned i) const { return (bits_ >> shift(i)) & 0xFF; }

  Monomial with_exponent(unsigned i, unsigned e) const {
    if (e > kMaxExponent) throw std::overflow_error("monomial: exponent out of range");
    std::uint64_t cleared = bits_ & ~(std::uint64_t{0xFF} << shift(i));
    return Monomial(cleared | (static_cast<std::uint64_t>(e) << shift(i)));
  }

  constexpr unsigned degree() const {
    std::uint64_t pairs = (bits_ & 0x00FF00FF00FF00FFull) + ((bits_ >> 8) & 0x00FF00FF00FF00FFull);
    return static_cast<unsigned>((pairs * 0x0001000100010001ull) >> 48);
  }

  constexpr bool is_one() const { return bits_ == 0; }

  /// True iff this divides other. Relies on all exponents being <= 127.
  constexpr bool divides(Monomial other) const {
    return (((other.bits_ | kHigh) - bits_) & kHigh) == kHigh;
  }

  friend Monomial operator*(Monomial a, Monomial b) {
    std::uint64_t s = a.bits_ + b.bits_;
    if (s & kHigh) throw std::overflow_error("monomial product: exponent exceeds 127");
    return Monomial(s);
  }

  /// a / b, assuming b divides a.
  friend constexpr Monomial operator/(Monomial a, Monomial b) { return Monomial(a.bits_ - b.bits_); }

  static Monomial lcm(Monomial a, Monomial b) {
    std::uint64_t r = 0;
    for (unsigned i = 0; i < kMaxVars; ++i)
      r |= static_cast<std::uint64_t>(std::max(a.exponent(i), b.exponent(i))) << shift(i);
    return Monomial(r);
  }

  static Monomial gcd(Monomial a, Monomial b) {
    std::uint64_t r = 0;
    for (unsigned i = 0; i < kMaxVars; ++i)
      r |= static_cast<std::uint64_t>(std::min(a.exponent(i), b.exponent(i))) << shift(i);
    return Monomial(r);
  }

  static constexpr bool coprime(Monomial a, Monomial b) {
    for (unsigned i = 0; i < kMaxVars; ++i)
      if (a.exponent(i) && b.exponent(i)) return false;
    return true;
  }

  friend constexpr bool operator==(Monomial a, Monomial b) { return a.bits_ == b.bits_; }

  std::string to_string(unsigned nvars, const char *var = "x") const {
    std::string s;
    for (unsigned i = 0; i < nvars; ++i) {
      unsigned e = exponent(i);
      if (!e) continue;
      if (!s.empty()) s += '*';
      s += var + std::to_string(i);
      if (e > 1) s += '^' + std::to_string(e);
    }
    return s.empty() ? "1" : s;
  }

private:
  static constexpr unsigned shift(unsigned i) { return 8 * (kMaxVars - 1 - i); }
  static constexpr std::uint64_t kHigh = 0x8080808080808080ull;
  std::uint64_t bits_ = 0;
};

struct MonomialHash {
  std::size_t operator()(Monomial m) const { return std::hash<std::uint64_t>{}(m.bits() * 0x9E3779B97F4A7C15ull); }
};

/// Total monomial orders used in the library. Elimination orders compare the
/// first `block` variables by grevlex first, then the rest by grevlex.
class MonomialOrder {
public:
  enum class Kind { Lex, DegLex, GrevLex, Elimination };

  static MonomialOrder lex() { return MonomialOrder(Kind::Lex, 0); }
  static MonomialOrder deglex() { return MonomialOrder(Kind::DegLex, 0); }
  static MonomialOrder grevlex() { return MonomialOrder(Kind::GrevLex, 0); }
  static MonomialOrder elimination(unsigned block) {
    if (block == 0 || block >= kMaxVars) throw std::invalid_argument("elimination block out of range");
    return MonomialOrder(Kind::Elimination, block);
  }

  Kind kind() const { return kind_; }
  unsigned block() const { return block_; }

  /// Negative, zero or positive as a <, ==, > b.
  int compare(Monomial a, Monomial b) const {
    switch (kind_) {
      case Kind::Lex:
        return cmp(a.bits(), b.bits());
      case Kind::DegLex: {
        unsigned da = a.degree(), db = b.degree();
        if (da != db) return da < db ? -1 : 1;
        return cmp(a.bits(), b.bits());
      }
      case Kind::GrevLex:
        return grevlex_cmp(a.bits(), b.bits());
      case Kind::Elimination: {
        std::uint64_t mask = ~std::uint64_t{0} << (8 * (kMaxVars - block_));
        int c = grevlex_cmp(a.bits() & mask, b.bits() & mask);
        if (c) return c;
        return grevlex_cmp(a.bits() & ~mask, b.bits() & ~mask);
      }
    }
    return 0;
  }

  bool greater(Monomial a, Monomial b) const { return compare(a, b) > 0; }

  std::string name() const {
    switch (kind_) {
      case Kind::Lex: return "lex";
      case Kind::DegLex: return "deglex";
      case Kind::GrevLex: return "grevlex";
      case Kind::Elimination: return "elim" + std::to_string(block_);
    }
    return "?";
  }

  friend bool operator==(const MonomialOrder &a, const MonomialOrder &b) {
    return a.kind_ == b.kind_ && a.block_ == b.block_;
  }

private:
  MonomialOrder(Kind k, unsigned block) : kind_(k), block_(block) {}

  static int cmp(std::uint64_t a, std::uint64_t b) { return a < b ? -1 : (a > b ? 1 : 0); }

  static int grevlex_cmp(std::uint64_t a, std::uint64_t b) {
    unsigned da = Monomial(a).degree(), db = Monomial(b).degree();
    if (da != db) return da < db ? -1 : 1;
    // smaller exponent in the last differing variable wins
    return cmp(__builtin_bswap64(b), __builtin_bswap64(a));
  }

  Kind kind_;
  unsigned block_;
};

}  // namespace forge
