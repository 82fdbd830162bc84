#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "forge/poly.hpp"
#include "forge/upoly.hpp"

namespace forge {

namespace detail {

// A polynomial in x0..x{k-1} viewed as a map from monomials in x0..x{k-2}
// ("rest") to univariate coefficients in y = x{k-1}. std::map keeps the rest
// monomials in lex order, so rbegin() is the lex-leading one.
using YCoeffs = std::map<std::uint64_t, UPoly>;

inline YCoeffs split_last(const MultiPoly &p, unsigned k) {
  const auto &f = p.field();
  YCoeffs out;
  for (const auto &t : p.terms()) {
    unsigned e = t.mono.exponent(k - 1);
    auto key = t.mono.with_exponent(k - 1, 0).bits();
    auto [it, inserted] = out.try_emplace(key, f);
    std::vector<std::uint32_t> c = it->second.coeffs();
    if (c.size() <= e) c.resize(e + 1, 0);
    c[e] = f.add(c[e], t.coeff);
    it->second = UPoly(f, std::move(c));
  }
  return out;
}

inline MultiPoly join_last(const PrimeField &f, unsigned nvars, const YCoeffs &parts, unsigned k) {
  std::vector<Term> terms;
  for (const auto &[rest, up] : parts)
    for (std::size_t e = 0; e < up.coeffs().size(); ++e)
      if (up.coeffs()[e])
        terms.push_back({Monomial(rest).with_exponent(k - 1, static_cast<unsigned>(e)), up.coeffs()[e]});
  return MultiPoly::from_terms(f, nvars, std::move(terms));
}

inline UPoly content_of(const YCoeffs &parts, const PrimeField &f) {
  UPoly g(f);
  for (const auto &[rest, up] : parts) {
    g = gcd(g, up);
    if (g.degree() == 0) break;
  }
  return g;
}

inline UPoly as_univariate(const MultiPoly &p, unsigned var) {
  std::vector<std::uint32_t> c(static_cast<std::size_t>(std::max(p.degree_in(var), 0)) + 1, 0);
  for (const auto &t : p.terms()) c[t.mono.exponent(var)] = p.field().add(c[t.mono.exponent(var)], t.coeff);
  return UPoly(p.field(), std::move(c));
}

inline MultiPoly from_univariate(const UPoly &u, unsigned nvars, unsigned var) {
  std::vector<Term> terms;
  for (std::size_t e = 0; e < u.coeffs().size(); ++e)
    if (u.coeffs()[e]) terms.push_back({Monomial::variable(var, static_cast<unsigned>(e)), u.coeffs()[e]});
  return MultiPoly::from_terms(u.field(), nvars, std::move(terms));
}

// lex-leading (rest monomial, coefficient) of a polynomial in x0..x{k-1}
inline Term lex_leading(const MultiPoly &p) {
  Term best = p.terms().front();
  for (const auto &t : p.terms())
    if (t.mono.bits() > best.mono.bits()) best = t;
  return best;
}

// Dense modular gcd (Brown): evaluate x{k-1} at successive field points,
// recurse, and rebuild the image by Newton interpolation, checking the
// candidate by trial division.
inline MultiPoly gcd_rec(const MultiPoly &a, const MultiPoly &b, unsigned k) {
  const auto &f = a.field();
  const unsigned n = a.nvars();
  if (a.is_zero()) return b.monic();
  if (b.is_zero()) return a.monic();
  if (k == 1) return from_univariate(gcd(as_univariate(a, 0), as_univariate(b, 0)), n, 0);

  auto pa = split_last(a, k), pb = split_last(b, k);
  UPoly ca = content_of(pa, f), cb = content_of(pb, f);
  UPoly cont = gcd(ca, cb);
  for (auto &[rest, up] : pa) up = up / ca;
  for (auto &[rest, up] : pb) up = up / cb;
  MultiPoly ap = join_last(f, n, pa, k), bp = join_last(f, n, pb, k);
  MultiPoly cont_poly = from_univariate(cont, n, k - 1);

  // a primitive factor free of the remaining variables means gcd = content
  if (pa.size() == 1 && pa.begin()->first == 0) return cont_poly.monic();
  if (pb.size() == 1 && pb.begin()->first == 0) return cont_poly.monic();

  const UPoly &lca = pa.rbegin()->second, &lcb = pb.rbegin()->second;
  UPoly g = gcd(lca, lcb);
  const int bound = std::min(ap.degree_in(k - 1), bp.degree_in(k - 1)) + g.degree();

  YCoeffs h;             // current interpolant
  UPoly q = UPoly::constant(f, 1);  // product of (y - a_i) over used points
  std::uint64_t lead_rest = 0;
  int used = 0;
  for (std::uint32_t pt = 0; pt < f.prime(); ++pt) {
    if (lca.evaluate(pt) == 0 || lcb.evaluate(pt) == 0) continue;
    MultiPoly image = gcd_rec(ap.specialize(k - 1, pt), bp.specialize(k - 1, pt), k - 1);
    Term lead = lex_leading(image);
    if (lead.mono.is_one()) return cont_poly.monic();
    image = image.scaled(f.mul(g.evaluate(pt), f.inv(lead.coeff)));
    if (used == 0 || lead.mono.bits() < lead_rest) {
      h.clear();
      for (const auto &t : image.terms()) h.emplace(t.mono.bits(), UPoly::constant(f, t.coeff));
      q = UPoly::linear_root(f, pt);
      lead_rest = lead.mono.bits();
      used = 1;
    } else if (lead.mono.bits() > lead_rest) {
      continue;  // unlucky evaluation point
    } else {
      // Newton step: h += (image - h(pt)) * q / q(pt)
      std::map<std::uint64_t, std::uint32_t> target;
      for (const auto &t : image.terms()) target[t.mono.bits()] = t.coeff;
      for (const auto &[rest, up] : h) target.try_emplace(rest, 0);
      std::uint32_t scale = f.inv(q.evaluate(pt));
      bool changed = false;
      for (const auto &[rest, value] : target) {
        auto it = h.try_emplace(rest, f).first;
        std::uint32_t diff = f.sub(value, it->second.evaluate(pt));
        if (!diff) continue;
        changed = true;
        it->second = it->second + q.scaled(f.mul(diff, scale));
      }
      q = q * UPoly::linear_root(f, pt);
      ++used;
      if (!changed || used > bound) {
        YCoeffs cand;
        for (const auto &[rest, up] : h)
          if (!up.is_zero()) cand.emplace(rest, up);
        UPoly cc = content_of(cand, f);
        for (auto &[rest, up] : cand) up = up / cc;
        MultiPoly c = join_last(f, n, cand, k);
        if (divide_exact(ap, c) && divide_exact(bp, c)) return (cont_poly * c).monic();
        if (used > bound + 1) used = 0;  // inconsistent images; start over
      }
    }
  }
  throw std::runtime_error("gcd: ran out of evaluation points in Z/" + std::to_string(f.prime()));
}

}  // namespace detail

/// Greatest common divisor of two multivariate polynomials, normalized to
/// leading coefficient 1 in the deglex order.
inline MultiPoly gcd_multivar(const MultiPoly &f, const MultiPoly &g) {
  if (f.is_zero() && g.is_zero()) throw std::invalid_argument("gcd_multivar: both arguments are zero");
  f.field().check_same(g.field());
  if (f.nvars() != g.nvars()) throw std::invalid_argument("gcd_multivar: variable count mismatch");
  return detail::gcd_rec(f, g, f.nvars());
}

}  // namespace forge
