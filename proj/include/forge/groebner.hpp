#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "forge/matrix.hpp"
#include "forge/poly.hpp"
#include "forge/rng.hpp"
#include "forge/upoly.hpp"

namespace forge {

namespace detail {

// Polynomials inside the Groebner engine are plain term vectors sorted by the
// active monomial order, leading term first.
using TermVec = std::vector<Term>;

inline TermVec sorted_terms(const MultiPoly &p, const MonomialOrder &order) {
  TermVec t = p.terms();
  std::sort(t.begin(), t.end(), [&](const Term &a, const Term &b) { return order.greater(a.mono, b.mono); });
  return t;
}

inline void make_monic(TermVec &p, const PrimeField &f) {
  if (p.empty() || p.front().coeff == 1) return;
  std::uint32_t inv = f.inv(p.front().coeff);
  for (auto &t : p) t.coeff = f.mul(t.coeff, inv);
}

// out = p[pfrom..] - c * m * g[gfrom..]
inline void sub_multiple(const TermVec &p, std::size_t pfrom, const TermVec &g, std::size_t gfrom, Monomial m,
                         std::uint32_t c, const MonomialOrder &order, const PrimeField &f, TermVec &out) {
  out.clear();
  out.reserve(p.size() - pfrom + g.size() - gfrom);
  const std::uint32_t nc = f.neg(c);
  std::size_t i = pfrom, j = gfrom;
  while (i < p.size() && j < g.size()) {
    Monomial gm = g[j].mono * m;
    int cmp = order.compare(p[i].mono, gm);
    if (cmp > 0) {
      out.push_back(p[i++]);
    } else if (cmp < 0) {
      out.push_back({gm, f.mul(nc, g[j].coeff)});
      ++j;
    } else {
      std::uint32_t v = f.add(p[i].coeff, f.mul(nc, g[j].coeff));
      if (v) out.push_back({gm, v});
      ++i;
      ++j;
    }
  }
  for (; i < p.size(); ++i) out.push_back(p[i]);
  for (; j < g.size(); ++j) out.push_back({g[j].mono * m, f.mul(nc, g[j].coeff)});
}

struct Reducers {
  std::vector<const TermVec *> polys;  // monic
  std::vector<Monomial> leads;
  std::vector<unsigned> sugar;

  void add(const TermVec *p, unsigned s) {
    polys.push_back(p);
    leads.push_back(p->front().mono);
    sugar.push_back(s);
  }

  int find(Monomial m) const {
    for (std::size_t k = 0; k < leads.size(); ++k)
      if (leads[k].divides(m)) return static_cast<int>(k);
    return -1;
  }
};

// Full reduction of p by the reducers. The remainder is made monic unless
// `monic` is false, in which case it is the exact remainder.
inline TermVec reduce_full(TermVec p, const Reducers &red, const MonomialOrder &order, const PrimeField &f,
                           unsigned *sugar = nullptr, bool monic = true) {
  TermVec result, buf;
  std::size_t pos = 0;
  while (pos < p.size()) {
    const Term t = p[pos];
    int k = red.find(t.mono);
    if (k < 0) {
      result.push_back(t);
      ++pos;
      continue;
    }
    Monomial m = t.mono / red.leads[k];
    if (sugar) *sugar = std::max(*sugar, red.sugar[k] + m.degree());
    sub_multiple(p, pos + 1, *red.polys[k], 1, m, t.coeff, order, f, buf);
    std::swap(p, buf);
    pos = 0;
  }
  if (monic) make_monic(result, f);
  return result;
}

}  // namespace detail

/// Reduced Groebner basis of an ideal with respect to a fixed monomial order.
class GroebnerBasis {
public:
  GroebnerBasis(const PrimeField &f, unsigned nvars, MonomialOrder order, std::vector<detail::TermVec> elems)
      : field_(f), nvars_(nvars), order_(order), elems_(std::move(elems)) {
    for (const auto &e : elems_) reducers_.add(&e, 0);
  }
  GroebnerBasis(const GroebnerBasis &o) : GroebnerBasis(o.field_, o.nvars_, o.order_, o.elems_) {}
  GroebnerBasis &operator=(const GroebnerBasis &o) {
    if (this != &o) *this = GroebnerBasis(o);
    return *this;
  }
  GroebnerBasis(GroebnerBasis &&) = default;
  GroebnerBasis &operator=(GroebnerBasis &&) = default;

  const PrimeField &field() const { return field_; }
  unsigned nvars() const { return nvars_; }
  const MonomialOrder &order() const { return order_; }
  std::size_t size() const { return elems_.size(); }

  std::vector<MultiPoly> polys() const {
    std::vector<MultiPoly> out;
    for (const auto &e : elems_) out.push_back(MultiPoly::from_terms(field_, nvars_, e));
    return out;
  }

  std::vector<Monomial> leading_monomials() const { return reducers_.leads; }

  /// Leading term first in the basis order.
  const std::vector<detail::TermVec> &elements() const { return elems_; }

  bool is_unit() const { return elems_.size() == 1 && elems_[0].front().mono.is_one(); }

  /// Remainder of p on division by the basis (linear in p).
  MultiPoly normal_form(const MultiPoly &p) const {
    field_.check_same(p.field());
    auto r = detail::reduce_full(detail::sorted_terms(p, order_), reducers_, order_, field_, nullptr, false);
    return MultiPoly::from_terms(field_, nvars_, std::move(r));
  }

  bool contains(const MultiPoly &p) const { return normal_form(p).is_zero(); }

private:
  PrimeField field_;
  unsigned nvars_;
  MonomialOrder order_;
  std::vector<detail::TermVec> elems_;
  detail::Reducers reducers_;
};

struct GroebnerStats {
  std::size_t pairs_processed = 0;
  std::size_t zero_reductions = 0;
  std::size_t basis_size = 0;
};

/// Buchberger's algorithm with the sugar selection strategy and the
/// Gebauer-Moeller pair criteria. Returns the reduced basis.
inline GroebnerBasis groebner_basis(std::span<const MultiPoly> gens, MonomialOrder order,
                                    GroebnerStats *stats = nullptr) {
  if (gens.empty()) throw std::invalid_argument("groebner_basis: no generators");
  const PrimeField f = gens.front().field();
  const unsigned n = gens.front().nvars();
  using detail::TermVec;

  struct Elem {
    TermVec p;
    unsigned sugar;
    bool active;
  };
  struct Pair {
    std::size_t i, j;
    Monomial lcm;
    unsigned sugar;
  };
  std::vector<std::unique_ptr<Elem>> G;
  std::vector<Pair> pairs;
  GroebnerStats local;

  auto lead = [&](std::size_t i) { return G[i]->p.front().mono; };
  auto pair_sugar = [&](std::size_t i, std::size_t j, Monomial l) {
    unsigned si = G[i]->sugar + l.degree() - lead(i).degree();
    unsigned sj = G[j]->sugar + l.degree() - lead(j).degree();
    return std::max(si, sj);
  };

  auto active_reducers = [&] {
    detail::Reducers r;
    for (const auto &e : G)
      if (e->active) r.add(&e->p, e->sugar);
    return r;
  };

  // Gebauer-Moeller update with the new element h = G.back()
  auto update = [&] {
    const std::size_t h = G.size() - 1;
    const Monomial lh = lead(h);
    std::vector<Pair> C;
    for (std::size_t g = 0; g < h; ++g)
      if (G[g]->active) {
        Monomial l = Monomial::lcm(lh, lead(g));
        C.push_back({g, h, l, pair_sugar(g, h, l)});
      }
    // chain criterion on the new pairs
    std::vector<Pair> D;
    for (std::size_t a = 0; a < C.size(); ++a) {
      const Pair &pa = C[a];
      bool keep = Monomial::coprime(lh, lead(pa.i));
      if (!keep) {
        keep = true;
        for (std::size_t b = a + 1; b < C.size() && keep; ++b)
          if (C[b].lcm.divides(pa.lcm)) keep = false;
        for (std::size_t b = 0; b < D.size() && keep; ++b)
          if (D[b].lcm.divides(pa.lcm)) keep = false;
      }
      if (keep) D.push_back(pa);
    }
    // product criterion
    std::vector<Pair> E;
    for (const auto &pr : D)
      if (!Monomial::coprime(lh, lead(pr.i))) E.push_back(pr);
    // old pairs made redundant by h
    std::vector<Pair> kept;
    kept.reserve(pairs.size() + E.size());
    for (const auto &pr : pairs) {
      bool drop = lh.divides(pr.lcm) && !(Monomial::lcm(lead(pr.i), lh) == pr.lcm) &&
                  !(Monomial::lcm(lh, lead(pr.j)) == pr.lcm);
      if (!drop) kept.push_back(pr);
    }
    for (auto &pr : E) kept.push_back(pr);
    pairs = std::move(kept);
    for (std::size_t g = 0; g < h; ++g)
      if (G[g]->active && lh.divides(lead(g))) G[g]->active = false;
  };

  auto insert = [&](TermVec p, unsigned sugar) {
    G.push_back(std::make_unique<Elem>(Elem{std::move(p), sugar, true}));
    update();
  };

  for (const auto &g : gens) {
    f.check_same(g.field());
    if (g.nvars() != n) throw std::invalid_argument("groebner_basis: generators in different rings");
    if (g.is_zero()) continue;
    unsigned sugar = static_cast<unsigned>(g.degree());
    auto red = active_reducers();
    auto r = detail::reduce_full(detail::sorted_terms(g, order), red, order, f, &sugar);
    if (!r.empty()) insert(std::move(r), sugar);
  }

  while (!pairs.empty()) {
    std::size_t best = 0;
    for (std::size_t k = 1; k < pairs.size(); ++k) {
      const auto &a = pairs[k], &b = pairs[best];
      if (a.sugar < b.sugar || (a.sugar == b.sugar && order.compare(a.lcm, b.lcm) < 0)) best = k;
    }
    Pair pr = pairs[best];
    pairs[best] = pairs.back();
    pairs.pop_back();
    ++local.pairs_processed;

    const TermVec &pi = G[pr.i]->p, &pj = G[pr.j]->p;
    TermVec s;
    // (lcm/lead_i) * p_i - (lcm/lead_j) * p_j, leading terms cancel
    TermVec shifted_i;
    shifted_i.reserve(pi.size());
    Monomial mi = pr.lcm / pi.front().mono;
    for (std::size_t k = 1; k < pi.size(); ++k) shifted_i.push_back({pi[k].mono * mi, pi[k].coeff});
    detail::sub_multiple(shifted_i, 0, pj, 1, pr.lcm / pj.front().mono, 1, order, f, s);

    unsigned sugar = pr.sugar;
    auto red = active_reducers();
    auto h = detail::reduce_full(std::move(s), red, order, f, &sugar);
    if (h.empty()) {
      ++local.zero_reductions;
      continue;
    }
    insert(std::move(h), sugar);
  }

  // minimal basis, then inter-reduce the tails
  std::vector<TermVec> basis;
  for (const auto &e : G)
    if (e->active) basis.push_back(e->p);
  std::sort(basis.begin(), basis.end(),
            [&](const TermVec &x, const TermVec &y) { return order.compare(x.front().mono, y.front().mono) < 0; });
  std::vector<TermVec> minimal;
  for (auto &b : basis) {
    bool redundant = false;
    for (const auto &m : minimal)
      if (m.front().mono.divides(b.front().mono)) redundant = true;
    if (!redundant) minimal.push_back(std::move(b));
  }
  std::vector<TermVec> reduced(minimal.size());
  for (std::size_t k = 0; k < minimal.size(); ++k) {
    detail::Reducers others;
    for (std::size_t l = 0; l < minimal.size(); ++l)
      if (l != k) others.add(&minimal[l], 0);
    TermVec head{minimal[k].front()};
    TermVec tail(minimal[k].begin() + 1, minimal[k].end());
    auto rem = detail::reduce_full(std::move(tail), others, order, f, nullptr, false);
    head.insert(head.end(), rem.begin(), rem.end());
    reduced[k] = std::move(head);
  }
  local.basis_size = reduced.size();
  if (stats) *stats = local;
  return GroebnerBasis(f, n, order, std::move(reduced));
}

/// Homogeneous ideal with a lazily computed grevlex Groebner basis. The cache
/// is filled on first use; a single instance must not be queried from several
/// threads at once.
class GradedIdeal {
public:
  GradedIdeal(const PrimeField &f, unsigned nvars, std::vector<MultiPoly> gens)
      : field_(f), nvars_(nvars), gens_(std::move(gens)) {
    for (const auto &g : gens_) {
      field_.check_same(g.field());
      if (g.nvars() != nvars_) throw std::invalid_argument("GradedIdeal: generator in a different ring");
      if (!g.is_homogeneous()) throw std::invalid_argument("GradedIdeal: generators must be homogeneous");
    }
  }

  const PrimeField &field() const { return field_; }
  unsigned nvars() const { return nvars_; }
  const std::vector<MultiPoly> &generators() const { return gens_; }

  const GroebnerBasis &groebner() const {
    if (!gb_) gb_ = std::make_shared<GroebnerBasis>(compute());
    return *gb_;
  }

  bool has_cached_basis() const { return gb_ != nullptr; }

  bool contains(const MultiPoly &p) const { return groebner().contains(p); }
  bool is_unit() const { return groebner().is_unit(); }

private:
  GroebnerBasis compute() const {
    std::vector<MultiPoly> nonzero;
    for (const auto &g : gens_)
      if (!g.is_zero()) nonzero.push_back(g);
    if (nonzero.empty()) return GroebnerBasis(field_, nvars_, MonomialOrder::grevlex(), {});
    return groebner_basis(nonzero, MonomialOrder::grevlex());
  }

  PrimeField field_;
  unsigned nvars_;
  std::vector<MultiPoly> gens_;
  mutable std::shared_ptr<const GroebnerBasis> gb_;
};

inline GroebnerBasis buchberger(const GradedIdeal &I, MonomialOrder order) {
  if (order == MonomialOrder::grevlex()) return I.groebner();
  std::vector<MultiPoly> nonzero;
  for (const auto &g : I.generators())
    if (!g.is_zero()) nonzero.push_back(g);
  if (nonzero.empty()) return GroebnerBasis(I.field(), I.nvars(), order, {});
  return groebner_basis(nonzero, order);
}

inline bool ideal_equals(const GradedIdeal &I, const GradedIdeal &J) {
  if (I.nvars() != J.nvars()) return false;
  for (const auto &g : J.generators())
    if (!I.contains(g)) return false;
  for (const auto &g : I.generators())
    if (!J.contains(g)) return false;
  return true;
}

namespace detail {

// Moves x0..x{n-1} to x1..xn (or back) so that a new variable can sit in
// front as x0, where the elimination order wants it.
inline MultiPoly shift_up(const MultiPoly &p) {
  if (p.nvars() + 1 > kMaxVars) throw std::invalid_argument("elimination needs one spare variable");
  std::vector<Term> t;
  for (const auto &term : p.terms()) t.push_back({Monomial(term.mono.bits() >> 8), term.coeff});
  return MultiPoly::from_terms(p.field(), p.nvars() + 1, std::move(t));
}

inline MultiPoly shift_down(const MultiPoly &p) {
  std::vector<Term> t;
  for (const auto &term : p.terms()) {
    if (term.mono.exponent(0)) throw std::logic_error("shift_down: eliminated variable still present");
    t.push_back({Monomial(term.mono.bits() << 8), term.coeff});
  }
  return MultiPoly::from_terms(p.field(), p.nvars() - 1, std::move(t));
}

// Elements of an elimination basis free of x0, moved back down.
inline std::vector<MultiPoly> eliminate_first(const std::vector<MultiPoly> &gens) {
  auto gb = groebner_basis(gens, MonomialOrder::elimination(1));
  std::vector<MultiPoly> out;
  for (const auto &g : gb.polys()) {
    bool free = true;
    for (const auto &t : g.terms())
      if (t.mono.exponent(0)) free = false;
    if (free) out.push_back(shift_down(g));
  }
  return out;
}

}  // namespace detail

/// I : f^infinity, as (I + (1 - t f)) intersected with the original ring.
inline GradedIdeal colon_power(const GradedIdeal &I, const MultiPoly &f) {
  const auto &F = I.field();
  const unsigned n = I.nvars();
  std::vector<MultiPoly> gens;
  for (const auto &g : I.generators())
    if (!g.is_zero()) gens.push_back(detail::shift_up(g));
  auto t = MultiPoly::variable(F, n + 1, 0);
  gens.push_back(MultiPoly::constant(F, n + 1, 1) - t * detail::shift_up(f));
  return GradedIdeal(F, n, detail::eliminate_first(gens));
}

/// I cap J, as (s I + (1 - s) J) intersected with the original ring.
inline GradedIdeal intersect(const GradedIdeal &I, const GradedIdeal &J) {
  const auto &F = I.field();
  const unsigned n = I.nvars();
  auto s = MultiPoly::variable(F, n + 1, 0);
  auto one_minus_s = MultiPoly::constant(F, n + 1, 1) - s;
  std::vector<MultiPoly> gens;
  for (const auto &g : I.generators())
    if (!g.is_zero()) gens.push_back(s * detail::shift_up(g));
  for (const auto &g : J.generators())
    if (!g.is_zero()) gens.push_back(one_minus_s * detail::shift_up(g));
  if (gens.empty()) return GradedIdeal(F, n, {});
  return GradedIdeal(F, n, detail::eliminate_first(gens));
}

/// I : (x0, ..., x{n-1})^infinity, as the intersection of the I : x_i^infinity.
inline GradedIdeal saturate_irrelevant(const GradedIdeal &I) {
  std::optional<GradedIdeal> acc;
  for (unsigned i = 0; i < I.nvars(); ++i) {
    auto colon = colon_power(I, MultiPoly::variable(I.field(), I.nvars(), i));
    acc = acc ? intersect(*acc, colon) : colon;
  }
  return *acc;
}

/// Numerator N(t) of the Hilbert series N(t) / (1 - t)^n of R / (gens) for a
/// monomial ideal, by pivoting on pure powers of the most frequent variable.
inline std::vector<long long> hilbert_numerator(std::vector<Monomial> gens, unsigned nvars) {
  // minimalize
  std::sort(gens.begin(), gens.end(), [](Monomial a, Monomial b) {
    return a.degree() != b.degree() ? a.degree() < b.degree() : a.bits() < b.bits();
  });
  std::vector<Monomial> mins;
  for (auto g : gens) {
    bool redundant = false;
    for (auto m : mins)
      if (m.divides(g)) {
        redundant = true;
        break;
      }
    if (!redundant) mins.push_back(g);
  }
  auto times_power = [](std::vector<long long> a, unsigned d, long long sign) {
    std::vector<long long> out(a.size() + d, 0);
    for (std::size_t i = 0; i < a.size(); ++i) out[i + d] += sign * a[i];
    return out;
  };
  auto add = [](std::vector<long long> a, const std::vector<long long> &b) {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] += b[i];
    return a;
  };
  if (mins.empty()) return {1};
  if (mins.front().is_one()) return {0};

  // base case: every generator a pure power, or pairwise coprime
  bool coprime = true;
  for (std::size_t a = 0; a < mins.size() && coprime; ++a)
    for (std::size_t b = a + 1; b < mins.size() && coprime; ++b)
      if (!Monomial::coprime(mins[a], mins[b])) coprime = false;
  if (coprime) {
    std::vector<long long> r{1};
    for (auto m : mins) r = add(r, times_power(r, m.degree(), -1));
    return r;
  }

  unsigned best_var = 0, best_count = 0;
  for (unsigned v = 0; v < nvars; ++v) {
    unsigned count = 0;
    for (auto m : mins)
      if (m.exponent(v)) ++count;
    if (count > best_count) best_count = count, best_var = v;
  }
  std::vector<unsigned> exps;
  for (auto m : mins)
    if (m.exponent(best_var)) exps.push_back(m.exponent(best_var));
  std::sort(exps.begin(), exps.end());
  unsigned e = exps[(exps.size() - 1) / 2];
  Monomial pivot = Monomial::variable(best_var, e);

  // N(I) = N(I + (p)) + t^deg(p) N(I : p)
  std::vector<Monomial> plus = mins, colon;
  plus.push_back(pivot);
  for (auto m : mins) colon.push_back(Monomial::lcm(m, pivot) / pivot);
  return add(hilbert_numerator(std::move(plus), nvars), times_power(hilbert_numerator(std::move(colon), nvars), e, 1));
}

struct CodimDegree {
  unsigned codim;
  unsigned long long degree;
  friend bool operator==(const CodimDegree &, const CodimDegree &) = default;
};

/// Codimension and degree read off the Hilbert series of the initial ideal.
/// The unit ideal is reported as codimension nvars + 1 and degree 0.
inline CodimDegree codim_degree(const GradedIdeal &I) {
  const auto &gb = I.groebner();
  const unsigned n = I.nvars();
  if (gb.is_unit()) return {n + 1, 0};
  auto N = hilbert_numerator(gb.leading_monomials(), n);
  unsigned k = 0;
  // divide by (1 - t) while t = 1 is a root
  while (true) {
    long long at_one = 0;
    for (auto c : N) at_one += c;
    if (at_one != 0) return {k, static_cast<unsigned long long>(at_one < 0 ? -at_one : at_one)};
    std::vector<long long> q(N.size() - 1, 0);
    // N = (1 - t) q  =>  q_i = sum_{j <= i} N_j
    long long run = 0;
    for (std::size_t i = 0; i + 1 < N.size(); ++i) {
      run += N[i];
      q[i] = run;
    }
    N = std::move(q);
    ++k;
  }
}

struct RadicalCheck {
  bool radical = false;
  unsigned attempts = 0;
  unsigned eliminant_degree = 0;
};

class ShapePositionFailure : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

inline constexpr unsigned kRadicalRetryBudget = 8;

namespace detail {

// Standard monomials in x{first}..x{nvars-1} of a zero-dimensional basis, or
// nullopt if there are more than `cap` of them.
inline std::optional<std::vector<Monomial>> standard_monomials(const GroebnerBasis &gb, unsigned first,
                                                               unsigned nvars, std::size_t cap) {
  const auto leads = gb.leading_monomials();
  auto is_standard = [&](Monomial m) {
    for (auto l : leads)
      if (l.divides(m)) return false;
    return true;
  };
  std::vector<Monomial> out;
  std::unordered_set<std::uint64_t> seen;
  if (!is_standard(Monomial{})) return out;
  out.push_back(Monomial{});
  seen.insert(0);
  for (std::size_t k = 0; k < out.size(); ++k)
    for (unsigned v = first; v < nvars; ++v) {
      Monomial m = out[k] * Monomial::variable(v);
      if (seen.count(m.bits()) || !is_standard(m)) continue;
      seen.insert(m.bits());
      out.push_back(m);
      if (out.size() > cap) return std::nullopt;
    }
  return out;
}

}  // namespace detail

/// Radical test for a zero-dimensional projective scheme of degree N.
/// After a random change of coordinates the chart x0 = 1 must contain all N
/// points; the minimal polynomial h of the last coordinate on the affine
/// coordinate ring is then the shape-position eliminant. The ideal is radical
/// iff deg h = N and h is squarefree. A non-squarefree h already proves the
/// ideal is not radical; deg h < N means the coordinates were not generic and
/// the attempt is repeated.
inline RadicalCheck is_radical_zero_dim_detailed(const GradedIdeal &I, Rng &rng,
                                                 unsigned budget = kRadicalRetryBudget) {
  const auto &F = I.field();
  const unsigned n = I.nvars();
  auto cd = codim_degree(I);
  if (cd.codim != n - 1) throw std::invalid_argument("is_radical_zero_dim: ideal does not define a finite set of points");
  const auto N = static_cast<std::size_t>(cd.degree);
  RadicalCheck out;
  for (unsigned attempt = 1; attempt <= budget; ++attempt) {
    out.attempts = attempt;
    ScalarMatrix change(F, n, n);
    do {
      for (unsigned i = 0; i < n; ++i)
        for (unsigned j = 0; j < n; ++j) change(i, j) = rng.residue(F);
    } while (rank(change) < n);
    // x_i -> sum_j change(i, j) x_j, then x0 -> 1
    std::vector<MultiPoly> images;
    for (unsigned i = 0; i < n; ++i) {
      MultiPoly img = MultiPoly::constant(F, n, change(i, 0));
      for (unsigned j = 1; j < n; ++j) img += MultiPoly::variable(F, n, j).scaled(change(i, j));
      images.push_back(std::move(img));
    }
    std::vector<MultiPoly> affine;
    for (const auto &g : I.generators())
      if (!g.is_zero()) affine.push_back(g.substitute(images));
    auto gb = groebner_basis(affine, MonomialOrder::grevlex());
    auto basis = detail::standard_monomials(gb, 1, n, N);
    if (!basis || basis->size() != N) continue;  // the chart missed some points

    // minimal polynomial of x_{n-1} by linear dependence of its powers
    std::unordered_map<std::uint64_t, std::size_t> index;
    for (std::size_t k = 0; k < N; ++k) index.emplace((*basis)[k].bits(), k);
    auto coords = [&](const MultiPoly &p) {
      std::vector<std::uint32_t> v(N, 0);
      for (const auto &t : p.terms()) v[index.at(t.mono.bits())] = t.coeff;
      return v;
    };
    const auto last = MultiPoly::variable(F, n, n - 1);
    std::vector<std::vector<std::uint32_t>> powers;
    MultiPoly cur = MultiPoly::constant(F, n, 1);
    std::optional<UPoly> h;
    for (std::size_t k = 0; k <= N; ++k) {
      powers.push_back(coords(cur));
      // columns = powers so far; a kernel vector is a relation among them
      ScalarMatrix m(F, N, powers.size());
      for (std::size_t c = 0; c < powers.size(); ++c)
        for (std::size_t r = 0; r < N; ++r) m(r, c) = powers[c][r];
      auto ker = kernel_basis(m);
      if (!ker.empty()) {
        h = UPoly(F, ker.front()).monic();
        break;
      }
      cur = gb.normal_form(cur * last);
    }
    if (!h) throw std::logic_error("is_radical_zero_dim: no relation among N+1 powers");
    out.eliminant_degree = static_cast<unsigned>(h->degree());
    if (!is_squarefree(*h)) {
      out.radical = false;
      return out;
    }
    if (static_cast<std::size_t>(h->degree()) == N) {
      out.radical = true;
      return out;
    }
  }
  throw ShapePositionFailure("is_radical_zero_dim: no shape position after " + std::to_string(budget) +
                             " random coordinate changes");
}

inline bool is_radical_zero_dim(const GradedIdeal &I, Rng &rng) { return is_radical_zero_dim_detailed(I, rng).radical; }

}  // namespace forge
