#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "solvlie/lie_algebra.hpp"
#include "solvlie/spectral.hpp"
#include "solvlie/subspace.hpp"

namespace solvlie {

struct Root {
  RatVector coords;          ///< alpha(A_i) on the a-basis
  std::size_t multiplicity;  ///< dim of the root space
  Subspace space;            ///< root space, ambient coordinates
};

struct IwasawaDecomposition {
  MetricLieAlgebra algebra;
  Subspace a;
  Subspace n;
  RatMatrix a_gram;              ///< gram restricted to the a-basis
  std::vector<Root> roots;       ///< sorted by coords
  RatVector witness_A0;          ///< ambient vector in a, positive on every root
  std::vector<RatMatrix> ad_a;   ///< ad of each a-basis vector, full basis

  std::size_t rank() const { return a.dim(); }

  /// Value of a covector (a-coordinates) on an ambient vector of a.
  Rational evaluate(const RatVector& covector, const RatVector& A) const {
    auto c = a.coordinates(A);
    if (!c) throw InputError("vector does not lie in a");
    return dot(covector, *c);
  }

  /// Index of the root with the given coords, if any.
  std::optional<std::size_t> find_root(const RatVector& coords) const {
    for (std::size_t i = 0; i < roots.size(); ++i)
      if (roots[i].coords == coords) return i;
    return std::nullopt;
  }
};

namespace detail {

/// Strict inequality c . x + d > 0.
struct Strict {
  RatVector c;
  Rational d;
};

inline Strict normalize(Strict s) {
  // scale so the first nonzero coefficient (or d) has absolute value 1
  Rational lead;
  for (const auto& v : s.c)
    if (!v.is_zero()) {
      lead = abs(v);
      break;
    }
  if (lead.is_zero()) lead = s.d.is_zero() ? Rational(1) : abs(s.d);
  for (auto& v : s.c) v = v / lead;
  s.d = s.d / lead;
  return s;
}

/// Exact Fourier-Motzkin elimination for a finite system of strict
/// inequalities. Returns a rational point or nothing when infeasible.
inline std::optional<RatVector> fourier_motzkin(std::vector<Strict> sys, std::size_t nvars) {
  if (nvars == 0) {
    for (const auto& s : sys)
      if (s.d.sign() <= 0) return std::nullopt;
    return RatVector{};
  }
  const std::size_t k = nvars - 1;
  std::vector<Strict> lower, upper, rest;
  for (auto& s : sys) {
    if (s.c[k].sign() > 0) lower.push_back(s);
    else if (s.c[k].sign() < 0) upper.push_back(s);
    else rest.push_back(s);
  }
  // x_k > -(c' x + d)/c_k for lower, x_k < (c' x + d)/|c_k| for upper
  auto bound = [k](const Strict& s) {
    Strict b{RatVector(s.c.begin(), s.c.begin() + static_cast<std::ptrdiff_t>(k)), s.d};
    Rational ck = abs(s.c[k]);
    for (auto& v : b.c) v = v / ck;
    b.d = b.d / ck;
    return b;  // lower: x_k > -(b), upper: x_k < b
  };
  std::vector<Strict> next;
  for (auto& s : rest) next.push_back({RatVector(s.c.begin(), s.c.begin() + static_cast<std::ptrdiff_t>(k)), s.d});
  for (const auto& lo : lower)
    for (const auto& up : upper) {
      Strict l = bound(lo), u = bound(up);
      next.push_back({l.c + u.c, l.d + u.d});
    }
  std::vector<Strict> dedup;
  for (auto& s : next) {
    Strict t = normalize(s);
    bool seen = false;
    for (const auto& o : dedup)
      if (o.c == t.c && o.d == t.d) seen = true;
    if (!seen) dedup.push_back(std::move(t));
  }
  auto head = fourier_motzkin(std::move(dedup), k);
  if (!head) return std::nullopt;
  const RatVector& x = *head;
  std::optional<Rational> lo_max, up_min;
  for (const auto& s : lower) {
    Strict b = bound(s);
    Rational v = -(dot(b.c, x) + b.d);
    if (!lo_max || *lo_max < v) lo_max = v;
  }
  for (const auto& s : upper) {
    Strict b = bound(s);
    Rational v = dot(b.c, x) + b.d;
    if (!up_min || v < *up_min) up_min = v;
  }
  Rational xk;
  if (lo_max && up_min) xk = (*lo_max + *up_min) / Rational(2);
  else if (lo_max) xk = *lo_max + Rational(1);
  else if (up_min) xk = *up_min - Rational(1);
  RatVector out = x;
  out.push_back(xk);
  return out;
}

}  // namespace detail

/// A point of the open cone {x : c_i . x > 0} or nothing when empty.
inline std::optional<RatVector> positive_point(const std::vector<RatVector>& covectors, std::size_t nvars) {
  std::vector<detail::Strict> sys;
  for (const auto& c : covectors) sys.push_back({c, Rational(0)});
  return detail::fourier_motzkin(std::move(sys), nvars);
}

/// Joint eigenspaces of {ad_A} on n, returned as roots sorted by coords.
/// Throws ValidationError("ii") for a zero weight with nonzero eigenspace.
inline std::vector<Root> root_decomposition(const MetricLieAlgebra& L, const Subspace& a, const Subspace& n) {
  std::vector<RatMatrix> family;
  for (const auto& A : a.basis()) family.push_back(restricted_operator(ad_matrix(L, A), n));
  std::vector<Root> roots;
  if (n.is_zero()) return roots;
  for (auto& js : simultaneous_eigenspaces(family, n.dim())) {
    std::vector<RatVector> amb;
    for (const auto& u : js.space) amb.push_back(n.embed(u));
    if (is_zero(js.weight))
      throw ValidationError("ii", "0 is a root: ad_a has a common kernel on n, e.g. " +
                                      combination_label(L.labels(), amb.front()));
    Subspace sp = Subspace::span(L.dim(), amb);
    roots.push_back({js.weight, sp.dim(), std::move(sp)});
  }
  std::sort(roots.begin(), roots.end(), [](const Root& x, const Root& y) { return x.coords < y.coords; });
  return roots;
}

/// Checks the strong Iwasawa conditions clause by clause; errors name the
/// clause ("i" to "iv"). `a_hint` optionally fixes the a-basis (it must span
/// the complement of n). `simple_hint` lists covectors of a presumed simple
/// system; when it is a basis the sum of its dual basis is tried as A0 before
/// falling back to elimination.
inline IwasawaDecomposition verify_strong_iwasawa(const MetricLieAlgebra& L,
                                                  const std::optional<std::vector<RatVector>>& a_hint = {},
                                                  const std::vector<RatVector>& simple_hint = {}) {
  if (!L.gram_nondegenerate()) throw ValidationError("nondegeneracy", "scalar product is degenerate");
  const std::size_t dim = L.dim();
  Subspace n = derived_algebra(L);
  Subspace a = orthogonal_complement(L.gram(), n);
  if (a.dim() + n.dim() != dim || !a.intersection(n).is_zero())
    throw ValidationError("i", "s is not the direct sum of [s,s] and its orthogonal complement");
  if (a_hint) {
    Subspace h = Subspace::with_basis(dim, *a_hint);
    if (!h.same_span(a)) throw ValidationError("i", "declared a-basis does not span the complement of [s,s]");
    a = h;
  }
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = i + 1; j < a.dim(); ++j)
      if (!is_zero(bracket(L, a.basis()[i], a.basis()[j])))
        throw ValidationError("i", "a is not abelian: [" + combination_label(L.labels(), a.basis()[i]) + ", " +
                                       combination_label(L.labels(), a.basis()[j]) + "] != 0");

  std::vector<RatMatrix> ads;
  for (const auto& A : a.basis()) {
    RatMatrix ad = ad_matrix(L, A);
    RatMatrix g_ad = L.gram() * ad;
    if (!(g_ad == g_ad.transpose()))
      throw ValidationError("ii", "ad_A is not symmetric for A = " + combination_label(L.labels(), A));
    ads.push_back(std::move(ad));
  }
  if (!n.is_zero() && !a.is_zero()) {
    // A -> ad_A injective: the ad matrices must be independent
    std::vector<RatVector> flat;
    for (const auto& m : ads) {
      RatVector f;
      for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) f.push_back(m(i, j));
      flat.push_back(std::move(f));
    }
    if (rank(RatMatrix::from_rows(flat, dim * dim)) != a.dim())
      throw ValidationError("ii", "ad_A vanishes for some nonzero A in a");
  }

  RatMatrix ga = restricted_gram(L.gram(), a);
  if (!is_positive_definite(ga)) throw ValidationError("iv", "scalar product is not positive definite on a");

  std::vector<Root> roots = root_decomposition(L, a, n);
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (determinant(restricted_gram(L.gram(), roots[i].space)).is_zero())
      throw ValidationError("ii", "scalar product degenerate on a root space");
    for (std::size_t j = i + 1; j < roots.size(); ++j) {
      RatMatrix cross = roots[i].space.basis_matrix().transpose() * L.gram() * roots[j].space.basis_matrix();
      if (!cross.is_zero()) throw ValidationError("ii", "root spaces are not orthogonal");
    }
  }

  std::vector<RatVector> covs;
  for (const auto& r : roots) covs.push_back(r.coords);
  std::optional<RatVector> w;
  if (simple_hint.size() == a.dim() && !a.is_zero()) {
    if (auto inv = try_inverse(RatMatrix::from_rows(simple_hint, a.dim()))) {
      RatVector sum = zero_vector(a.dim());
      for (std::size_t j = 0; j < a.dim(); ++j) sum = sum + inv->column(j);
      bool positive = true;
      for (const auto& c : covs)
        if (dot(c, sum).sign() <= 0) positive = false;
      if (positive) w = sum;
    }
  }
  if (!w) w = positive_point(covs, a.dim());
  if (!w) throw ValidationError("iii", "no A0 in a is positive on every root");
  RatVector A0 = a.embed(*w);

  return IwasawaDecomposition{L, std::move(a), std::move(n), std::move(ga), std::move(roots), std::move(A0),
                              std::move(ads)};
}

// ---------------------------------------------------------------------------

/// H_alpha in a (ambient coordinates) with <H_alpha, A> = alpha(A).
inline RatVector root_vector(const IwasawaDecomposition& dec, const RatVector& alpha) {
  if (alpha.size() != dec.rank()) throw InputError("covector has wrong length");
  return dec.a.embed(solve_unique(dec.a_gram, alpha));
}

/// <alpha, beta> := <H_alpha, H_beta>.
inline Rational root_pairing(const IwasawaDecomposition& dec, const RatVector& alpha, const RatVector& beta) {
  return dec.algebra.inner(root_vector(dec, alpha), root_vector(dec, beta));
}

/// Covector (a-coordinates) metrically dual to A in a.
inline RatVector covector_of(const IwasawaDecomposition& dec, const RatVector& A) {
  auto c = dec.a.coordinates(A);
  if (!c) throw InputError("vector does not lie in a");
  return dec.a_gram * *c;
}

/// B_j in a with alpha_i(B_j) = delta_ij.
inline std::vector<RatVector> dual_basis(const IwasawaDecomposition& dec, const std::vector<RatVector>& lambda) {
  const std::size_t r = dec.rank();
  if (lambda.size() != r) throw ValidationError("basis", "need exactly dim a roots");
  auto inv = try_inverse(RatMatrix::from_rows(lambda, r));
  if (!inv) throw ValidationError("basis", "roots are not a basis of a*");
  std::vector<RatVector> out;
  for (std::size_t j = 0; j < r; ++j) out.push_back(dec.a.embed(inv->column(j)));
  return out;
}

/// s_beta(A) = A - 2 <A, H_beta>/<H_beta, H_beta> H_beta.
inline RatVector reflect(const IwasawaDecomposition& dec, const RatVector& beta, const RatVector& A) {
  RatVector h = root_vector(dec, beta);
  Rational hh = dec.algebra.inner(h, h);
  if (hh.is_zero()) throw InputError("reflection in a zero root");
  return A - (Rational(2) * dec.algebra.inner(A, h) / hh) * h;
}

/// Dual reflection on covectors, conjugated through root vectors.
inline RatVector reflect_covector(const IwasawaDecomposition& dec, const RatVector& beta, const RatVector& gamma) {
  return covector_of(dec, reflect(dec, beta, root_vector(dec, gamma)));
}

// ---------------------------------------------------------------------------

struct SimpleSystem {
  std::vector<std::size_t> lambda;         ///< indices into dec.roots
  std::vector<std::string> names;          ///< label of each simple root
  std::vector<RatVector> dual_basis;       ///< B_alpha_i, ambient
  std::vector<RatVector> coefficients;     ///< per root of dec.roots, expansion in lambda
  std::vector<std::string> root_labels;    ///< per root of dec.roots
  std::vector<std::size_t> order;          ///< root indices sorted by coefficients

  std::optional<std::size_t> index_of(const std::string& name) const {
    for (std::size_t i = 0; i < names.size(); ++i)
      if (names[i] == name) return i;
    return std::nullopt;
  }
};

struct NamedRoot {
  std::string name;
  RatVector coords;
  friend bool operator==(const NamedRoot&, const NamedRoot&) = default;
};

inline std::string coefficient_label(const std::vector<std::string>& names, const RatVector& c) {
  std::string s;
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i].is_zero()) continue;
    if (!s.empty()) s += "+";
    if (!(c[i] == Rational(1))) s += c[i].str();
    s += names[i];
  }
  return s.empty() ? "0" : s;
}

/// Checks that the named roots form a simple system of dec's root set.
/// `extra_names` relabels further roots (e.g. d for the imaginary root).
inline SimpleSystem verify_simple_system(const IwasawaDecomposition& dec, const std::vector<NamedRoot>& lambda,
                                         const std::vector<NamedRoot>& extra_names = {}) {
  SimpleSystem sys;
  std::vector<RatVector> covs;
  for (const auto& nr : lambda) {
    if (nr.coords.size() != dec.rank()) throw InputError("simple root " + nr.name + " has wrong length");
    auto idx = dec.find_root(nr.coords);
    if (!idx) throw ValidationError("simple", nr.name + " = " + to_string(nr.coords) + " is not a root");
    if (sys.index_of(nr.name)) throw InputError("simple root name " + nr.name + " repeated");
    sys.lambda.push_back(*idx);
    sys.names.push_back(nr.name);
    covs.push_back(nr.coords);
  }
  if (covs.size() != dec.rank() || rank(RatMatrix::from_rows(covs, dec.rank())) != dec.rank())
    throw ValidationError("simple", "simple roots are not a basis of a*");
  sys.dual_basis = dual_basis(dec, covs);
  RatMatrix m = RatMatrix::from_columns(covs, dec.rank());
  for (const auto& r : dec.roots) {
    RatVector c = solve_unique(m, r.coords);
    for (const auto& v : c)
      if (v.sign() < 0 || !v.is_integer())
        throw ValidationError("simple", "root " + to_string(r.coords) + " has coefficients " + to_string(c));
    sys.coefficients.push_back(c);
    sys.root_labels.push_back(coefficient_label(sys.names, c));
  }
  for (std::size_t i = 0; i < lambda.size(); ++i) sys.root_labels[sys.lambda[i]] = lambda[i].name;
  for (const auto& nr : extra_names) {
    auto idx = dec.find_root(nr.coords);
    if (!idx) throw ValidationError("simple", nr.name + " = " + to_string(nr.coords) + " is not a root");
    sys.root_labels[*idx] = nr.name;
  }
  for (std::size_t i = 0; i < dec.roots.size(); ++i) sys.order.push_back(i);
  std::sort(sys.order.begin(), sys.order.end(),
            [&](std::size_t x, std::size_t y) { return sys.coefficients[x] < sys.coefficients[y]; });
  return sys;
}

/// Roots that are not a sum of two roots. A suggestion only.
inline std::vector<RatVector> suggest_simple_system(const IwasawaDecomposition& dec) {
  std::vector<RatVector> out;
  for (const auto& r : dec.roots) {
    bool decomposable = false;
    for (const auto& p : dec.roots)
      if (dec.find_root(r.coords - p.coords)) decomposable = true;
    if (!decomposable) out.push_back(r.coords);
  }
  return out;
}

}  // namespace solvlie
