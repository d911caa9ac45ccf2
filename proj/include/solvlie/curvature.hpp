#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "solvlie/iwasawa.hpp"
#include "solvlie/lie_algebra.hpp"

namespace solvlie {

/// Ricci endomorphism of a nilpotent metric Lie algebra on its own basis:
///   Ric = 1/4 sum g^ij ad_i ad*_j - 1/2 sum g^ij ad*_i ad_j
/// where g^ij is the inverse gram. No orthonormal basis is needed.
inline RatMatrix ricci_nilpotent(const MetricLieAlgebra& N) {
  const std::size_t n = N.dim();
  const RatMatrix& g = N.gram();
  const RatMatrix& gi = N.gram_inverse();
  std::vector<RatMatrix> star;
  star.reserve(n);
  for (std::size_t i = 0; i < n; ++i) star.push_back(gi * N.ad_basis(i).transpose() * g);
  RatMatrix first(n, n), second(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    RatMatrix s_i(n, n), a_i(n, n);  // sum_j g^ij ad*_j and sum_j g^ij ad_j
    for (std::size_t j = 0; j < n; ++j) {
      if (gi(i, j).is_zero()) continue;
      s_i += gi(i, j) * star[j];
      a_i += gi(i, j) * N.ad_basis(j);
    }
    first += N.ad_basis(i) * s_i;
    second += star[i] * a_i;
  }
  return Rational(1, 4) * first - Rational(1, 2) * second;
}

/// The vector with <H, X> = tr ad_X.
inline RatVector trace_vector(const MetricLieAlgebra& L) {
  RatVector t(L.dim());
  for (std::size_t i = 0; i < L.dim(); ++i) t[i] = trace(L.ad_basis(i));
  return L.gram_inverse() * t;
}

/// Mean curvature vector, computed from traces and checked against
/// sum over roots of (dim n_alpha) H_alpha.
inline RatVector mean_curvature(const IwasawaDecomposition& dec) {
  RatVector h = trace_vector(dec.algebra);
  RatVector via_roots = zero_vector(dec.algebra.dim());
  for (const auto& r : dec.roots)
    via_roots = via_roots + Rational(static_cast<long>(r.multiplicity)) * root_vector(dec, r.coords);
  if (!(h == via_roots))
    throw TheoremViolation("mean curvature: trace route " + to_string(h) + " != root route " + to_string(via_roots));
  return h;
}

/// Ricci endomorphism of the nilradical, in the coordinates of dec.n.
inline RatMatrix ricci_n(const IwasawaDecomposition& dec) {
  if (dec.n.is_zero()) return RatMatrix(0, 0);
  return ricci_nilpotent(restrict(dec.algebra, dec.n, dec.algebra.name() + "|n"));
}

/// ad_x restricted to n, in the coordinates of dec.n.
inline RatMatrix ad_on_n(const IwasawaDecomposition& dec, const RatVector& x) {
  return restricted_operator(ad_matrix(dec.algebra, x), dec.n);
}

/// Ricci endomorphism of s on its own basis, assembled blockwise in the
/// adapted basis (a, n): a-block -tr(ad_A ad_B), mixed block 0, n-block
/// ric^n - <ad_H ., .>.
inline RatMatrix ricci_solvable(const IwasawaDecomposition& dec) {
  const MetricLieAlgebra& L = dec.algebra;
  const std::size_t dim = L.dim(), r = dec.a.dim(), k = dec.n.dim();
  RatMatrix form(dim, dim);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) form(i, j) = -trace(dec.ad_a[i] * dec.ad_a[j]);
  if (k > 0) {
    RatMatrix gn = restricted_gram(L.gram(), dec.n);
    RatMatrix rn = ricci_n(dec);
    RatMatrix adh = ad_on_n(dec, mean_curvature(dec));
    // form(X, Y) = <Ric^n X, Y> - <ad_H X, Y>; as a matrix G_n (Ric^n - ad_H)
    RatMatrix fn = gn * (rn - adh);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) form(r + i, r + j) = fn(i, j);
  }
  std::vector<RatVector> cols = dec.a.basis();
  cols.insert(cols.end(), dec.n.basis().begin(), dec.n.basis().end());
  RatMatrix pinv = inverse(RatMatrix::from_columns(cols, dim));
  RatMatrix fs = pinv.transpose() * form * pinv;
  return L.gram_inverse() * fs;
}

// ---------------------------------------------------------------------------

/// Symmetric part of the Levi-Civita connection:
/// <U(x,y), z> = 1/2 (<[z,x], y> + <[z,y], x>).
inline RatVector u_tensor(const MetricLieAlgebra& L, const RatVector& x, const RatVector& y) {
  L.check(x);
  L.check(y);
  RatVector gx = L.gram() * x, gy = L.gram() * y;
  RatVector rhs(L.dim());
  for (std::size_t k = 0; k < L.dim(); ++k)
    rhs[k] = Rational(1, 2) * (dot(L.ad_basis(k) * x, gy) + dot(L.ad_basis(k) * y, gx));
  return L.gram_inverse() * rhs;
}

/// h(x, y) = U(x, y) - U'(x, y) for x, y in the subalgebra sub.
inline RatVector second_fundamental_form(const MetricLieAlgebra& L, const MetricLieAlgebra& sub_alg,
                                         const Subspace& sub, const RatVector& x, const RatVector& y) {
  auto cx = sub.coordinates(x), cy = sub.coordinates(y);
  if (!cx || !cy) throw InputError("second fundamental form evaluated outside the subalgebra");
  return u_tensor(L, x, y) - sub.embed(u_tensor(sub_alg, *cx, *cy));
}

inline RatVector second_fundamental_form(const MetricLieAlgebra& L, const Subspace& sub, const RatVector& x,
                                         const RatVector& y) {
  return second_fundamental_form(L, restrict(L, sub), sub, x, y);
}

struct MinimalityResult {
  RatVector trace_h;
  bool minimal = false;
};

/// Trace of h over sub by inverse-gram contraction.
inline MinimalityResult minimality_check(const MetricLieAlgebra& L, const Subspace& sub) {
  MetricLieAlgebra s = restrict(L, sub);
  const auto& b = sub.basis();
  RatVector tr = zero_vector(L.dim());
  if (sub.dim() > 0) {
    const RatMatrix& gi = s.gram_inverse();
    for (std::size_t p = 0; p < b.size(); ++p)
      for (std::size_t q = 0; q < b.size(); ++q)
        if (!gi(p, q).is_zero()) tr = tr + gi(p, q) * second_fundamental_form(L, s, sub, b[p], b[q]);
  }
  return {tr, is_zero(tr)};
}

// ---------------------------------------------------------------------------

/// lambda when m = lambda * Id, nothing otherwise. Empty matrices give nothing.
inline std::optional<Rational> scalar_multiple_of_identity(const RatMatrix& m) {
  if (!m.is_square() || m.rows() == 0) return std::nullopt;
  Rational l = m(0, 0);
  if (!(m == l * RatMatrix::identity(m.rows()))) return std::nullopt;
  return l;
}

struct EinsteinReport {
  std::optional<Rational> direct;   ///< lambda with Ric^s = lambda Id
  RatMatrix nil_part;               ///< Ric^n - ad_H on n
  std::optional<Rational> nil_lambda;
  RatMatrix trace_form;             ///< tr(ad_A ad_B) on the a-basis
  RatMatrix a_gram;
  bool nil_clause = false;          ///< Ric^n - ad_H = lambda Id^n
  bool trace_clause = false;        ///< tr(ad_A ad_B) = -lambda <A, B>
  std::optional<Rational> conti_rossi;  ///< lambda when both clauses hold with one lambda
};

/// Einstein test, directly and by the nilradical criterion. The a-block of
/// the Ricci form is -tr(ad_A ad_B), so the trace-form clause reads
/// tr(ad_A ad_B) = -lambda <A, B>. Throws TheoremViolation on disagreement.
inline EinsteinReport einstein_check(const IwasawaDecomposition& dec) {
  EinsteinReport rep;
  rep.direct = scalar_multiple_of_identity(ricci_solvable(dec));

  const std::size_t r = dec.a.dim();
  rep.a_gram = dec.a_gram;
  rep.trace_form = RatMatrix(r, r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) rep.trace_form(i, j) = trace(dec.ad_a[i] * dec.ad_a[j]);

  std::optional<Rational> lambda;
  bool consistent = true;
  if (!dec.n.is_zero()) {
    rep.nil_part = ricci_n(dec) - ad_on_n(dec, mean_curvature(dec));
    rep.nil_lambda = scalar_multiple_of_identity(rep.nil_part);
    rep.nil_clause = rep.nil_lambda.has_value();
    lambda = rep.nil_lambda;
    consistent = rep.nil_clause;
  } else {
    rep.nil_part = RatMatrix(0, 0);
    rep.nil_clause = true;
  }
  if (r > 0) {
    // lambda from the first diagonal entry; a_gram is positive definite
    Rational l = -rep.trace_form(0, 0) / rep.a_gram(0, 0);
    if (lambda && !(*lambda == l)) {
      rep.trace_clause = false;
    } else {
      rep.trace_clause = rep.trace_form == (-l) * rep.a_gram;
      if (!lambda) lambda = l;
    }
  } else {
    rep.trace_clause = true;
  }
  if (consistent && rep.trace_clause) rep.conti_rossi = lambda ? *lambda : Rational(0);

  if (rep.direct.has_value() != rep.conti_rossi.has_value() ||
      (rep.direct && !(*rep.direct == *rep.conti_rossi)))
    throw TheoremViolation("Einstein verdicts disagree: direct " +
                           (rep.direct ? rep.direct->str() : std::string("no")) + ", criterion " +
                           (rep.conti_rossi ? rep.conti_rossi->str() : std::string("no")));
  return rep;
}

struct CurvatureReport {
  RatMatrix ricci_n;   ///< on dec.n coordinates
  RatMatrix ricci_s;   ///< on the full basis
  RatVector mean_curvature;
  RatMatrix ad_h_n;    ///< ad_H on dec.n coordinates
  EinsteinReport einstein;
};

inline CurvatureReport curvature_report(const IwasawaDecomposition& dec) {
  CurvatureReport c;
  c.ricci_n = ricci_n(dec);
  c.ricci_s = ricci_solvable(dec);
  c.mean_curvature = mean_curvature(dec);
  c.ad_h_n = dec.n.is_zero() ? RatMatrix(0, 0) : ad_on_n(dec, c.mean_curvature);
  c.einstein = einstein_check(dec);
  return c;
}

}  // namespace solvlie
