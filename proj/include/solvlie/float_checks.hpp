#pragma once

// Floating-point cross-checks. The exact path never calls into this header.

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <optional>
#include <vector>

#include "solvlie/attached.hpp"
#include "solvlie/lie_algebra.hpp"

namespace solvlie::fp {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

inline Mat to_eigen(const RatMatrix& m) {
  Mat out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).to_double();
  return out;
}

inline Vec to_eigen(const RatVector& v) {
  Vec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out(i) = v[i].to_double();
  return out;
}

/// max |a - b| relative to max(1, |b|).
inline double relative_error(const Mat& a, const Mat& b) {
  if (a.size() == 0) return 0.0;
  double scale = std::max(1.0, b.cwiseAbs().maxCoeff());
  return (a - b).cwiseAbs().maxCoeff() / scale;
}

inline bool close(const Mat& a, const Mat& b, double tol) {
  return a.rows() == b.rows() && a.cols() == b.cols() && relative_error(a, b) <= tol;
}

/// Structure constants as doubles: ad[i] column j = [e_i, e_j].
struct FloatAlgebra {
  std::vector<Mat> ad;
  Mat gram;

  explicit FloatAlgebra(const MetricLieAlgebra& L) : gram(to_eigen(L.gram())) {
    for (std::size_t i = 0; i < L.dim(); ++i) ad.push_back(to_eigen(L.ad_basis(i)));
  }
  std::size_t dim() const { return static_cast<std::size_t>(gram.rows()); }

  Mat ad_of(const Vec& x) const {
    Mat m = Mat::Zero(gram.rows(), gram.cols());
    for (std::size_t i = 0; i < ad.size(); ++i)
      if (x(i) != 0.0) m += x(i) * ad[i];
    return m;
  }
  Mat star(const Mat& a) const { return gram.inverse() * a.transpose() * gram; }
};

/// Pseudo-orthonormal basis of span(columns of b) for the form g: columns
/// E_j with <E_i, E_j> = eps_j delta_ij. Built by symmetric diagonalization.
struct OrthonormalBasis {
  Mat vectors;
  std::vector<double> eps;
};

inline OrthonormalBasis orthonormalize(const Mat& gram, const Mat& b) {
  OrthonormalBasis out{Mat(b.rows(), b.cols()), {}};
  if (b.cols() == 0) return out;
  Mat g = b.transpose() * gram * b;
  Eigen::SelfAdjointEigenSolver<Mat> es(g);
  if (es.info() != Eigen::Success) throw Error("eigen solver failed");
  for (Eigen::Index j = 0; j < g.cols(); ++j) {
    double l = es.eigenvalues()(j);
    if (std::abs(l) < 1e-14) throw ValidationError("nondegeneracy", "degenerate scalar product on a root space");
    out.vectors.col(j) = b * es.eigenvectors().col(j) / std::sqrt(std::abs(l));
    out.eps.push_back(l > 0 ? 1.0 : -1.0);
  }
  return out;
}

inline Mat basis_matrix(const Subspace& s) { return to_eigen(s.basis_matrix()); }

/// Ricci endomorphism of a nilpotent metric Lie algebra by the orthonormal
/// sum 1/4 sum eps ad_E ad*_E - 1/2 sum eps ad*_E ad_E, on the original basis.
inline Mat ricci_nilpotent_orthonormal(const MetricLieAlgebra& N) {
  FloatAlgebra F(N);
  const auto n = static_cast<Eigen::Index>(N.dim());
  OrthonormalBasis onb = orthonormalize(F.gram, Mat::Identity(n, n));
  Mat ric = Mat::Zero(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    Mat a = F.ad_of(onb.vectors.col(j));
    Mat s = F.star(a);
    ric += onb.eps[static_cast<std::size_t>(j)] * (0.25 * a * s - 0.5 * s * a);
  }
  return ric;
}

struct DirectJacobiStar {
  bool holds = false;
  double max_error = 0.0;
};

/// The Jacobi Star identity evaluated literally on a compatible orthonormal
/// basis of n0 obtained root space by root space.
inline DirectJacobiStar jacobi_star_direct(const IwasawaDecomposition& dec, const AttachedSubalgebra& att,
                                           double tol) {
  DirectJacobiStar r;
  const MetricLieAlgebra& L = dec.algebra;
  FloatAlgebra F(L);
  MetricLieAlgebra Nexact = restrict(L, dec.n);
  FloatAlgebra N(Nexact);
  Mat nb = basis_matrix(dec.n);  // ambient x dim n
  // n-coordinates of ambient vectors in n
  Mat to_n = (nb.transpose() * F.gram * nb).inverse() * nb.transpose() * F.gram;

  const auto k = static_cast<Eigen::Index>(dec.n.dim());
  Mat lhs = Mat::Zero(k, k);
  Vec contracted = Vec::Zero(static_cast<Eigen::Index>(L.dim()));
  for (auto i : att.zero_roots) {
    OrthonormalBasis onb = orthonormalize(F.gram, basis_matrix(dec.roots[i].space));
    for (Eigen::Index j = 0; j < onb.vectors.cols(); ++j) {
      double eps = onb.eps[static_cast<std::size_t>(j)];
      Vec e = onb.vectors.col(j);
      Mat a = N.ad_of(to_n * e);
      Mat s = N.star(a);
      lhs += 0.5 * eps * (s * a - a * s);
      contracted += eps * (F.star(F.ad_of(e)) * e);
    }
  }
  Mat adv = F.ad_of(contracted);
  Mat npb = basis_matrix(att.n_prime);
  for (Eigen::Index c = 0; c < npb.cols(); ++c) {
    Vec x = npb.col(c);
    Vec l = nb * (lhs * (to_n * x));
    Vec rr = adv * x;
    double scale = std::max(1.0, rr.cwiseAbs().maxCoeff());
    r.max_error = std::max(r.max_error, (l - rr).cwiseAbs().maxCoeff() / scale);
  }
  r.holds = r.max_error <= tol;
  return r;
}

struct FloatCurvature {
  Mat ricci_n;  ///< on dec.n coordinates
  Mat ricci_s;  ///< on the full basis
  Vec mean_curvature;
  std::optional<double> einstein;
};

/// Ricci data from doubles, for inputs whose root decomposition is not
/// rational. Needs only n = [s,s] and a = its orthogonal complement.
inline FloatCurvature float_curvature(const MetricLieAlgebra& L, double tol) {
  FloatCurvature out;
  FloatAlgebra F(L);
  const auto dim = static_cast<Eigen::Index>(L.dim());
  Subspace n = derived_algebra(L);
  Subspace a = orthogonal_complement(L.gram(), n);
  if (a.dim() + n.dim() != L.dim() || !a.intersection(n).is_zero())
    throw ValidationError("i", "s is not the direct sum of [s,s] and its orthogonal complement");

  Vec t(dim);
  for (Eigen::Index i = 0; i < dim; ++i) t(i) = F.ad[static_cast<std::size_t>(i)].trace();
  out.mean_curvature = F.gram.inverse() * t;

  const auto r = static_cast<Eigen::Index>(a.dim()), k = static_cast<Eigen::Index>(n.dim());
  Mat form = Mat::Zero(dim, dim);
  Mat ab = basis_matrix(a), nb = basis_matrix(n);
  std::vector<Mat> ada;
  for (Eigen::Index i = 0; i < r; ++i) ada.push_back(F.ad_of(ab.col(i)));
  for (Eigen::Index i = 0; i < r; ++i)
    for (Eigen::Index j = 0; j < r; ++j)
      form(i, j) = -(ada[static_cast<std::size_t>(i)] * ada[static_cast<std::size_t>(j)]).trace();
  if (k > 0) {
    out.ricci_n = ricci_nilpotent_orthonormal(restrict(L, n));
    Mat gn = nb.transpose() * F.gram * nb;
    Mat to_n = gn.inverse() * nb.transpose() * F.gram;
    Mat adh = to_n * F.ad_of(out.mean_curvature) * nb;
    form.block(r, r, k, k) = gn * (out.ricci_n - adh);
  } else {
    out.ricci_n = Mat(0, 0);
  }
  Mat p(dim, dim);
  if (r > 0) p.leftCols(r) = ab;
  if (k > 0) p.rightCols(k) = nb;
  Mat pinv = p.inverse();
  out.ricci_s = F.gram.inverse() * pinv.transpose() * form * pinv;
  if (dim == 0) {
    out.einstein = 0.0;
    return out;
  }
  double l = out.ricci_s(0, 0);
  if (close(out.ricci_s, l * Mat::Identity(dim, dim), tol)) out.einstein = l;
  return out;
}

}  // namespace solvlie::fp
