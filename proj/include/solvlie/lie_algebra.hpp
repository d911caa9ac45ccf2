#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "solvlie/matrix.hpp"
#include "solvlie/subspace.hpp"

namespace solvlie {

/// Full structure tensor c[i][j][k] with [e_i, e_j] = sum_k c[i][j][k] e_k.
/// Only used to validate raw input; MetricLieAlgebra stores the i < j half.
using StructureTensor = std::vector<std::vector<RatVector>>;

/// Finite-dimensional real Lie algebra with a symmetric bilinear form, both
/// given on a fixed basis. Immutable once constructed.
class MetricLieAlgebra {
 public:
  /// `upper[index(i, j)]` for i < j holds [e_i, e_j].
  MetricLieAlgebra(std::string name, std::vector<std::string> labels, std::vector<RatVector> upper,
                   RatMatrix gram)
      : name_(std::move(name)), labels_(std::move(labels)), upper_(std::move(upper)), gram_(std::move(gram)) {
    const std::size_t n = labels_.size();
    if (upper_.size() != n * (n - (n ? 1 : 0)) / 2) throw InputError("structure table has wrong size");
    for (const auto& v : upper_)
      if (v.size() != n) throw InputError("bracket vector has wrong length");
    if (gram_.rows() != n || gram_.cols() != n) throw InputError("gram has wrong shape");
    ad_.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      RatMatrix a(n, n);
      for (std::size_t j = 0; j < n; ++j) a.set_column(j, structure(i, j));
      ad_.push_back(std::move(a));
    }
    gram_inv_ = try_inverse(gram_);
  }

  /// Builds from a full tensor; throws ValidationError("antisymmetry") on the
  /// first (i, j, k) with c[i][j][k] != -c[j][i][k].
  static MetricLieAlgebra from_tensor(std::string name, std::vector<std::string> labels,
                                      const StructureTensor& c, RatMatrix gram) {
    const std::size_t n = labels.size();
    check_tensor_shape(c, n);
    if (auto w = antisymmetry_violation(c))
      throw ValidationError("antisymmetry", "violated at " + *w);
    std::vector<RatVector> upper;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) upper.push_back(c[i][j]);
    return MetricLieAlgebra(std::move(name), std::move(labels), std::move(upper), std::move(gram));
  }

  static void check_tensor_shape(const StructureTensor& c, std::size_t n) {
    if (c.size() != n) throw InputError("structure tensor has wrong size");
    for (const auto& row : c) {
      if (row.size() != n) throw InputError("structure tensor has wrong size");
      for (const auto& v : row)
        if (v.size() != n) throw InputError("structure tensor has wrong size");
    }
  }

  /// "(i,j,k)" of the first antisymmetry failure, 1-based.
  static std::optional<std::string> antisymmetry_violation(const StructureTensor& c) {
    const std::size_t n = c.size();
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k)
          if (!(c[i][j][k] == -c[j][i][k]))
            return "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "," + std::to_string(k + 1) + ")";
    return std::nullopt;
  }

  const std::string& name() const noexcept { return name_; }
  std::size_t dim() const noexcept { return labels_.size(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const RatMatrix& gram() const noexcept { return gram_; }
  bool gram_nondegenerate() const noexcept { return gram_inv_.has_value(); }

  const RatMatrix& gram_inverse() const {
    if (!gram_inv_) throw ValidationError("nondegeneracy", "scalar product of '" + name_ + "' is degenerate");
    return *gram_inv_;
  }

  /// [e_i, e_j]
  RatVector structure(std::size_t i, std::size_t j) const {
    const std::size_t n = dim();
    if (i >= n || j >= n) throw InputError("basis index out of range");
    if (i == j) return zero_vector(n);
    if (i < j) return upper_[index(i, j)];
    return -upper_[index(j, i)];
  }

  /// ad(e_i) as a matrix; column j is [e_i, e_j].
  const RatMatrix& ad_basis(std::size_t i) const { return ad_.at(i); }

  StructureTensor tensor() const {
    const std::size_t n = dim();
    StructureTensor c(n, std::vector<RatVector>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) c[i][j] = structure(i, j);
    return c;
  }

  Rational inner(const RatVector& x, const RatVector& y) const {
    check(x);
    check(y);
    return pair(x, gram_, y);
  }

  void check(const RatVector& x) const {
    if (x.size() != dim())
      throw InputError("vector of length " + std::to_string(x.size()) + " in algebra of dimension " +
                       std::to_string(dim()));
  }

  friend bool operator==(const MetricLieAlgebra& a, const MetricLieAlgebra& b) {
    return a.name_ == b.name_ && a.labels_ == b.labels_ && a.upper_ == b.upper_ && a.gram_ == b.gram_;
  }

 private:
  std::size_t index(std::size_t i, std::size_t j) const {
    // row-major over pairs i < j
    const std::size_t n = dim();
    return i * n - i * (i + 1) / 2 + (j - i - 1);
  }

  std::string name_;
  std::vector<std::string> labels_;
  std::vector<RatVector> upper_;
  RatMatrix gram_;
  std::optional<RatMatrix> gram_inv_;
  std::vector<RatMatrix> ad_;
};

/// Assembles a structure table pair by pair; unset pairs bracket to zero.
class StructureBuilder {
 public:
  explicit StructureBuilder(std::size_t n)
      : n_(n), upper_(n * (n - (n ? 1 : 0)) / 2, zero_vector(n)), set_(upper_.size(), false) {}

  /// Sets [e_i, e_j] = v (and so [e_j, e_i] = -v). Setting a pair twice throws.
  StructureBuilder& set(std::size_t i, std::size_t j, const RatVector& v) {
    if (i >= n_ || j >= n_) throw InputError("basis index out of range");
    if (i == j) {
      if (!solvlie::is_zero(v)) throw ValidationError("antisymmetry", "[e_i, e_i] must vanish");
      return *this;
    }
    if (v.size() != n_) throw InputError("bracket vector has wrong length");
    std::size_t lo = std::min(i, j), hi = std::max(i, j);
    std::size_t k = lo * n_ - lo * (lo + 1) / 2 + (hi - lo - 1);
    if (set_[k])
      throw InputError("bracket (" + std::to_string(lo) + "," + std::to_string(hi) + ") given twice");
    set_[k] = true;
    upper_[k] = i < j ? v : -v;
    return *this;
  }

  /// Empty labels default to e1, e2, ...
  MetricLieAlgebra build(std::string name, std::vector<std::string> labels, RatMatrix gram) const {
    if (labels.empty())
      for (std::size_t i = 0; i < n_; ++i) labels.push_back("e" + std::to_string(i + 1));
    if (labels.size() != n_) throw InputError("label count does not match dimension");
    return MetricLieAlgebra(std::move(name), std::move(labels), upper_, std::move(gram));
  }

 private:
  std::size_t n_;
  std::vector<RatVector> upper_;
  std::vector<bool> set_;
};

// ---------------------------------------------------------------------------

inline RatVector bracket(const MetricLieAlgebra& L, const RatVector& x, const RatVector& y) {
  L.check(x);
  L.check(y);
  RatVector out = zero_vector(L.dim());
  for (std::size_t i = 0; i < L.dim(); ++i) {
    if (x[i].is_zero()) continue;
    out = out + x[i] * (L.ad_basis(i) * y);
  }
  return out;
}

/// Matrix of ad_x on the full basis; column j is [x, e_j].
inline RatMatrix ad_matrix(const MetricLieAlgebra& L, const RatVector& x) {
  L.check(x);
  RatMatrix m(L.dim(), L.dim());
  for (std::size_t i = 0; i < L.dim(); ++i)
    if (!x[i].is_zero()) m += x[i] * L.ad_basis(i);
  return m;
}

/// Adjoint of ad_x relative to the scalar product restricted to `domain`, in
/// domain coordinates: <A* u, v> = <u, [x, v]> for all u, v in the domain.
/// When [x, domain] leaves the domain the Riesz representative inside the
/// domain is returned.
inline RatMatrix ad_star(const MetricLieAlgebra& L, const RatVector& x, const Subspace& domain) {
  L.check(x);
  if (domain.ambient_dim() != L.dim()) throw InputError("domain lives in a different space");
  const std::size_t k = domain.dim();
  RatMatrix gd = restricted_gram(L.gram(), domain);
  auto gd_inv = try_inverse(gd);
  if (!gd_inv) throw ValidationError("nondegeneracy", "scalar product restricted to the domain is degenerate");
  RatMatrix ad = ad_matrix(L, x);
  RatMatrix b = domain.basis_matrix();
  // m(j, l) = <b_j, [x, b_l]>
  RatMatrix m = b.transpose() * L.gram() * ad * b;
  (void)k;
  return *gd_inv * m.transpose();
}

/// The vector (ad_x)^* y with the adjoint taken over the whole algebra.
inline RatVector ad_star_apply(const MetricLieAlgebra& L, const RatVector& x, const RatVector& y) {
  // G^{-1} ad_x^T G y
  return L.gram_inverse() * (ad_matrix(L, x).transpose() * (L.gram() * y));
}

inline Subspace derived_algebra(const MetricLieAlgebra& L) {
  std::vector<RatVector> brackets;
  for (std::size_t i = 0; i < L.dim(); ++i)
    for (std::size_t j = i + 1; j < L.dim(); ++j) brackets.push_back(L.structure(i, j));
  return Subspace::span(L.dim(), brackets);
}

inline Subspace center(const MetricLieAlgebra& L) {
  // x central iff sum_i x_i ad(e_i) e_j = 0 for every j
  const std::size_t n = L.dim();
  RatMatrix m(n * n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      RatVector c = L.structure(i, j);
      for (std::size_t k = 0; k < n; ++k) m(j * n + k, i) = c[k];
    }
  return Subspace::span(n, kernel(m));
}

// ---------------------------------------------------------------------------

struct Check {
  std::string name;
  bool pass = true;
  std::string witness;  ///< first violating index tuple (1-based) when failing
};

struct ValidityReport {
  std::vector<Check> checks;
  bool ok() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
  const Check& find(const std::string& name) const {
    for (const auto& c : checks)
      if (c.name == name) return c;
    throw InputError("no check named " + name);
  }
};

/// Antisymmetry, Jacobi identity, gram symmetry and gram nondegeneracy of a
/// raw tensor + gram pair.
inline ValidityReport validate_tensor(const StructureTensor& c, const RatMatrix& gram) {
  const std::size_t n = c.size();
  MetricLieAlgebra::check_tensor_shape(c, n);
  ValidityReport rep;

  Check anti{"antisymmetry", true, {}};
  if (auto w = MetricLieAlgebra::antisymmetry_violation(c)) {
    anti.pass = false;
    anti.witness = *w;
  }
  rep.checks.push_back(anti);

  // [[x,y],z] + [[y,z],x] + [[z,x],y] on basis triples, using the tensor as given
  auto br = [&](const RatVector& x, std::size_t k) {
    RatVector out = zero_vector(n);
    for (std::size_t m = 0; m < n; ++m)
      if (!x[m].is_zero()) out = out + x[m] * c[m][k];
    return out;
  };
  Check jac{"jacobi", true, {}};
  for (std::size_t i = 0; i < n && jac.pass; ++i)
    for (std::size_t j = i + 1; j < n && jac.pass; ++j)
      for (std::size_t k = j + 1; k < n && jac.pass; ++k) {
        RatVector s = br(c[i][j], k) + br(c[j][k], i) + br(c[k][i], j);
        if (!is_zero(s)) {
          jac.pass = false;
          jac.witness = "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + "," + std::to_string(k + 1) + ")";
        }
      }
  rep.checks.push_back(jac);

  Check sym{"gram_symmetric", true, {}};
  for (std::size_t i = 0; i < n && sym.pass; ++i)
    for (std::size_t j = i + 1; j < n && sym.pass; ++j)
      if (!(gram(i, j) == gram(j, i))) {
        sym.pass = false;
        sym.witness = "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
      }
  rep.checks.push_back(sym);

  Check nd{"gram_nondegenerate", true, {}};
  if (determinant(gram).is_zero()) {
    nd.pass = false;
    nd.witness = "det = 0";
  }
  rep.checks.push_back(nd);
  return rep;
}

inline ValidityReport validate_algebra(const MetricLieAlgebra& L) { return validate_tensor(L.tensor(), L.gram()); }

struct CentralSeries {
  std::vector<Subspace> terms;  ///< L, [L,L], [L,[L,L]], ... down to the stable term
  bool nilpotent = false;       ///< the series reached {0}
  std::size_t step = 0;         ///< number of strict inclusions when nilpotent
};

inline CentralSeries lower_central_series(const MetricLieAlgebra& L) {
  CentralSeries cs;
  Subspace cur = Subspace::whole(L.dim());
  cs.terms.push_back(cur);
  while (!cur.is_zero()) {
    std::vector<RatVector> next;
    for (std::size_t i = 0; i < L.dim(); ++i)
      for (const auto& v : cur.basis()) next.push_back(L.ad_basis(i) * v);
    Subspace nxt = Subspace::span(L.dim(), next);
    if (nxt.dim() == cur.dim()) break;
    cs.terms.push_back(nxt);
    cur = std::move(nxt);
  }
  cs.nilpotent = cur.is_zero();
  cs.step = cs.nilpotent ? cs.terms.size() - 1 : 0;
  return cs;
}

/// Human-readable name for an ambient vector, e.g. "D+2/3*H1".
inline std::string combination_label(const std::vector<std::string>& labels, const RatVector& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i].is_zero()) continue;
    Rational c = v[i];
    bool neg = c.sign() < 0;
    if (neg) c = -c;
    if (!s.empty()) s += neg ? "-" : "+";
    else if (neg) s += "-";
    if (!(c == Rational(1))) s += c.str() + "*";
    s += labels[i];
  }
  return s.empty() ? "0" : s;
}

/// The subalgebra `sub` as a self-contained metric Lie algebra on sub's basis.
inline MetricLieAlgebra restrict(const MetricLieAlgebra& L, const Subspace& sub, std::string name = {}) {
  if (sub.ambient_dim() != L.dim()) throw InputError("subspace lives in a different space");
  const std::size_t k = sub.dim();
  RatMatrix g = restricted_gram(L.gram(), sub);
  if (k > 0 && determinant(g).is_zero())
    throw ValidationError("nondegeneracy", "scalar product restricted to the subalgebra is degenerate");
  std::vector<RatVector> upper;
  for (std::size_t p = 0; p < k; ++p)
    for (std::size_t q = p + 1; q < k; ++q) {
      RatVector b = bracket(L, sub.basis()[p], sub.basis()[q]);
      auto coords = sub.coordinates(b);
      if (!coords)
        throw ValidationError("closure", "bracket of basis vectors " + std::to_string(p + 1) + " and " +
                                             std::to_string(q + 1) + " leaves the subspace");
      upper.push_back(std::move(*coords));
    }
  std::vector<std::string> labels;
  for (const auto& v : sub.basis()) labels.push_back(combination_label(L.labels(), v));
  if (name.empty()) name = L.name() + "|sub";
  return MetricLieAlgebra(std::move(name), std::move(labels), std::move(upper), std::move(g));
}

}  // namespace solvlie
