#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "solvlie/matrix.hpp"
#include "solvlie/spectral.hpp"

namespace solvlie {

/// A linear subspace of Q^n, held as an independent list of ambient vectors.
class Subspace {
 public:
  explicit Subspace(std::size_t ambient_dim = 0) : ambient_(ambient_dim) {}

  /// Canonical (reduced row-echelon) basis of the span.
  static Subspace span(std::size_t ambient_dim, const std::vector<RatVector>& vectors) {
    for (const auto& v : vectors)
      if (v.size() != ambient_dim) throw InputError("spanning vector has wrong length");
    Subspace s(ambient_dim);
    s.basis_ = canonical_basis(vectors, ambient_dim);
    return s;
  }

  /// Keeps the given order; vectors must be independent.
  static Subspace with_basis(std::size_t ambient_dim, std::vector<RatVector> basis) {
    for (const auto& v : basis)
      if (v.size() != ambient_dim) throw InputError("basis vector has wrong length");
    if (!basis.empty() && rank(RatMatrix::from_rows(basis, ambient_dim)) != basis.size())
      throw InputError("basis vectors are linearly dependent");
    Subspace s(ambient_dim);
    s.basis_ = std::move(basis);
    return s;
  }

  static Subspace whole(std::size_t n) {
    Subspace s(n);
    for (std::size_t i = 0; i < n; ++i) s.basis_.push_back(unit_vector(n, i));
    return s;
  }

  std::size_t ambient_dim() const noexcept { return ambient_; }
  std::size_t dim() const noexcept { return basis_.size(); }
  bool is_zero() const noexcept { return basis_.empty(); }
  const std::vector<RatVector>& basis() const noexcept { return basis_; }

  /// Basis vectors as columns (ambient_dim x dim).
  RatMatrix basis_matrix() const { return RatMatrix::from_columns(basis_, ambient_); }

  std::optional<RatVector> coordinates(const RatVector& v) const {
    if (v.size() != ambient_) throw InputError("vector has wrong length");
    if (basis_.empty()) {
      if (solvlie::is_zero(v)) return RatVector{};
      return std::nullopt;
    }
    auto r = linear_solve(basis_matrix(), v);
    if (r.status == SolveStatus::no_solution) return std::nullopt;
    return r.x;
  }

  bool contains(const RatVector& v) const { return coordinates(v).has_value(); }

  bool contains(const Subspace& other) const {
    for (const auto& v : other.basis_)
      if (!contains(v)) return false;
    return true;
  }

  bool same_span(const Subspace& other) const {
    return dim() == other.dim() && contains(other);
  }

  RatVector embed(const RatVector& coords) const {
    if (coords.size() != dim()) throw InputError("coordinate vector has wrong length");
    RatVector v = zero_vector(ambient_);
    for (std::size_t i = 0; i < coords.size(); ++i)
      if (!coords[i].is_zero()) v = v + coords[i] * basis_[i];
    return v;
  }

  Subspace sum(const Subspace& other) const {
    std::vector<RatVector> all = basis_;
    all.insert(all.end(), other.basis_.begin(), other.basis_.end());
    return span(ambient_, all);
  }

  Subspace intersection(const Subspace& other) const {
    if (is_zero() || other.is_zero()) return Subspace(ambient_);
    // solve B x = C y, i.e. [B | -C] (x, y) = 0
    RatMatrix m(ambient_, dim() + other.dim());
    for (std::size_t i = 0; i < ambient_; ++i) {
      for (std::size_t j = 0; j < dim(); ++j) m(i, j) = basis_[j][i];
      for (std::size_t j = 0; j < other.dim(); ++j) m(i, dim() + j) = -other.basis_[j][i];
    }
    std::vector<RatVector> vecs;
    for (const auto& k : kernel(m)) {
      RatVector x(k.begin(), k.begin() + static_cast<std::ptrdiff_t>(dim()));
      vecs.push_back(embed(x));
    }
    return span(ambient_, vecs);
  }

 private:
  std::size_t ambient_;
  std::vector<RatVector> basis_;
};

/// B^T G B for the subspace basis B.
inline RatMatrix restricted_gram(const RatMatrix& gram, const Subspace& sub) {
  RatMatrix b = sub.basis_matrix();
  return b.transpose() * gram * b;
}

/// {v : <v, w> = 0 for all w in sub}, canonical basis.
inline Subspace orthogonal_complement(const RatMatrix& gram, const Subspace& sub) {
  const std::size_t n = gram.rows();
  if (sub.is_zero()) return Subspace::whole(n);
  RatMatrix constraints = sub.basis_matrix().transpose() * gram;
  return Subspace::span(n, kernel(constraints));
}

/// Gram-orthogonal projection onto sub; requires a nondegenerate restricted gram.
inline RatVector orthogonal_projection(const RatMatrix& gram, const Subspace& sub, const RatVector& v) {
  if (sub.is_zero()) return zero_vector(v.size());
  RatMatrix gs = restricted_gram(gram, sub);
  auto inv = try_inverse(gs);
  if (!inv) throw ValidationError("nondegeneracy", "projection onto a degenerate subspace");
  RatVector rhs = sub.basis_matrix().transpose() * (gram * v);
  return sub.embed(*inv * rhs);
}

/// Matrix of m restricted to an invariant subspace, in sub coordinates.
/// Throws ValidationError("invariance") when m moves a basis vector out of sub.
inline RatMatrix restricted_operator(const RatMatrix& m, const Subspace& sub) {
  const std::size_t k = sub.dim();
  RatMatrix r(k, k);
  for (std::size_t c = 0; c < k; ++c) {
    auto coords = sub.coordinates(m * sub.basis()[c]);
    if (!coords) throw ValidationError("invariance", "operator does not preserve the subspace");
    r.set_column(c, *coords);
  }
  return r;
}

/// Compression of m to sub along the gram-orthogonal complement: pi_sub o m on sub.
inline RatMatrix compressed_operator(const RatMatrix& gram, const RatMatrix& m, const Subspace& sub) {
  const std::size_t k = sub.dim();
  RatMatrix r(k, k);
  if (k == 0) return r;
  auto inv = try_inverse(restricted_gram(gram, sub));
  if (!inv) throw ValidationError("nondegeneracy", "projection onto a degenerate subspace");
  RatMatrix b = sub.basis_matrix();
  return *inv * (b.transpose() * gram * m * b);
}

}  // namespace solvlie
