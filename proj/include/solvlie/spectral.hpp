#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "solvlie/matrix.hpp"
#include "solvlie/polynomial.hpp"

namespace solvlie {

struct Eigenpair {
  Rational value;
  std::vector<RatVector> space;  ///< canonical kernel basis of (M - value I)
};

/// Rows of the RREF of the spanning set: the canonical basis of its span.
inline std::vector<RatVector> canonical_basis(const std::vector<RatVector>& span, std::size_t dim) {
  if (span.empty()) return {};
  auto e = rref(RatMatrix::from_rows(span, dim));
  std::vector<RatVector> out;
  for (std::size_t r = 0; r < e.pivots.size(); ++r) out.push_back(e.reduced.row(r));
  return out;
}

/// All eigenpairs of a rationally diagonalizable matrix, eigenvalues ascending.
/// Throws NotRationalSplit when some eigenvalue is irrational and
/// NotDiagonalizable when the spectrum is rational but eigenspaces fall short.
inline std::vector<Eigenpair> rational_eigenpairs(const RatMatrix& m) {
  if (!m.is_square()) throw InputError("eigenpairs of non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return {};
  auto roots = rational_roots(characteristic_polynomial(m));
  std::size_t total = 0;
  for (const auto& r : roots) total += r.second;
  if (total < n)
    throw NotRationalSplit("characteristic polynomial has " + std::to_string(n - total) +
                           " non-rational root(s)");
  std::vector<Eigenpair> out;
  for (const auto& [value, mult] : roots) {
    RatMatrix shifted = m - value * RatMatrix::identity(n);
    auto space = kernel(shifted);
    if (space.size() < mult)
      throw NotDiagonalizable("eigenvalue " + value.str() + " has algebraic multiplicity " +
                              std::to_string(mult) + " but geometric multiplicity " +
                              std::to_string(space.size()));
    out.push_back({value, std::move(space)});
  }
  return out;
}

struct JointEigenspace {
  RatVector weight;               ///< eigenvalue of each family member, in family order
  std::vector<RatVector> space;  ///< canonical basis
};

/// Joint eigenspace decomposition of a commuting, individually rationally
/// diagonalizable family acting on Q^n. Weights sorted lexicographically.
inline std::vector<JointEigenspace> simultaneous_eigenspaces(const std::vector<RatMatrix>& family,
                                                             std::size_t n) {
  for (const auto& m : family)
    if (m.rows() != n || m.cols() != n) throw InputError("family member has wrong shape");
  for (std::size_t i = 0; i < family.size(); ++i)
    for (std::size_t j = i + 1; j < family.size(); ++j)
      if (!(family[i] * family[j] == family[j] * family[i]))
        throw InputError("family members " + std::to_string(i) + " and " + std::to_string(j) +
                         " do not commute");

  std::vector<JointEigenspace> spaces;
  if (n == 0) return spaces;
  {
    JointEigenspace whole;
    for (std::size_t i = 0; i < n; ++i) whole.space.push_back(unit_vector(n, i));
    spaces.push_back(std::move(whole));
  }
  for (const auto& m : family) {
    std::vector<JointEigenspace> next;
    for (const auto& js : spaces) {
      const std::size_t k = js.space.size();
      RatMatrix basis = RatMatrix::from_columns(js.space, n);
      // restriction R with basis * R = m * basis; m preserves the span because the family commutes
      RatMatrix image = m * basis;
      RatMatrix restricted(k, k);
      for (std::size_t c = 0; c < k; ++c) restricted.set_column(c, solve_unique(basis, image.column(c)));
      for (const auto& ep : rational_eigenpairs(restricted)) {
        std::vector<RatVector> vecs;
        for (const auto& u : ep.space) vecs.push_back(basis * u);
        JointEigenspace child;
        child.weight = js.weight;
        child.weight.push_back(ep.value);
        child.space = canonical_basis(vecs, n);
        next.push_back(std::move(child));
      }
    }
    spaces = std::move(next);
  }
  std::sort(spaces.begin(), spaces.end(),
            [](const JointEigenspace& a, const JointEigenspace& b) { return a.weight < b.weight; });
  return spaces;
}

}  // namespace solvlie
