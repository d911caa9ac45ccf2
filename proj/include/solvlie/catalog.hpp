#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "solvlie/iwasawa.hpp"
#include "solvlie/lie_algebra.hpp"
#include "solvlie/spectral.hpp"

namespace solvlie {

/// An algebra plus the optional hints an on-disk file may carry.
struct AlgebraBundle {
  MetricLieAlgebra algebra;
  std::optional<std::vector<std::size_t>> a_basis;  ///< 0-based basis indices spanning a
  std::vector<NamedRoot> simple;                    ///< simple system, coords on the a-basis
  std::vector<NamedRoot> root_names;                ///< extra labels for non-simple roots

  std::optional<std::vector<RatVector>> a_hint() const {
    if (!a_basis) return std::nullopt;
    std::vector<RatVector> v;
    for (auto i : *a_basis) v.push_back(unit_vector(algebra.dim(), i));
    return v;
  }

  std::vector<RatVector> simple_coords() const {
    std::vector<RatVector> v;
    for (const auto& r : simple) v.push_back(r.coords);
    return v;
  }

  friend bool operator==(const AlgebraBundle&, const AlgebraBundle&) = default;
};

inline IwasawaDecomposition decompose(const AlgebraBundle& b) {
  return verify_strong_iwasawa(b.algebra, b.a_hint(), b.simple_coords());
}

namespace detail {

using Mat3 = RatMatrix;

inline RatVector flatten(const RatMatrix& m) {
  RatVector v;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) v.push_back(m(i, j));
  return v;
}

inline RatMatrix commutator(const RatMatrix& x, const RatMatrix& y) { return x * y - y * x; }

/// Coordinates of m in a basis of matrices; throws when m is outside the span.
inline RatVector matrix_coordinates(const std::vector<RatMatrix>& basis, const RatMatrix& m) {
  std::vector<RatVector> cols;
  for (const auto& b : basis) cols.push_back(flatten(b));
  RatVector target = flatten(m);
  auto r = linear_solve(RatMatrix::from_columns(cols, target.size()), target);
  if (r.status != SolveStatus::unique) throw InputError("matrix outside the spanned algebra");
  return r.x;
}

inline RatMatrix elementary(std::size_t n, std::size_t i, std::size_t j) {
  RatMatrix e(n, n);
  e(i, j) = Rational(1);
  return e;
}

}  // namespace detail

/// The 14-dimensional example: n = n^+(sl3) + t sl3 (brackets of total
/// t-degree above one vanish), extended by the degree derivation D and the
/// diagonal derivations H1 = ad diag(1,-1,0), H2 = ad diag(0,1,-1).
inline AlgebraBundle build_km_sl3() {
  using detail::elementary;
  const std::size_t three = 3;
  auto E = [&](std::size_t i, std::size_t j) { return elementary(three, i - 1, j - 1); };
  RatMatrix h12 = E(1, 1) - E(2, 2), h23 = E(2, 2) - E(3, 3);

  struct Elem {
    int degree;
    RatMatrix m;
    std::string label;
  };
  const std::vector<Elem> n_basis = {
      {0, E(1, 2), "1E12"}, {0, E(2, 3), "1E23"}, {0, E(1, 3), "1E13"}, {1, E(3, 1), "tE31"},
      {1, E(2, 1), "tE21"}, {1, E(3, 2), "tE32"}, {1, h12, "tH12"},     {1, h23, "tH23"},
      {1, E(1, 2), "tE12"}, {1, E(2, 3), "tE23"}, {1, E(1, 3), "tE13"}};
  const std::size_t r = 3, dim = r + n_basis.size();
  std::vector<std::vector<RatMatrix>> by_degree(2);
  std::vector<std::vector<std::size_t>> index_of(2);
  for (std::size_t k = 0; k < n_basis.size(); ++k) {
    by_degree[n_basis[k].degree].push_back(n_basis[k].m);
    index_of[n_basis[k].degree].push_back(r + k);
  }
  auto place = [&](int degree, const RatMatrix& m) {
    RatVector v = zero_vector(dim);
    if (degree > 1 || m.is_zero()) return v;
    RatVector c = detail::matrix_coordinates(by_degree[degree], m);
    for (std::size_t k = 0; k < c.size(); ++k) v[index_of[degree][k]] = c[k];
    return v;
  };

  StructureBuilder sb(dim);
  for (std::size_t k = 0; k < n_basis.size(); ++k) {
    const auto& x = n_basis[k];
    sb.set(0, r + k, place(x.degree, Rational(x.degree) * x.m));
    sb.set(1, r + k, place(x.degree, detail::commutator(h12, x.m)));
    sb.set(2, r + k, place(x.degree, detail::commutator(h23, x.m)));
    for (std::size_t l = k + 1; l < n_basis.size(); ++l) {
      const auto& y = n_basis[l];
      sb.set(r + k, r + l, place(x.degree + y.degree, detail::commutator(x.m, y.m)));
    }
  }

  RatMatrix g(dim, dim);
  g(0, 0) = Rational(16, 9);
  g(1, 1) = Rational(4);
  g(2, 2) = Rational(4);
  g(1, 2) = g(2, 1) = Rational(-2);
  for (std::size_t k = 0; k < n_basis.size(); ++k)
    for (std::size_t l = 0; l < n_basis.size(); ++l)
      if (n_basis[k].degree == n_basis[l].degree)
        g(r + k, r + l) = trace(n_basis[k].m.transpose() * n_basis[l].m);

  std::vector<std::string> labels = {"D", "H1", "H2"};
  for (const auto& x : n_basis) labels.push_back(x.label);
  return AlgebraBundle{sb.build("km-sl3", std::move(labels), std::move(g)),
                       std::vector<std::size_t>{0, 1, 2},
                       {{"a0", {1, -1, -1}}, {"a1", {0, 2, -1}}, {"a2", {0, -1, 2}}},
                       {{"d", {1, 0, 0}}}};
}

/// Solvable part a + n of a real semisimple matrix Lie algebra g with the
/// metric 2 B_sigma on a and B_sigma on n, where B is the Killing form and
/// sigma(X) = -X^T. n is the sum of positive eigenspaces of ad_{A0}.
inline MetricLieAlgebra build_symmetric_iwasawa(const std::string& name, const std::vector<RatMatrix>& g_basis,
                                                const std::vector<std::string>& g_labels,
                                                const std::vector<std::size_t>& a_indices,
                                                const RatMatrix& A0) {
  const std::size_t m = g_basis.size();
  std::vector<RatMatrix> ad;
  for (const auto& x : g_basis) {
    RatMatrix a(m, m);
    for (std::size_t j = 0; j < m; ++j)
      a.set_column(j, detail::matrix_coordinates(g_basis, detail::commutator(x, g_basis[j])));
    ad.push_back(std::move(a));
  }
  RatMatrix killing(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) killing(i, j) = trace(ad[i] * ad[j]);
  // sigma in g-coordinates
  RatMatrix sigma(m, m);
  for (std::size_t j = 0; j < m; ++j)
    sigma.set_column(j, detail::matrix_coordinates(g_basis, -g_basis[j].transpose()));
  RatMatrix b_sigma = -(killing * sigma);

  RatVector a0 = detail::matrix_coordinates(g_basis, A0);
  RatMatrix ad_a0(m, m);
  for (std::size_t i = 0; i < m; ++i)
    if (!a0[i].is_zero()) ad_a0 += a0[i] * ad[i];
  std::vector<RatVector> n_coords;
  for (const auto& ep : rational_eigenpairs(ad_a0))
    if (ep.value.sign() > 0) n_coords.insert(n_coords.end(), ep.space.begin(), ep.space.end());

  std::vector<RatVector> s_coords;
  for (auto i : a_indices) s_coords.push_back(unit_vector(m, i));
  const std::size_t r = s_coords.size();
  s_coords.insert(s_coords.end(), n_coords.begin(), n_coords.end());
  const std::size_t dim = s_coords.size();
  Subspace s = Subspace::with_basis(m, s_coords);

  StructureBuilder sb(dim);
  for (std::size_t p = 0; p < dim; ++p)
    for (std::size_t q = p + 1; q < dim; ++q) {
      RatVector br = zero_vector(m);
      for (std::size_t i = 0; i < m; ++i)
        if (!s_coords[p][i].is_zero()) br = br + s_coords[p][i] * (ad[i] * s_coords[q]);
      auto c = s.coordinates(br);
      if (!c) throw InputError("a + n is not closed under the bracket");
      sb.set(p, q, *c);
    }
  RatMatrix g(dim, dim);
  for (std::size_t p = 0; p < dim; ++p)
    for (std::size_t q = 0; q < dim; ++q) {
      bool in_a = p < r && q < r;
      bool in_n = p >= r && q >= r;
      if (!in_a && !in_n) continue;
      Rational v = pair(s_coords[p], b_sigma, s_coords[q]);
      g(p, q) = in_a ? Rational(2) * v : v;
    }
  std::vector<std::string> labels;
  for (const auto& c : s_coords) labels.push_back(combination_label(g_labels, c));
  return sb.build(name, std::move(labels), std::move(g));
}

/// Iwasawa solvable part of sl3(R), a = span{H12, H23}, n = span{E12, E23, E13}.
inline AlgebraBundle build_iwasawa_sl3() {
  using detail::elementary;
  std::vector<RatMatrix> g;
  std::vector<std::string> labels;
  for (auto [i, j] : std::vector<std::pair<int, int>>{{0, 1}, {1, 2}, {0, 2}, {1, 0}, {2, 1}, {2, 0}}) {
    g.push_back(elementary(3, i, j));
    labels.push_back("E" + std::to_string(i + 1) + std::to_string(j + 1));
  }
  g.push_back(elementary(3, 0, 0) - elementary(3, 1, 1));
  labels.push_back("H12");
  g.push_back(elementary(3, 1, 1) - elementary(3, 2, 2));
  labels.push_back("H23");
  RatMatrix a0 = elementary(3, 0, 0) - elementary(3, 2, 2);
  return AlgebraBundle{build_symmetric_iwasawa("iwasawa-sl3", g, labels, {6, 7}, a0),
                       std::vector<std::size_t>{0, 1},
                       {{"a1", {2, -1}}, {"a2", {-1, 2}}},
                       {}};
}

/// Iwasawa solvable part of so(n,1), the real hyperbolic space of dimension n.
inline AlgebraBundle build_hyperbolic(std::size_t n) {
  if (n < 2) throw InputError("hyperbolic:<n> needs n >= 2");
  using detail::elementary;
  const std::size_t N = n + 1;
  std::vector<RatMatrix> g;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      g.push_back(elementary(N, i, j) - elementary(N, j, i));
      labels.push_back("R" + std::to_string(i + 1) + std::to_string(j + 1));
    }
  std::size_t boost0 = g.size();
  for (std::size_t i = 0; i < n; ++i) {
    g.push_back(elementary(N, i, n) + elementary(N, n, i));
    labels.push_back("B" + std::to_string(i + 1));
  }
  std::size_t a_index = boost0 + n - 1;
  MetricLieAlgebra L =
      build_symmetric_iwasawa("hyperbolic:" + std::to_string(n), g, labels, {a_index}, g[a_index]);
  return AlgebraBundle{std::move(L), std::vector<std::size_t>{0}, {{"a1", {1}}}, {}};
}

/// 3-dim Heisenberg [X,Y] = Z extended by A acting diagonally with weights
/// (wx, wy, wz), wz = wx + wy; orthonormal basis A, X, Y, Z.
inline AlgebraBundle build_heisenberg_extension(const std::array<Rational, 3>& w) {
  for (const auto& v : w)
    if (v.sign() <= 0) throw InputError("weights must be positive");
  if (!(w[2] == w[0] + w[1])) throw InputError("derivation incompatible with [X,Y] = Z: need wz = wx + wy");
  StructureBuilder sb(4);
  sb.set(0, 1, w[0] * unit_vector(4, 1));
  sb.set(0, 2, w[1] * unit_vector(4, 2));
  sb.set(0, 3, w[2] * unit_vector(4, 3));
  sb.set(1, 2, unit_vector(4, 3));
  std::vector<NamedRoot> simple;
  // the smallest weight generates when all weights are multiples of it
  Rational lo = w[0] < w[1] ? w[0] : w[1];
  bool single = true;
  for (const auto& v : w)
    if (!(v / lo).is_integer()) single = false;
  if (single) simple.push_back({"a1", {lo}});
  return AlgebraBundle{sb.build("heisenberg-ext", {"A", "X", "Y", "Z"}, RatMatrix::identity(4)),
                       std::vector<std::size_t>{0}, std::move(simple), {}};
}

/// Heisenberg algebra with the two-dimensional abelian extension
/// A1 = diag(1,0,1), A2 = diag(0,1,1) on (X,Y,Z). `a_gram` must be positive
/// definite; `n_norms` are the (possibly negative) squared norms of X, Y, Z.
inline AlgebraBundle build_heisenberg_rank2(const RatMatrix& a_gram, const std::array<Rational, 3>& n_norms,
                                            const std::string& name = "heisenberg-rank2") {
  StructureBuilder sb(5);
  sb.set(0, 2, unit_vector(5, 2));
  sb.set(0, 4, unit_vector(5, 4));
  sb.set(1, 3, unit_vector(5, 3));
  sb.set(1, 4, unit_vector(5, 4));
  sb.set(2, 3, unit_vector(5, 4));
  RatMatrix g(5, 5);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j) g(i, j) = a_gram(i, j);
  for (std::size_t i = 0; i < 3; ++i) g(2 + i, 2 + i) = n_norms[i];
  return AlgebraBundle{sb.build(name, {"A1", "A2", "X", "Y", "Z"}, std::move(g)), std::vector<std::size_t>{0, 1},
                       {{"a1", {1, 0}}, {"a2", {0, 1}}}, {}};
}

/// a-gram making reflection in a2 permute {a1, a1+a2}: the dual pairing
/// satisfies <a1,a2> = -<a2,a2>/2. Requires p > q/4 > 0.
inline RatMatrix heisenberg_rank2_gram(const Rational& p, const Rational& q) {
  RatMatrix dual = RatMatrix::from_rows({{p, -q / Rational(2)}, {-q / Rational(2), q}});
  return inverse(dual);
}

inline AlgebraBundle build_heisenberg_rank2_default() {
  return build_heisenberg_rank2(heisenberg_rank2_gram(Rational(1), Rational(1)), {1, 1, 1});
}

/// Direct sum of two real hyperbolic planes: [A1,X1] = X1, [A2,X2] = X2.
inline AlgebraBundle build_hyperbolic_pair() {
  StructureBuilder sb(4);
  sb.set(0, 2, unit_vector(4, 2));
  sb.set(1, 3, unit_vector(4, 3));
  return AlgebraBundle{sb.build("hyperbolic-pair", {"A1", "A2", "X1", "X2"}, RatMatrix::identity(4)),
                       std::vector<std::size_t>{0, 1}, {{"b1", {1, 0}}, {"b2", {0, 1}}}, {}};
}

inline std::vector<std::string> catalog_names() {
  return {"km-sl3", "iwasawa-sl3", "hyperbolic:<n>", "heisenberg-ext", "heisenberg-rank2", "hyperbolic-pair"};
}

/// Looks up a catalog entry; "hyperbolic:<n>" takes its dimension after the colon.
inline AlgebraBundle catalog_entry(const std::string& name) {
  if (name == "km-sl3") return build_km_sl3();
  if (name == "iwasawa-sl3") return build_iwasawa_sl3();
  if (name == "heisenberg-ext") return build_heisenberg_extension({1, 1, 2});
  if (name == "heisenberg-rank2") return build_heisenberg_rank2_default();
  if (name == "hyperbolic-pair") return build_hyperbolic_pair();
  const std::string prefix = "hyperbolic:";
  if (name.rfind(prefix, 0) == 0) {
    std::string digits = name.substr(prefix.size());
    if (digits.empty() || digits.size() > 3 || digits.find_first_not_of("0123456789") != std::string::npos)
      throw InputError("bad hyperbolic dimension in '" + name + "'");
    return build_hyperbolic(std::stoul(digits));
  }
  throw InputError("unknown example '" + name + "'");
}

}  // namespace solvlie
