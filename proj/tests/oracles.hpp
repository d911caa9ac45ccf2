#pragma once

// Test-only oracles. Nothing here calls into curvature.hpp for the quantity
// being checked.

#include <cstddef>
#include <random>
#include <string>
#include <vector>

#include "solvlie/attached.hpp"
#include "solvlie/catalog.hpp"
#include "solvlie/curvature.hpp"
#include "solvlie/lie_algebra.hpp"

namespace oracle {

using namespace solvlie;

inline RatMatrix diag(std::initializer_list<Rational> d) { return RatMatrix::diagonal(std::vector<Rational>(d)); }

inline Rational q(long p, long r = 1) { return Rational(p, r); }

/// Levi-Civita connection from the Koszul formula:
/// <nabla_x y, z> = 1/2 (<[x,y],z> - <[y,z],x> + <[z,x],y>).
/// nabla[i] has column j = nabla_{e_i} e_j.
inline std::vector<RatMatrix> levi_civita(const MetricLieAlgebra& L) {
  const std::size_t n = L.dim();
  const RatMatrix& G = L.gram();
  RatMatrix Gi = inverse(G);
  std::vector<RatVector> br(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) br[i * n + j] = L.structure(i, j);
  auto g = [&](const RatVector& v, std::size_t k) {
    Rational s;
    for (std::size_t m = 0; m < n; ++m)
      if (!v[m].is_zero()) s += v[m] * G(m, k);
    return s;
  };
  std::vector<RatMatrix> nabla(n, RatMatrix(n, n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      RatVector low(n);
      for (std::size_t k = 0; k < n; ++k)
        low[k] = Rational(1, 2) * (g(br[i * n + j], k) - g(br[j * n + k], i) + g(br[k * n + i], j));
      nabla[i].set_column(j, Gi * low);
    }
  return nabla;
}

/// Ricci endomorphism from R(x,y) = [nabla_x, nabla_y] - nabla_[x,y] and
/// ric(y,z) = tr(x -> R(x,y)z).
inline RatMatrix levi_civita_ricci(const MetricLieAlgebra& L) {
  const std::size_t n = L.dim();
  auto nabla = levi_civita(L);
  auto nabla_of = [&](const RatVector& v) {
    RatMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
      if (!v[i].is_zero()) m += v[i] * nabla[i];
    return m;
  };
  RatMatrix ric(n, n);
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      RatMatrix R = nabla[x] * nabla[y] - nabla[y] * nabla[x] - nabla_of(L.structure(x, y));
      for (std::size_t z = 0; z < n; ++z) ric(y, z) += R(x, z);
    }
  return inverse(L.gram()) * ric;
}

/// Same algebra on the basis f_i = sum_k P(k,i) e_k.
inline MetricLieAlgebra change_basis(const MetricLieAlgebra& L, const RatMatrix& P) {
  const std::size_t n = L.dim();
  RatMatrix Pi = inverse(P);
  StructureBuilder sb(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) sb.set(i, j, Pi * bracket(L, P.column(i), P.column(j)));
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back("f" + std::to_string(i + 1));
  return sb.build(L.name() + "~", labels, P.transpose() * L.gram() * P);
}

/// Unit upper triangular times unit lower triangular with small integer
/// entries, so determinant 1 and entries stay modest.
inline RatMatrix random_unimodular(std::size_t n, std::mt19937& rng) {
  std::uniform_int_distribution<int> d(-2, 2);
  RatMatrix U = RatMatrix::identity(n), Lw = RatMatrix::identity(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      U(i, j) = Rational(d(rng));
      Lw(j, i) = Rational(d(rng));
    }
  return U * Lw;
}

inline RatVector random_vector(std::size_t n, std::mt19937& rng, int lo = -5, int hi = 5) {
  std::uniform_int_distribution<int> d(lo, hi), den(1, 4);
  RatVector v(n);
  for (auto& x : v) x = Rational(d(rng), den(rng));
  return v;
}

inline std::vector<AlgebraBundle> catalog_bundles() {
  return {build_km_sl3(),
          build_iwasawa_sl3(),
          build_hyperbolic(2),
          build_hyperbolic(3),
          build_hyperbolic(4),
          build_heisenberg_extension({1, 1, 2}),
          build_heisenberg_extension({1, 2, 3}),
          build_heisenberg_rank2_default(),
          build_hyperbolic_pair()};
}

/// Every proper subset of positions 0..k-1, the empty set first.
inline std::vector<std::vector<std::size_t>> proper_subsets(std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t mask = 0; mask + 1 < (std::size_t{1} << k); ++mask) {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < k; ++i)
      if (mask & (std::size_t{1} << i)) s.push_back(i);
    out.push_back(s);
  }
  return out;
}

// --- structural lemmas, checked clause by clause on basis tuples -----------

struct Failure {
  std::string clause;
  std::string where;
};

/// U on a and on root spaces. Empty result means every clause holds.
inline std::vector<Failure> u_tensor_lemma(const IwasawaDecomposition& dec) {
  const MetricLieAlgebra& L = dec.algebra;
  std::vector<Failure> out;
  const auto& ab = dec.a.basis();
  for (std::size_t i = 0; i < ab.size(); ++i)
    for (std::size_t j = 0; j < ab.size(); ++j)
      if (!is_zero(u_tensor(L, ab[i], ab[j]))) out.push_back({"U(A,B)=0", std::to_string(i) + "," + std::to_string(j)});
  for (std::size_t r = 0; r < dec.roots.size(); ++r) {
    const Root& root = dec.roots[r];
    for (const auto& X : root.space.basis())
      for (const auto& A : ab)
        if (!(u_tensor(L, A, X) == Rational(-1, 2) * bracket(L, A, X)))
          out.push_back({"U(A,X)=-1/2[A,X]", "root " + std::to_string(r)});
    for (const auto& X : root.space.basis())
      for (const auto& Y : root.space.basis())
        if (!dec.a.contains(u_tensor(L, X, Y))) out.push_back({"U(X,Y) in a", "root " + std::to_string(r)});
    for (std::size_t s = 0; s < dec.roots.size(); ++s) {
      if (s == r) continue;
      std::vector<RatVector> allowed;
      for (const RatVector& d : {RatVector(root.coords - dec.roots[s].coords), RatVector(dec.roots[s].coords - root.coords)})
        if (auto k = dec.find_root(d))
          for (const auto& v : dec.roots[*k].space.basis()) allowed.push_back(v);
      Subspace target = Subspace::span(L.dim(), allowed);
      for (const auto& X : root.space.basis())
        for (const auto& Y : dec.roots[s].space.basis()) {
          RatVector u = u_tensor(L, X, Y);
          RatVector ua = orthogonal_projection(L.gram(), dec.a, u);
          if (!is_zero(ua)) out.push_back({"a-part of U(X,Y) zero", std::to_string(r) + "," + std::to_string(s)});
          if (!target.contains(u - ua))
            out.push_back({"n-part of U(X,Y) in n_(b-a)+n_(a-b)", std::to_string(r) + "," + std::to_string(s)});
        }
    }
  }
  return out;
}

/// Second fundamental form of an attached subalgebra on a' and n'.
inline std::vector<Failure> second_fundamental_lemma(const IwasawaDecomposition& dec, const AttachedSubalgebra& att) {
  const MetricLieAlgebra& L = dec.algebra;
  std::vector<Failure> out;
  auto h = [&](const RatVector& x, const RatVector& y) {
    return second_fundamental_form(L, att.restricted, att.s_prime, x, y);
  };
  for (const auto& A : att.a_prime.basis())
    for (const auto& B : att.a_prime.basis())
      if (!is_zero(h(A, B))) out.push_back({"h(A,A)=0", ""});
  for (const auto& A : att.a_prime.basis())
    for (const auto& X : att.n_prime.basis())
      if (!is_zero(h(A, X))) out.push_back({"h(A,X)=0", ""});
  for (auto r : att.positive_roots)
    for (const auto& X : dec.roots[r].space.basis()) {
      RatVector expect = -orthogonal_projection(L.gram(), att.a_zero, ad_star_apply(L, X, X));
      if (!(h(X, X) == expect)) out.push_back({"h(X,X)=-pi(ad*_X X)", "root " + std::to_string(r)});
    }
  return out;
}

}  // namespace oracle
