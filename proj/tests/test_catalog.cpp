#include <gtest/gtest.h>

#include <algorithm>
#include <fstream>
#include <sstream>

#include "oracles.hpp"
#include "solvlie/algebra_file.hpp"

using namespace solvlie;
using oracle::q;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

const std::string kData = SOLVLIE_TEST_DATA;

struct Labeled {
  const MetricLieAlgebra& L;
  RatVector operator()(const std::string& label) const {
    auto it = std::find(L.labels().begin(), L.labels().end(), label);
    if (it == L.labels().end()) throw std::runtime_error("no label " + label);
    return unit_vector(L.dim(), static_cast<std::size_t>(it - L.labels().begin()));
  }
};

std::size_t parse_error_line(const std::string& text) {
  try {
    parse_algebra(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return 0;
}

}  // namespace

TEST(KmSl3, DerivationsAndTruncation) {
  auto b = build_km_sl3();
  const auto& L = b.algebra;
  Labeled e{L};
  for (const char* x : {"tE31", "tE21", "tE32", "tH12", "tH23", "tE12", "tE23", "tE13"})
    EXPECT_EQ(bracket(L, e("D"), e(x)), e(x)) << x;
  for (const char* x : {"1E12", "1E23", "1E13"}) EXPECT_TRUE(is_zero(bracket(L, e("D"), e(x)))) << x;
  for (std::size_t i = 6; i < 14; ++i)
    for (std::size_t j = 6; j < 14; ++j) EXPECT_TRUE(is_zero(L.structure(i, j)));
}

TEST(KmSl3, HandComputedBrackets) {
  auto b = build_km_sl3();
  const auto& L = b.algebra;
  Labeled e{L};
  EXPECT_EQ(bracket(L, e("1E12"), e("1E23")), e("1E13"));
  EXPECT_EQ(bracket(L, e("tE12"), e("1E23")), e("tE13"));
  EXPECT_EQ(bracket(L, e("1E12"), e("tE21")), e("tH12"));
  // t[E31, E13] = t(E33 - E11) = -t(H12 + H23)
  EXPECT_EQ(bracket(L, e("tE31"), e("1E13")), -e("tH12") - e("tH23"));
  // diag(1,-1,0) on E31 has eigenvalue 0 - 1
  EXPECT_EQ(bracket(L, e("H1"), e("tE31")), -e("tE31"));
  EXPECT_EQ(bracket(L, e("H2"), e("1E12")), -e("1E12"));
}

TEST(KmSl3, ScalarProduct) {
  auto b = build_km_sl3();
  const auto& L = b.algebra;
  Labeled e{L};
  EXPECT_EQ(L.inner(e("tE12"), e("tE12")), 1);
  EXPECT_EQ(L.inner(e("1E12"), e("tE12")), 0);
  EXPECT_EQ(L.inner(e("tH12"), e("tH12")), 2);
  EXPECT_EQ(L.inner(e("tH12"), e("tH23")), -1);
  EXPECT_EQ(L.inner(e("D"), e("D")), q(16, 9));
  EXPECT_EQ(L.inner(e("H1"), e("H2")), -2);
}

TEST(KmSl3, Shape) {
  auto b = build_km_sl3();
  auto d = decompose(b);
  EXPECT_EQ(b.algebra.dim(), 14u);
  EXPECT_EQ(d.n.dim(), 11u);
  EXPECT_EQ(d.roots.size(), 10u);
  EXPECT_EQ(std::count_if(d.roots.begin(), d.roots.end(), [](const Root& r) { return r.multiplicity == 2; }), 1);
  auto cs = lower_central_series(restrict(b.algebra, d.n));
  EXPECT_TRUE(cs.nilpotent);
  EXPECT_EQ(cs.step, 5u);
  EXPECT_EQ(center(restrict(b.algebra, d.n)).dim(), 1u);
}

TEST(SymmetricIwasawa, Sl3KillingNormalization) {
  // B(X, Y) = 6 tr(XY) on sl3; B_sigma(X, Y) = B(X, Y^T)
  auto b = build_iwasawa_sl3();
  const auto& g = b.algebra.gram();
  EXPECT_EQ(g(0, 0), 24);
  EXPECT_EQ(g(0, 1), -12);
  EXPECT_EQ(g(1, 1), 24);
  for (std::size_t i = 2; i < 5; ++i) EXPECT_EQ(g(i, i), 6);
  auto d = decompose(b);
  EXPECT_EQ(d.a.dim(), 2u);
  EXPECT_EQ(d.roots.size(), 3u);
  std::vector<std::string> nl;
  for (const auto& v : d.n.basis()) nl.push_back(combination_label(b.algebra.labels(), v));
  std::sort(nl.begin(), nl.end());
  EXPECT_EQ(nl, (std::vector<std::string>{"E12", "E13", "E23"}));
}

TEST(SymmetricIwasawa, EinsteinConstants) {
  // Ric = -1/2 B on p, and a carries twice the induced form
  for (const auto& b : {build_iwasawa_sl3(), build_hyperbolic(2), build_hyperbolic(3), build_hyperbolic(4)}) {
    auto e = einstein_check(decompose(b));
    ASSERT_TRUE(e.direct) << b.algebra.name();
    EXPECT_EQ(*e.direct, q(-1, 4)) << b.algebra.name();
  }
}

TEST(SymmetricIwasawa, HyperbolicRankOne) {
  for (std::size_t n = 2; n <= 5; ++n) {
    auto b = build_hyperbolic(n);
    auto d = decompose(b);
    EXPECT_EQ(d.a.dim(), 1u);
    EXPECT_EQ(d.n.dim(), n - 1);
    ASSERT_EQ(d.roots.size(), 1u);
    // 2 B_sigma(boost, boost) = 2 (n-1) tr(boost^2)
    EXPECT_EQ(d.a_gram(0, 0), Rational(static_cast<long>(4 * (n - 1))));
  }
  EXPECT_THROW(build_hyperbolic(1), InputError);
}

TEST(HeisenbergExtension, Weights) {
  auto d112 = decompose(build_heisenberg_extension({1, 1, 2}));
  ASSERT_EQ(d112.roots.size(), 2u);
  EXPECT_EQ(d112.roots[0].multiplicity, 2u);
  auto d123 = decompose(build_heisenberg_extension({1, 2, 3}));
  ASSERT_EQ(d123.roots.size(), 3u);
  for (const auto& r : d123.roots) EXPECT_EQ(r.multiplicity, 1u);
  EXPECT_THROW(build_heisenberg_extension({1, 1, 1}), InputError);
  EXPECT_THROW(build_heisenberg_extension({-1, 2, 1}), InputError);
}

TEST(Catalog, EveryEntryIsValidAndStrongIwasawa) {
  for (const auto& b : oracle::catalog_bundles()) {
    EXPECT_TRUE(validate_algebra(b.algebra).ok()) << b.algebra.name();
    EXPECT_NO_THROW(decompose(b)) << b.algebra.name();
    if (!b.simple.empty()) {
      EXPECT_NO_THROW(verify_simple_system(decompose(b), b.simple, b.root_names));
    }
  }
}

TEST(Catalog, Lookup) {
  auto names = catalog_names();
  for (const char* n : {"km-sl3", "iwasawa-sl3", "hyperbolic:<n>", "heisenberg-ext"})
    EXPECT_NE(std::find(names.begin(), names.end(), n), names.end()) << n;
  EXPECT_EQ(catalog_entry("hyperbolic:3").algebra.dim(), 3u);
  EXPECT_EQ(catalog_entry("km-sl3"), build_km_sl3());
  EXPECT_THROW(catalog_entry("nope"), InputError);
  EXPECT_THROW(catalog_entry("hyperbolic:x"), InputError);
}

TEST(AlgebraFile, RoundTripEveryBuilder) {
  for (const auto& b : oracle::catalog_bundles()) {
    std::string text = serialize_algebra(b);
    AlgebraBundle back = parse_algebra(text);
    EXPECT_EQ(back, b) << b.algebra.name();
    EXPECT_EQ(serialize_algebra(back), text);
  }
}

TEST(AlgebraFile, GoldenFixture) {
  std::string golden = slurp(kData + "/km-sl3.alg");
  ASSERT_FALSE(golden.empty());
  EXPECT_EQ(serialize_algebra(build_km_sl3()), golden);
  EXPECT_EQ(parse_algebra(golden), build_km_sl3());
}

TEST(AlgebraFile, CommentsWhitespaceAndDefaults) {
  auto b = parse_algebra(
      "# heisenberg\n"
      "algebra h dim 3   # header\n"
      "\n"
      "bracket 1 2 :  3 = 1\n"
      "gram 1 1 1\n gram 2 2 1\ngram 3 3 1\n");
  EXPECT_EQ(b.algebra.labels(), (std::vector<std::string>{"e1", "e2", "e3"}));
  EXPECT_EQ(bracket(b.algebra, {1, 0, 0}, {0, 1, 0}), (RatVector{0, 0, 1}));
  EXPECT_EQ(bracket(b.algebra, {0, 1, 0}, {1, 0, 0}), (RatVector{0, 0, -1}));
  EXPECT_FALSE(b.a_basis.has_value());
}

TEST(AlgebraFile, ErrorsNameTheLine) {
  const std::string head = "algebra x dim 2\n";
  EXPECT_EQ(parse_error_line(head + "gram 1 1 4/-2\n"), 2u);
  EXPECT_EQ(parse_error_line(head + "gram 1 1 1\ngram 1 3 1\n"), 3u);
  EXPECT_EQ(parse_error_line(head + "bracket 2 1 : 1=1\n"), 2u);
  EXPECT_EQ(parse_error_line(head + "bracket 1 2 : 1=1\nbracket 1 2 : 2=1\n"), 3u);
  EXPECT_EQ(parse_error_line(head + "bracket 1 2 : 1=1, 1=2\n"), 2u);
  EXPECT_EQ(parse_error_line(head + "gram 1 2 1\ngram 2 1 1\n"), 3u);
  EXPECT_EQ(parse_error_line(head + "frobnicate\n"), 2u);
  EXPECT_EQ(parse_error_line("label 1 x\n"), 1u);
  EXPECT_NE(parse_error_line("# only a comment\n"), 0u);
  EXPECT_EQ(parse_error_line(head + "label 1 a\nlabel 1 b\n"), 3u);
  EXPECT_EQ(parse_error_line(slurp(kData + "/malformed.alg")), 5u);
}

TEST(AlgebraFile, HintsRoundTrip) {
  auto b = parse_algebra(
      "algebra p dim 4\n"
      "a-basis 1,2\n"
      "simple b1 1,0\n"
      "simple b2 0,1\n"
      "rootname c 1,1\n"
      "bracket 1 3 : 3=1\n"
      "bracket 2 4 : 4=1\n"
      "gram 1 1 1\ngram 2 2 1\ngram 3 3 1\ngram 4 4 1\n");
  ASSERT_TRUE(b.a_basis);
  EXPECT_EQ(*b.a_basis, (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(b.simple.size(), 2u);
  EXPECT_EQ(b.root_names[0].name, "c");
  EXPECT_EQ(parse_algebra(serialize_algebra(b)), b);
}
