// Acceptance driver: one line per criterion, nonzero exit if any fails.
// Optional argv[1]: path to the CLI binary, used for the determinism check.

#include <array>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "solvlie/algebra_file.hpp"
#include "solvlie/float_checks.hpp"
#include "solvlie/report.hpp"

using namespace solvlie;
using oracle::diag;
using oracle::q;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
  void require(bool ok, const std::string& what) {
    if (!ok && pass) {
      pass = false;
      detail = what;
    }
  }
};

struct Example {
  AlgebraBundle bundle = build_km_sl3();
  IwasawaDecomposition dec = decompose(bundle);
  SimpleSystem sys = verify_simple_system(dec, bundle.simple, bundle.root_names);
  AttachedSubalgebra att = build_attached(dec, sys, resolve_lambda_prime(sys, {"a2"}));
  RatVector at(Rational d, Rational h1, Rational h2) const {
    RatVector v = zero_vector(14);
    v[0] = d;
    v[1] = h1;
    v[2] = h2;
    return v;
  }
};

const Example& ex() {
  static const Example e;
  return e;
}

struct Parent {
  IwasawaDecomposition dec;
  SimpleSystem sys;
};

std::vector<Parent> parents() {
  std::vector<Parent> out;
  for (const auto& b : oracle::catalog_bundles()) {
    if (b.simple.empty()) continue;
    auto d = decompose(b);
    auto s = verify_simple_system(d, b.simple, b.root_names);
    out.push_back({std::move(d), std::move(s)});
  }
  return out;
}

template <class F>
void for_each_admissible(const Parent& p, F&& f) {
  for (const auto& lp : oracle::proper_subsets(p.sys.lambda.size()))
    if (check_admissible(p.dec, p.sys, lp).admissible) f(lp, build_attached(p.dec, p.sys, lp));
}

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

std::optional<std::string> run(const std::string& cmd) {
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return std::nullopt;
  std::string out;
  std::array<char, 4096> buf;
  std::size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), p)) > 0) out.append(buf.data(), got);
  if (pclose(p) != 0) return std::nullopt;
  return out;
}

// ---------------------------------------------------------------------------

Outcome c1() {
  Outcome o;
  const auto& e = ex();
  RatMatrix ric = ricci_n(e.dec);
  RatMatrix adh = ad_on_n(e.dec, mean_curvature(e.dec));
  o.require(ric == diag({q(-7, 2), q(-7, 2), q(-5, 2), -2, -1, -1, 0, 0, 1, 1, 2}), "Ric^n");
  o.require(adh == diag({1, 1, 2, q(5, 2), q(7, 2), q(7, 2), q(9, 2), q(9, 2), q(11, 2), q(11, 2), q(13, 2)}),
            "ad_H on n");
  o.require(ric - adh == q(-9, 2) * RatMatrix::identity(11), "Ric^n - ad_H");
  return o;
}

Outcome c2() {
  Outcome o;
  auto r = einstein_check(ex().dec);
  o.require(r.direct && *r.direct == q(-9, 2), "direct lambda");
  o.require(r.nil_clause && r.nil_lambda && *r.nil_lambda == q(-9, 2), "nilradical clause");
  o.require(r.trace_clause, "trace-form clause");
  o.require(r.trace_form == q(9, 2) * r.a_gram, "trace form = 9/2 gram");
  o.require(r.conti_rossi && *r.conti_rossi == q(-9, 2), "criterion lambda");
  return o;
}

Outcome c3() {
  Outcome o;
  const auto& e = ex();
  o.require(mean_curvature(e.dec) == e.at(q(9, 2), 1, 1), "H");
  o.require(e.att.H == e.at(q(9, 2), 1, 1), "attached H");
  o.require(e.att.H_prime == e.at(q(9, 2), 1, q(1, 2)), "H'");
  RatVector a2 = e.dec.roots[e.sys.lambda[*e.sys.index_of("a2")]].coords;
  o.require(reflect(e.dec, a2, e.att.H_prime) == e.att.H_prime, "reflection fixes H'");
  return o;
}

Outcome c4() {
  Outcome o;
  const auto& e = ex();
  auto js = jacobi_star_exact(e.dec, e.att);
  o.require(restricted_operator(ad_matrix(e.dec.algebra, e.att.H_prime), e.att.n_prime) ==
                diag({q(3, 2), q(3, 2), 3, 3, q(9, 2), q(9, 2), q(9, 2), 6, q(9, 2), 6}),
            "ad_H' on n'");
  o.require(ricci_n(e.att.restricted_dec) == diag({-3, -3, q(-3, 2), q(-3, 2), 0, 0, 0, q(3, 2), 0, q(3, 2)}),
            "Ric^n'");
  RatMatrix d = diag({q(-1, 2), q(1, 2), q(-1, 2), q(1, 2), -1, 0, 0, q(-1, 2), 1, q(1, 2)});
  o.require(js.ricci_difference == d, "Ric^n|n' - Ric^n'");
  o.require(js.ad_difference == d, "ad_{H-H'}");
  return o;
}

Outcome c5() {
  Outcome o;
  const auto& e = ex();
  auto rep = main_theorem_report(e.dec, e.att);
  o.require(rep.clause_i && rep.clause_ii && rep.clause_iii, "example clauses");
  o.require(rep.ricci_s_prime == q(-9, 2) * RatMatrix::identity(12), "Ric^s' = -9/2 Id");
  std::size_t cases = 0;
  for (const auto& p : parents())
    for_each_admissible(p, [&](const auto&, const AttachedSubalgebra& att) {
      auto r = main_theorem_report(p.dec, att);
      o.require(r.clause_i == r.clause_ii && r.clause_ii == r.clause_iii, p.dec.algebra.name());
      ++cases;
    });
  std::mt19937 rng(2024);
  std::uniform_int_distribution<int> num(1, 9), den(1, 5), sgn(0, 3), pick(0, 2);
  std::size_t variants = 0, holds = 0;
  for (int t = 0; t < 120; ++t) {
    Rational qq(num(rng), den(rng));
    Rational pp = (t % 3 == 0) ? qq : qq / 4 + Rational(num(rng), den(rng));
    std::array<Rational, 3> norms;
    for (auto& x : norms) x = Rational(num(rng) * (sgn(rng) == 0 ? -1 : 1), den(rng));
    auto b = build_heisenberg_rank2(heisenberg_rank2_gram(pp, qq), norms, "heis2-" + std::to_string(t));
    auto d = decompose(b);
    auto sys = verify_simple_system(d, b.simple, b.root_names);
    std::vector<std::vector<std::string>> choices{{}, {"a2"}, {"a1"}};
    auto lp = resolve_lambda_prime(sys, choices[static_cast<std::size_t>(pick(rng))]);
    if (!check_admissible(d, sys, lp).admissible) continue;
    auto r = main_theorem_report(d, build_attached(d, sys, lp));
    o.require(r.clause_i == r.clause_ii && r.clause_ii == r.clause_iii, "variant " + std::to_string(t));
    ++variants;
    if (r.clause_ii) ++holds;
  }
  o.require(variants >= 100, "fewer than 100 admissible variants");
  if (o.pass)
    o.detail = std::to_string(cases) + " catalog cases, " + std::to_string(variants) + " variants (" +
               std::to_string(holds) + " satisfy the clauses)";
  return o;
}

Outcome c6() {
  Outcome o;
  std::size_t cases = 0;
  for (const auto& p : parents())
    for_each_admissible(p, [&](const auto&, const AttachedSubalgebra& att) {
      auto m = minimality_check(p.dec.algebra, att.s_prime);
      o.require(m.minimal && is_zero(m.trace_h), "trace of h on " + p.dec.algebra.name());
      ++cases;
    });
  const auto& e = ex();
  auto tg = totally_geodesic_check(e.dec, e.sys, e.att);
  o.require(!tg.verdict && !tg.via_roots && !tg.via_h, "example is not totally geodesic");
  bool nonzero = false;
  for (const auto& x : tg.pairings) nonzero = nonzero || !x.is_zero();
  o.require(nonzero, "a pairing across lambda' is nonzero");
  if (o.pass) {
    o.detail = std::to_string(cases) + " minimal cases; pairings";
    for (const auto& x : tg.pairings) o.detail += " " + x.str();
  }
  return o;
}

Outcome c7() {
  Outcome o;
  auto b = build_iwasawa_sl3();
  auto d = decompose(b);
  auto sys = verify_simple_system(d, b.simple, b.root_names);
  auto parent = einstein_check(d);
  o.require(parent.direct.has_value(), "sl3 Einstein");
  bool pointwise = true;
  for (const auto& lp : oracle::proper_subsets(sys.lambda.size())) {
    auto att = build_attached(d, sys, lp);
    o.require(jacobi_star_exact(d, att).holds, "Jacobi Star");
    auto child = einstein_check(att.restricted_dec);
    o.require(child.direct && parent.direct && *child.direct == *parent.direct, "inherited lambda");
    pointwise = pointwise && jacobi_star_pointwise_check(att, d.algebra).pass;
  }
  auto dc = ad_star_derivation_check(d.algebra, d.n);
  o.require(dc.pass, "ad*_X is not a derivation for X in n, witness (X, y, z) = " + dc.witness +
                         "; Jacobi Star, Einstein inheritance and the pointwise (n0, n') identity " +
                         (o.pass && pointwise ? "all hold" : "do not all hold"));
  if (o.pass) o.detail = "lambda " + parent.direct->str();
  return o;
}

Outcome c8() {
  Outcome o;
  double worst = 0.0;
  std::size_t js_cases = 0;
  for (const auto& b : oracle::catalog_bundles()) {
    auto d = decompose(b);
    if (d.n.dim() > 0) {
      auto N = restrict(d.algebra, d.n);
      double err = fp::relative_error(fp::ricci_nilpotent_orthonormal(N), fp::to_eigen(ricci_nilpotent(N)));
      worst = std::max(worst, err);
      o.require(err <= 1e-9, "orthonormal Ricci sum on " + b.algebra.name());
    }
  }
  for (const auto& p : parents())
    for_each_admissible(p, [&](const auto&, const AttachedSubalgebra& att) {
      auto direct = fp::jacobi_star_direct(p.dec, att, 1e-9);
      o.require(direct.holds == jacobi_star_exact(p.dec, att).holds, "direct Jacobi Star on " + p.dec.algebra.name());
      ++js_cases;
    });
  if (o.pass) {
    std::ostringstream s;
    s << "max Ricci error " << worst << ", " << js_cases << " Jacobi Star cases";
    o.detail = s.str();
  }
  return o;
}

Outcome c9() {
  Outcome o;
  std::size_t algebras = 0, attached = 0;
  for (const auto& b : oracle::catalog_bundles()) {
    auto d = decompose(b);
    auto f = oracle::u_tensor_lemma(d);
    o.require(f.empty(), b.algebra.name() + " U-tensor " + (f.empty() ? "" : f[0].clause + " " + f[0].where));
    ++algebras;
  }
  for (const auto& p : parents())
    for_each_admissible(p, [&](const auto&, const AttachedSubalgebra& att) {
      for (const auto& c : attached_invariants(p.dec, p.sys, att))
        o.require(c.pass, p.dec.algebra.name() + ": " + c.name + " " + c.detail);
      try {
        verify_strong_iwasawa(att.restricted);
      } catch (const Error& err) {
        o.require(false, p.dec.algebra.name() + ": restricted not strong Iwasawa: " + err.what());
      }
      auto u = oracle::u_tensor_lemma(att.restricted_dec);
      o.require(u.empty(), p.dec.algebra.name() + " restricted U-tensor");
      auto h = oracle::second_fundamental_lemma(p.dec, att);
      o.require(h.empty(), p.dec.algebra.name() + " second fundamental form " + (h.empty() ? "" : h[0].clause));
      ++attached;
    });
  if (o.pass) o.detail = std::to_string(algebras) + " algebras, " + std::to_string(attached) + " attached subalgebras";
  return o;
}

Outcome c10(const std::string& cli) {
  Outcome o;
  std::string golden = slurp(std::string(SOLVLIE_TEST_DATA) + "/km-sl3.alg");
  o.require(!golden.empty(), "golden fixture missing");
  o.require(serialize_algebra(parse_algebra(golden)) == golden, "serialize(parse(golden)) != golden");
  o.require(parse_algebra(golden) == build_km_sl3(), "golden fixture does not parse to the example");
  auto b = build_km_sl3();
  o.require(report::to_text(report::analyze_exact(b)) == report::to_text(report::analyze_exact(b)),
            "in-process analyze report differs");
  o.require(report::analyze_attached(b, {"a2"}, 1e-9).report.dump() ==
                report::analyze_attached(b, {"a2"}, 1e-9).report.dump(),
            "in-process attached report differs");
  if (!cli.empty()) {
    for (const std::string args : {" analyze --example km-sl3", " attached --example km-sl3 --lambda-prime a2",
                                   " --format json analyze --example km-sl3"}) {
      auto first = run("'" + cli + "'" + args), second = run("'" + cli + "'" + args);
      o.require(first && second && !first->empty() && *first == *second, "CLI output differs:" + args);
    }
  } else {
    o.detail = "CLI not given, in-process only";
  }
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  std::string cli = argc > 1 ? argv[1] : "";
  std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
      {"example Ricci of the nilradical", c1},
      {"Einstein constant by both routes", c2},
      {"mean curvature vectors", c3},
      {"attached subalgebra matrices", c4},
      {"main theorem clauses", c5},
      {"minimal, not totally geodesic", c6},
      {"symmetric-space specialization", c7},
      {"float oracle equivalence", c8},
      {"structural invariants", c9},
      {"determinism and round trip", [&] { return c10(cli); }},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    if (!o.pass) ++failed;
    std::cout << "criterion " << i + 1 << ": " << (o.pass ? "PASS" : "FAIL") << "  " << criteria[i].first;
    if (!o.detail.empty()) std::cout << " (" << o.detail << ")";
    std::cout << "\n";
  }
  std::cout << (failed == 0 ? "all criteria pass" : std::to_string(failed) + " criteria fail") << "\n";
  return failed == 0 ? 0 : 1;
}
