#pragma once

// Analysis reports as ordered JSON trees, plus a plain-text rendering of the
// same tree so both formats carry identical content.

#include <json.hpp>

#include <algorithm>
#include <cstddef>
#include <iomanip>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "solvlie/algebra_file.hpp"
#include "solvlie/attached.hpp"
#include "solvlie/catalog.hpp"
#include "solvlie/curvature.hpp"
#include "solvlie/float_checks.hpp"
#include "solvlie/iwasawa.hpp"

namespace solvlie::report {

using Json = nlohmann::ordered_json;

inline Json to_json(const Rational& r) { return r.str(); }

inline Json to_json(const RatVector& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(x.str());
  return a;
}

inline Json to_json(const RatMatrix& m) {
  Json a = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(to_json(m.row(i)));
  return a;
}

inline std::string format_double(double v) {
  std::ostringstream s;
  s << std::setprecision(12) << v;
  return s.str();
}

inline Json to_json(const fp::Mat& m) {
  Json a = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(format_double(m(i, j)));
    a.push_back(row);
  }
  return a;
}

inline Json labels_of(const MetricLieAlgebra& L, const Subspace& s) {
  Json a = Json::array();
  for (const auto& v : s.basis()) a.push_back(combination_label(L.labels(), v));
  return a;
}

inline Json vector_label(const MetricLieAlgebra& L, const RatVector& v) { return combination_label(L.labels(), v); }

// ---------------------------------------------------------------------------

inline Json algebra_section(const MetricLieAlgebra& L, const ValidityReport& v) {
  Json j;
  j["name"] = L.name();
  j["dim"] = L.dim();
  Inertia in = inertia(L.gram());
  j["signature"] = {{"positive", in.positive}, {"negative", in.negative}, {"zero", in.zero}};
  Json checks = Json::object();
  for (const auto& c : v.checks) {
    Json e = {{"pass", c.pass}};
    if (!c.pass) e["witness"] = c.witness;
    checks[c.name] = e;
  }
  j["validity"] = checks;
  return j;
}

inline Json nilradical_section(const IwasawaDecomposition& dec) {
  Json j;
  MetricLieAlgebra N = restrict(dec.algebra, dec.n, dec.algebra.name() + "|n");
  CentralSeries cs = lower_central_series(N);
  j["dim"] = dec.n.dim();
  Json dims = Json::array();
  for (const auto& t : cs.terms) dims.push_back(t.dim());
  j["lower_central_series_dims"] = dims;
  j["nilpotent"] = cs.nilpotent;
  j["step"] = cs.step;
  j["center_dim"] = center(N).dim();
  j["basis"] = labels_of(dec.algebra, dec.n);
  return j;
}

inline Json iwasawa_section(const IwasawaDecomposition& dec, const std::optional<SimpleSystem>& sys) {
  const MetricLieAlgebra& L = dec.algebra;
  Json j;
  j["strong_iwasawa"] = true;
  j["a_basis"] = labels_of(L, dec.a);
  j["a_gram"] = to_json(dec.a_gram);
  j["witness_A0"] = vector_label(L, dec.witness_A0);
  Json roots = Json::array();
  std::vector<std::size_t> order;
  if (sys) order = sys->order;
  else
    for (std::size_t i = 0; i < dec.roots.size(); ++i) order.push_back(i);
  for (auto i : order) {
    const Root& r = dec.roots[i];
    Json e;
    if (sys) {
      e["label"] = sys->root_labels[i];
      e["coefficients"] = to_json(sys->coefficients[i]);
    }
    e["values"] = to_json(r.coords);
    e["multiplicity"] = r.multiplicity;
    e["root_vector"] = vector_label(L, root_vector(dec, r.coords));
    e["space"] = labels_of(L, r.space);
    roots.push_back(e);
  }
  j["roots"] = roots;
  if (sys) {
    Json s;
    Json names = Json::array(), duals = Json::array();
    for (std::size_t i = 0; i < sys->names.size(); ++i) {
      names.push_back(sys->names[i]);
      duals.push_back(vector_label(L, sys->dual_basis[i]));
    }
    s["names"] = names;
    s["dual_basis"] = duals;
    RatMatrix pairing(sys->names.size(), sys->names.size());
    for (std::size_t a = 0; a < sys->names.size(); ++a)
      for (std::size_t b = 0; b < sys->names.size(); ++b)
        pairing(a, b) = root_pairing(dec, dec.roots[sys->lambda[a]].coords, dec.roots[sys->lambda[b]].coords);
    s["pairings"] = to_json(pairing);
    j["simple_system"] = s;
  } else {
    Json sug = Json::array();
    for (const auto& c : suggest_simple_system(dec)) sug.push_back(to_json(c));
    j["suggested_simple_roots"] = sug;
  }
  return j;
}

inline Json einstein_json(const EinsteinReport& e) {
  Json j;
  j["einstein"] = e.direct.has_value();
  j["lambda"] = e.direct ? Json(e.direct->str()) : Json(nullptr);
  j["criterion"] = {{"nilradical_clause", e.nil_clause},
                    {"trace_form_clause", e.trace_clause},
                    {"lambda", e.conti_rossi ? Json(e.conti_rossi->str()) : Json(nullptr)}};
  j["trace_form"] = to_json(e.trace_form);
  return j;
}

inline Json curvature_section(const IwasawaDecomposition& dec, const CurvatureReport& c) {
  Json j;
  j["mean_curvature"] = vector_label(dec.algebra, c.mean_curvature);
  j["ricci_n"] = to_json(c.ricci_n);
  j["ad_H_on_n"] = to_json(c.ad_h_n);
  j["ricci_n_minus_ad_H"] = to_json(c.einstein.nil_part);
  j["ricci_s"] = to_json(c.ricci_s);
  j["einstein"] = einstein_json(c.einstein);
  return j;
}

/// validate, decompose, roots, curvature; throws on the first failing stage.
inline Json analyze_exact(const AlgebraBundle& b) {
  Json j;
  ValidityReport v = validate_algebra(b.algebra);
  j["mode"] = "exact";
  j["algebra"] = algebra_section(b.algebra, v);
  if (!v.ok()) throw ValidationError("validity", "algebra fails validation");
  IwasawaDecomposition dec = decompose(b);
  std::optional<SimpleSystem> sys;
  if (!b.simple.empty()) sys = verify_simple_system(dec, b.simple, b.root_names);
  j["nilradical"] = nilradical_section(dec);
  j["iwasawa"] = iwasawa_section(dec, sys);
  j["curvature"] = curvature_section(dec, curvature_report(dec));
  return j;
}

inline Json analyze_float(const AlgebraBundle& b, double tol) {
  Json j;
  ValidityReport v = validate_algebra(b.algebra);
  j["mode"] = "float";
  j["tolerance"] = format_double(tol);
  j["algebra"] = algebra_section(b.algebra, v);
  if (!v.ok()) throw ValidationError("validity", "algebra fails validation");
  fp::FloatCurvature fc = fp::float_curvature(b.algebra, tol);
  Json c;
  Json h = Json::array();
  for (Eigen::Index i = 0; i < fc.mean_curvature.size(); ++i) h.push_back(format_double(fc.mean_curvature(i)));
  c["mean_curvature"] = h;
  c["ricci_n"] = to_json(fc.ricci_n);
  c["ricci_s"] = to_json(fc.ricci_s);
  c["einstein"] = {{"einstein", fc.einstein.has_value()},
                   {"lambda", fc.einstein ? Json(format_double(*fc.einstein)) : Json(nullptr)}};
  j["curvature"] = c;
  return j;
}

// ---------------------------------------------------------------------------

struct AttachedOutcome {
  Json report;
  bool admissible = true;
};

inline AttachedOutcome analyze_attached(const AlgebraBundle& b, const std::vector<std::string>& lambda_prime_names,
                                        double tol) {
  AttachedOutcome out;
  Json& j = out.report;
  j["mode"] = "exact";
  ValidityReport v = validate_algebra(b.algebra);
  j["algebra"] = algebra_section(b.algebra, v);
  if (!v.ok()) throw ValidationError("validity", "algebra fails validation");
  if (b.simple.empty()) throw InputError("a simple system is required (use --simple or a 'simple' directive)");
  IwasawaDecomposition dec = decompose(b);
  SimpleSystem sys = verify_simple_system(dec, b.simple, b.root_names);
  std::vector<std::size_t> lp = resolve_lambda_prime(sys, lambda_prime_names);
  const MetricLieAlgebra& L = dec.algebra;

  Json names = Json::array();
  for (auto i : lp) names.push_back(sys.names[i]);
  j["lambda_prime"] = names;
  RatVector z = characteristic_vector(dec, sys, lp);
  j["Z"] = vector_label(L, z);

  AdmissibilityReport adm = check_admissible(dec, sys, lp);
  Json perms = Json::array();
  for (const auto& p : adm.permutations) {
    Json m = Json::object();
    for (const auto& [from, to] : p.map) m[sys.root_labels[from]] = sys.root_labels[to];
    perms.push_back({{"reflection", sys.names[p.simple]}, {"permutation", m}});
  }
  j["admissibility"] = {{"admissible", adm.admissible}, {"permutations", perms}};
  if (!adm.admissible) {
    j["admissibility"]["witness"] = adm.witness;
    out.admissible = false;
    return out;
  }

  AttachedSubalgebra att = build_attached(dec, sys, lp);
  Json sub;
  sub["a_prime"] = labels_of(L, att.a_prime);
  sub["n_prime"] = labels_of(L, att.n_prime);
  sub["a_zero"] = labels_of(L, att.a_zero);
  sub["n_zero"] = labels_of(L, att.n_zero);
  sub["dims"] = {{"a_prime", att.a_prime.dim()},
                 {"n_prime", att.n_prime.dim()},
                 {"a_zero", att.a_zero.dim()},
                 {"n_zero", att.n_zero.dim()}};
  sub["H"] = vector_label(L, att.H);
  sub["H_prime"] = vector_label(L, att.H_prime);
  Json inv = Json::object();
  for (const auto& c : attached_invariants(dec, sys, att)) inv[c.name] = c.pass;
  sub["invariants"] = inv;
  j["subalgebra"] = sub;

  MainTheoremReport mt = main_theorem_report(dec, att);
  fp::DirectJacobiStar direct = fp::jacobi_star_direct(dec, att, tol);
  if (direct.holds != mt.jacobi.holds)
    throw TheoremViolation("float Jacobi Star verdict disagrees with the exact verdict");
  j["jacobi_star"] = {{"holds", mt.jacobi.holds},
                      {"ricci_n_minus_ricci_n_prime", to_json(mt.jacobi.ricci_difference)},
                      {"ad_H_minus_H_prime", to_json(mt.jacobi.ad_difference)},
                      {"direct_float", {{"holds", direct.holds},
                                        {"max_error", format_double(direct.max_error)},
                                        {"tolerance", format_double(tol)}}}};
  j["main_theorem"] = {{"clause_i", mt.clause_i},
                       {"clause_ii", mt.clause_ii},
                       {"clause_iii", mt.clause_iii},
                       {"ricci_s_preserves_s_prime", mt.ricci_preserves_s_prime},
                       {"ricci_s_prime", to_json(mt.ricci_s_prime)}};
  j["einstein_s_prime"] = einstein_json(einstein_check(att.restricted_dec));
  j["einstein_s"] = einstein_json(einstein_check(dec));
  MinimalityResult mr = minimality_check(L, att.s_prime);
  j["minimal"] = {{"minimal", mr.minimal}, {"trace_h", vector_label(L, mr.trace_h)}};
  TotallyGeodesicResult tg = totally_geodesic_check(dec, sys, att);
  Json pairs = Json::array();
  for (const auto& p : tg.pairings) pairs.push_back(p.str());
  j["totally_geodesic"] = {
      {"totally_geodesic", tg.verdict}, {"via_roots", tg.via_roots}, {"via_h", tg.via_h}, {"pairings", pairs}};
  DerivationCheck pw = jacobi_star_pointwise_check(att, L);
  j["ad_star_identity_on_n_zero"] = {{"pass", pw.pass}};
  if (!pw.pass) j["ad_star_identity_on_n_zero"]["witness"] = pw.witness;
  DerivationCheck dc = ad_star_derivation_check(L, att.n_zero);
  j["ad_star_derivation_on_n_zero"] = {{"pass", dc.pass}};
  if (!dc.pass) j["ad_star_derivation_on_n_zero"]["witness"] = dc.witness;
  return out;
}

// ---------------------------------------------------------------------------

namespace detail {

inline bool is_scalar(const Json& j) { return !j.is_array() && !j.is_object(); }

inline std::string scalar_text(const Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_null()) return "none";
  return j.dump();
}

inline bool is_matrix(const Json& j) {
  if (!j.is_array() || j.empty()) return false;
  for (const auto& r : j)
    if (!r.is_array() || r.size() != j.size()) return false;
  for (const auto& r : j)
    for (const auto& x : r)
      if (!is_scalar(x)) return false;
  return true;
}

inline bool is_zero_text(const Json& x) {
  if (!x.is_string()) return false;
  const auto& s = x.get_ref<const std::string&>();
  return s == "0" || s.find_first_not_of("0.-") == std::string::npos;
}

inline void render(std::ostringstream& out, const Json& j, const std::string& key, int depth) {
  const std::string pad(static_cast<std::size_t>(2 * depth), ' ');
  const std::string head = pad + key + (key.empty() ? "" : ":");
  if (is_scalar(j)) {
    out << head << " " << scalar_text(j) << "\n";
  } else if (is_matrix(j)) {
    bool diagonal = true;
    for (std::size_t r = 0; r < j.size(); ++r)
      for (std::size_t c = 0; c < j.size(); ++c)
        if (r != c && !is_zero_text(j[r][c])) diagonal = false;
    if (diagonal) {
      out << head << " diag(";
      for (std::size_t r = 0; r < j.size(); ++r) out << (r ? ", " : "") << scalar_text(j[r][r]);
      out << ")\n";
    } else {
      out << head << "\n";
      for (const auto& row : j) {
        out << pad << "  [";
        for (std::size_t c = 0; c < row.size(); ++c) out << (c ? ", " : "") << scalar_text(row[c]);
        out << "]\n";
      }
    }
  } else if (j.is_array()) {
    bool flat = true;
    for (const auto& x : j)
      if (!is_scalar(x) && !(x.is_array() && std::all_of(x.begin(), x.end(), is_scalar))) flat = false;
    if (flat) {
      out << head << " [";
      for (std::size_t i = 0; i < j.size(); ++i) {
        out << (i ? ", " : "");
        if (is_scalar(j[i])) {
          out << scalar_text(j[i]);
        } else {
          out << "(";
          for (std::size_t k = 0; k < j[i].size(); ++k) out << (k ? ", " : "") << scalar_text(j[i][k]);
          out << ")";
        }
      }
      out << "]\n";
    } else {
      out << head << "\n";
      for (std::size_t i = 0; i < j.size(); ++i) render(out, j[i], "- " + std::to_string(i + 1), depth + 1);
    }
  } else {
    if (!key.empty()) out << head << "\n";
    for (const auto& [k, v] : j.items()) render(out, v, k, key.empty() ? depth : depth + 1);
  }
}

}  // namespace detail

inline std::string to_text(const Json& j) {
  std::ostringstream out;
  detail::render(out, j, "", 0);
  return out.str();
}

}  // namespace solvlie::report
