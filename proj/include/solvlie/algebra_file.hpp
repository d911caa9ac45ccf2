#pragma once

// Line-oriented text format for metric Lie algebras.
//
//   # comment
//   algebra <name> dim <n>
//   label <i> <text>
//   bracket <i> <j> : <k>=<p/q>, <k>=<p/q>, ...     (i < j)
//   gram <i> <j> <p/q>                               (sets (i,j) and (j,i))
//   a-basis <i>,<j>,...
//   simple <name> <c1>,<c2>,...                      (root values on the a-basis)
//   rootname <name> <c1>,<c2>,...
//
// Indices are 1-based. Missing brackets and gram entries are zero.

#include <cctype>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "solvlie/catalog.hpp"
#include "solvlie/error.hpp"
#include "solvlie/lie_algebra.hpp"

namespace solvlie {

namespace detail {

inline std::string_view trim_view(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

inline std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i)
    if (i == s.size() || s[i] == sep) {
      out.emplace_back(trim_view(s.substr(start, i - start)));
      start = i + 1;
    }
  return out;
}

inline std::vector<std::string> words(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

class LineParser {
 public:
  explicit LineParser(std::size_t line) : line_(line) {}

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(line_, msg); }

  std::size_t index(const std::string& tok, std::size_t dim) const {
    if (tok.empty() || tok.size() > 9 || tok.find_first_not_of("0123456789") != std::string::npos)
      fail("bad index '" + tok + "'");
    std::size_t v = std::stoul(tok);
    if (v < 1 || v > dim) fail("index " + tok + " out of range 1.." + std::to_string(dim));
    return v - 1;
  }

  Rational rational(const std::string& tok) const {
    try {
      return Rational::parse(tok);
    } catch (const InputError& e) {
      fail(std::string("bad rational '") + tok + "': " + e.what());
    }
  }

  RatVector rationals(const std::string& list) const {
    RatVector v;
    for (const auto& t : split(list, ',')) v.push_back(rational(t));
    return v;
  }

 private:
  std::size_t line_;
};

}  // namespace detail

inline AlgebraBundle parse_algebra(std::string_view text) {
  std::optional<std::string> name;
  std::size_t dim = 0;
  std::vector<std::optional<std::string>> labels;
  std::map<std::pair<std::size_t, std::size_t>, RatVector> brackets;
  std::map<std::pair<std::size_t, std::size_t>, Rational> gram;
  std::optional<std::vector<std::size_t>> a_basis;
  std::vector<NamedRoot> simple, rootnames;
  std::set<std::string> root_labels;

  std::size_t lineno = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view raw = text.substr(pos, end - pos);
    pos = end + 1;
    ++lineno;
    if (auto h = raw.find('#'); h != std::string_view::npos) raw = raw.substr(0, h);
    raw = detail::trim_view(raw);
    if (raw.empty()) {
      if (end == text.size()) break;
      continue;
    }
    detail::LineParser lp(lineno);
    auto w = detail::words(raw);
    const std::string& kw = w[0];
    if (kw != "algebra" && !name) lp.fail("expected 'algebra <name> dim <n>' first");

    if (kw == "algebra") {
      if (name) lp.fail("second 'algebra' header");
      if (w.size() != 4 || w[2] != "dim") lp.fail("expected 'algebra <name> dim <n>'");
      if (w[3].find_first_not_of("0123456789") != std::string::npos || w[3].size() > 4)
        lp.fail("bad dimension '" + w[3] + "'");
      name = w[1];
      dim = std::stoul(w[3]);
      labels.assign(dim, std::nullopt);
    } else if (kw == "label") {
      if (w.size() != 3) lp.fail("expected 'label <i> <text>'");
      std::size_t i = lp.index(w[1], dim);
      if (labels[i]) lp.fail("label " + w[1] + " given twice");
      labels[i] = w[2];
    } else if (kw == "bracket") {
      auto colon = raw.find(':');
      if (colon == std::string_view::npos) lp.fail("expected 'bracket <i> <j> : <k>=<p/q>, ...'");
      auto head = detail::words(raw.substr(0, colon));
      if (head.size() != 3) lp.fail("expected 'bracket <i> <j> : ...'");
      std::size_t i = lp.index(head[1], dim), j = lp.index(head[2], dim);
      if (i >= j) lp.fail("bracket indices must satisfy i < j");
      if (brackets.count({i, j})) lp.fail("bracket " + head[1] + " " + head[2] + " given twice");
      RatVector v = zero_vector(dim);
      std::set<std::size_t> seen;
      auto rest = detail::trim_view(raw.substr(colon + 1));
      if (!rest.empty())
        for (const auto& term : detail::split(rest, ',')) {
          auto eq = term.find('=');
          if (eq == std::string::npos) lp.fail("expected '<k>=<p/q>' in '" + term + "'");
          std::size_t k = lp.index(std::string(detail::trim_view(std::string_view(term).substr(0, eq))), dim);
          if (!seen.insert(k).second) lp.fail("component repeated in bracket");
          v[k] = lp.rational(std::string(detail::trim_view(std::string_view(term).substr(eq + 1))));
        }
      brackets[{i, j}] = std::move(v);
    } else if (kw == "gram") {
      if (w.size() != 4) lp.fail("expected 'gram <i> <j> <p/q>'");
      std::size_t i = lp.index(w[1], dim), j = lp.index(w[2], dim);
      auto key = std::minmax(i, j);
      if (gram.count(key)) lp.fail("gram entry " + w[1] + " " + w[2] + " given twice");
      gram[key] = lp.rational(w[3]);
    } else if (kw == "a-basis") {
      if (a_basis) lp.fail("a-basis given twice");
      auto rest = detail::trim_view(raw.substr(kw.size()));
      std::vector<std::size_t> v;
      for (const auto& t : detail::split(rest, ',')) v.push_back(lp.index(t, dim));
      a_basis = std::move(v);
    } else if (kw == "simple" || kw == "rootname") {
      if (w.size() < 3) lp.fail("expected '" + kw + " <name> <c1>,<c2>,...'");
      if (!root_labels.insert(w[1]).second) lp.fail("root name '" + w[1] + "' used twice");
      auto after = raw.substr(raw.find(w[1], kw.size()) + w[1].size());
      NamedRoot nr{w[1], lp.rationals(std::string(detail::trim_view(after)))};
      (kw == "simple" ? simple : rootnames).push_back(std::move(nr));
    } else {
      lp.fail("unknown directive '" + kw + "'");
    }
    if (end == text.size()) break;
  }
  if (!name) throw ParseError(lineno, "missing 'algebra' header");

  std::vector<std::string> lab;
  for (std::size_t i = 0; i < dim; ++i) lab.push_back(labels[i] ? *labels[i] : "e" + std::to_string(i + 1));
  StructureBuilder sb(dim);
  for (const auto& [ij, v] : brackets) sb.set(ij.first, ij.second, v);
  RatMatrix g(dim, dim);
  for (const auto& [ij, v] : gram) g(ij.first, ij.second) = g(ij.second, ij.first) = v;
  if (a_basis)
    for (const auto& r : simple)
      if (r.coords.size() != a_basis->size()) throw InputError("simple root " + r.name + " has wrong length");
  return AlgebraBundle{sb.build(*name, std::move(lab), std::move(g)), std::move(a_basis), std::move(simple),
                       std::move(rootnames)};
}

/// Canonical text: fixed directive order, ascending indices, reduced rationals.
inline std::string serialize_algebra(const AlgebraBundle& b) {
  const MetricLieAlgebra& L = b.algebra;
  const std::size_t n = L.dim();
  std::ostringstream out;
  out << "algebra " << L.name() << " dim " << n << "\n";
  for (std::size_t i = 0; i < n; ++i) out << "label " << i + 1 << " " << L.labels()[i] << "\n";
  if (b.a_basis) {
    out << "a-basis ";
    for (std::size_t k = 0; k < b.a_basis->size(); ++k) out << (k ? "," : "") << (*b.a_basis)[k] + 1;
    out << "\n";
  }
  auto roots = [&](const char* kw, const std::vector<NamedRoot>& rs) {
    for (const auto& r : rs) {
      out << kw << " " << r.name << " ";
      for (std::size_t k = 0; k < r.coords.size(); ++k) out << (k ? "," : "") << r.coords[k].str();
      out << "\n";
    }
  };
  roots("simple", b.simple);
  roots("rootname", b.root_names);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      RatVector v = L.structure(i, j);
      if (is_zero(v)) continue;
      out << "bracket " << i + 1 << " " << j + 1 << " :";
      bool first = true;
      for (std::size_t k = 0; k < n; ++k) {
        if (v[k].is_zero()) continue;
        out << (first ? " " : ", ") << k + 1 << "=" << v[k].str();
        first = false;
      }
      out << "\n";
    }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j)
      if (!L.gram()(i, j).is_zero()) out << "gram " << i + 1 << " " << j + 1 << " " << L.gram()(i, j).str() << "\n";
  return out.str();
}

}  // namespace solvlie
