#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "solvlie/report.hpp"

namespace {

using namespace solvlie;

enum Exit { kOk = 0, kInput = 1, kValidation = 2, kTheorem = 3 };

struct Source {
  std::string path;
  std::string example;
  std::string simple;
};

std::string read_all(std::istream& in) { return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()}; }

AlgebraBundle load(const Source& src) {
  AlgebraBundle b = [&] {
    if (!src.example.empty()) {
      if (!src.path.empty()) throw InputError("give either a file or --example, not both");
      return catalog_entry(src.example);
    }
    if (src.path.empty()) throw InputError("no input: give a file, '-' for standard input, or --example <name>");
    if (src.path == "-") return parse_algebra(read_all(std::cin));
    std::ifstream f(src.path, std::ios::binary);
    if (!f) throw InputError("cannot open '" + src.path + "'");
    return parse_algebra(read_all(f));
  }();
  if (!src.simple.empty()) {
    // "a1=2,-1;a2=-1,2"
    std::vector<NamedRoot> roots;
    for (const auto& item : detail::split(src.simple, ';')) {
      auto eq = item.find('=');
      if (eq == std::string::npos) throw InputError("--simple expects name=c1,c2,...;name=...");
      RatVector v;
      for (const auto& t : detail::split(std::string_view(item).substr(eq + 1), ',')) v.push_back(Rational::parse(t));
      roots.push_back({std::string(detail::trim_view(std::string_view(item).substr(0, eq))), std::move(v)});
    }
    b.simple = std::move(roots);
  }
  return b;
}

void emit(const report::Json& j, const std::string& format) {
  if (format == "json")
    std::cout << j.dump(2) << "\n";
  else
    std::cout << report::to_text(j);
}

template <class F>
int guarded(F&& body) {
  try {
    return body();
  } catch (const NotRationalSplit& e) {
    std::cerr << "error: " << e.what() << "\nhint: the spectrum is not rational; try --mode float\n";
    return kValidation;
  } catch (const TheoremViolation& e) {
    std::cerr << "internal consistency failure: " << e.what() << "\n";
    return kTheorem;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  } catch (const ValidationError& e) {
    std::cerr << "validation failed: " << e.what() << "\n";
    return kValidation;
  } catch (const NotDiagonalizable& e) {
    std::cerr << "validation failed: " << e.what() << "\n";
    return kValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInput;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"solvlie: curvature of solvable metric Lie algebras and their attached subalgebras"};
  app.require_subcommand(1);

  std::string mode = "exact", format = "text";
  double tol = 1e-9;
  app.add_option("--mode", mode, "exact or float")->check(CLI::IsMember({"exact", "float"}));
  app.add_option("--tol", tol, "float tolerance")->check(CLI::PositiveNumber);
  app.add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));

  Source src;
  auto* analyze = app.add_subcommand("analyze", "full report for one algebra");
  analyze->add_option("file", src.path, "algebra file, or - for standard input");
  analyze->add_option("--example", src.example, "catalog entry instead of a file");
  analyze->add_option("--simple", src.simple, "simple roots, e.g. a1=2,-1;a2=-1,2");

  std::string lambda_prime;
  bool lambda_given = false;
  auto* attached = app.add_subcommand("attached", "attached subalgebra for a subset of simple roots");
  attached->add_option("file", src.path, "algebra file, or - for standard input");
  attached->add_option("--example", src.example, "catalog entry instead of a file");
  attached->add_option("--simple", src.simple, "simple roots, e.g. a1=2,-1;a2=-1,2");
  attached->add_option("--lambda-prime", lambda_prime, "comma-separated simple root names (empty for none)")
      ->required();

  std::string ex_action, ex_name;
  auto* example = app.add_subcommand("example", "list or emit catalog algebras");
  example->add_option("action", ex_action, "list | emit")->required()->check(CLI::IsMember({"list", "emit"}));
  example->add_option("name", ex_name, "catalog name for emit");

  // Flags are accepted before or after the subcommand.
  for (auto* sub : {analyze, attached}) {
    sub->add_option("--mode", mode, "exact or float")->check(CLI::IsMember({"exact", "float"}));
    sub->add_option("--tol", tol, "float tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kInput;
  }
  lambda_given = attached->parsed();

  if (analyze->parsed())
    return guarded([&] {
      AlgebraBundle b = load(src);
      emit(mode == "float" ? report::analyze_float(b, tol) : report::analyze_exact(b), format);
      return kOk;
    });

  if (lambda_given)
    return guarded([&] {
      AlgebraBundle b = load(src);
      std::vector<std::string> names;
      if (!detail::trim_view(lambda_prime).empty()) names = detail::split(lambda_prime, ',');
      report::AttachedOutcome out = report::analyze_attached(b, names, tol);
      emit(out.report, format);
      if (!out.admissible) {
        std::cerr << "inadmissible: " << out.report["admissibility"]["witness"].get<std::string>() << "\n";
        return kValidation;
      }
      return kOk;
    });

  return guarded([&] {
    if (ex_action == "list") {
      for (const auto& n : catalog_names()) std::cout << n << "\n";
      return kOk;
    }
    if (ex_name.empty()) throw InputError("example emit needs a name");
    std::cout << serialize_algebra(catalog_entry(ex_name));
    return kOk;
  });
}
