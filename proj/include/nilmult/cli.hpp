#pragma once

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nilmult/report.hpp"

namespace nilmult::cli {

/// Load an algebra from a JSON file path or a catalog expression.
inline NilpotentAlgebra load_algebra(const std::string& source) {
  if (std::filesystem::exists(source)) {
    std::ifstream in(source);
    if (!in) throw std::invalid_argument("cannot open " + source);
    Json j = Json::parse(in);
    return algebra_from_json(j);
  }
  NilpotentAlgebra l = algebra_from_expression(source);
  if (!l.name()) l.set_name(source);
  return l;
}

inline std::string combination_string(const Vec& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (sgn(v[i]) == 0) continue;
    if (!out.empty()) out += " + ";
    if (v[i] != 1) out += to_string(v[i]) + "*";
    out += "x" + std::to_string(i + 1);
  }
  return out.empty() ? "0" : out;
}

/// Pad to a display width counting UTF-8 code points, not bytes.
inline std::string pad_utf8(const std::string& s, std::size_t width) {
  std::size_t points = 0;
  for (unsigned char c : s)
    if ((c & 0xC0) != 0x80) ++points;
  std::string out = s;
  while (points++ < width) out += ' ';
  return out;
}

inline void print_report_table(const std::vector<MultiplierReport>& rows,
                               std::ostream& out) {
  out << std::left << std::setw(12) << "name" << std::right << std::setw(4) << "n"
      << std::setw(4) << "m" << std::setw(7) << "class" << std::setw(8) << "dimM2"
      << std::setw(15) << "s2" << std::setw(7) << "bound" << std::setw(7) << "slack"
      << "  " << pad_utf8("verdict", 28) << "2-capable" << "\n";
  for (const MultiplierReport& r : rows) {
    out << std::left << std::setw(12) << r.name << std::right << std::setw(4) << r.n
        << std::setw(4) << r.m << std::setw(7) << r.nilpotency_class << std::setw(8)
        << r.dim_multiplier << std::setw(15)
        << (r.s2_value ? std::to_string(*r.s2_value) : "n/a (abelian)")
        << std::setw(7) << (r.bound ? std::to_string(*r.bound) : "-") << std::setw(7)
        << (r.slack ? std::to_string(*r.slack) : "-") << "  "
        << pad_utf8(r.verdict ? *r.verdict : "-", 28)
        << (r.capable2 ? (*r.capable2 ? "true" : "false") : "-") << "\n";
  }
}

struct CommonOptions {
  std::string algebra_source;
  std::string format = "table";
  std::size_t ceiling = HallBasis::kDefaultCeiling;
};

inline void add_format_option(CLI::App* cmd, std::string& format) {
  cmd->add_option("--format", format, "output format")
      ->check(CLI::IsMember({"table", "json"}))
      ->capture_default_str();
}

/// Entry point used by both the binary and the tests. Exit codes: 0 on
/// success, 1 on user error, 2 on an internal assertion (a value that
/// contradicts a theorem, a failed validation, or a report/fixture
/// mismatch).
inline int run(const std::vector<std::string>& args, std::ostream& out,
               std::ostream& err) {
  CLI::App app{"exact nilpotent-multiplier computations for nilpotent Lie algebras"};
  app.require_subcommand(1);

  long witt_generators = 0, witt_length = 0;
  CLI::App* witt_cmd = app.add_subcommand("witt", "count basic commutators of one length");
  witt_cmd->add_option("--generators", witt_generators, "number of generators")->required();
  witt_cmd->add_option("--length", witt_length, "commutator length")->required();

  CommonOptions basis_opt;
  long basis_generators = 0, basis_length = 0;
  CLI::App* basis_cmd = app.add_subcommand("basis", "list the Hall basis up to a length");
  basis_cmd->add_option("--generators", basis_generators, "number of generators")->required();
  basis_cmd->add_option("--length", basis_length, "maximum length")->required();
  basis_cmd->add_option("--ceiling", basis_opt.ceiling, "basis size ceiling")
      ->capture_default_str();
  add_format_option(basis_cmd, basis_opt.format);

  CommonOptions show_opt;
  CLI::App* show_cmd = app.add_subcommand("show", "dimensions and series of an algebra");
  show_cmd->add_option("--algebra", show_opt.algebra_source,
                       "catalog expression or JSON file")->required();
  add_format_option(show_cmd, show_opt.format);

  CommonOptions mult_opt;
  int mult_c = 2;
  CLI::App* mult_cmd = app.add_subcommand("mult", "dimension of the c-nilpotent multiplier");
  mult_cmd->add_option("--algebra", mult_opt.algebra_source,
                       "catalog expression or JSON file")->required();
  mult_cmd->add_option("--c", mult_c, "multiplier level")->check(CLI::IsMember({1, 2}))
      ->capture_default_str();
  mult_cmd->add_option("--ceiling", mult_opt.ceiling, "basis size ceiling")
      ->capture_default_str();
  add_format_option(mult_cmd, mult_opt.format);

  CommonOptions classify_opt;
  CLI::App* classify_cmd = app.add_subcommand("classify", "s2 invariant and classification verdict");
  classify_cmd->add_option("--algebra", classify_opt.algebra_source,
                           "catalog expression or JSON file")->required();
  classify_cmd->add_option("--ceiling", classify_opt.ceiling, "basis size ceiling")
      ->capture_default_str();
  add_format_option(classify_cmd, classify_opt.format);

  CommonOptions capable_opt;
  CLI::App* capable_cmd = app.add_subcommand("capable2", "decide 2-capability");
  capable_cmd->add_option("--algebra", capable_opt.algebra_source,
                          "catalog expression or JSON file")->required();
  capable_cmd->add_option("--ceiling", capable_opt.ceiling, "basis size ceiling")
      ->capture_default_str();
  add_format_option(capable_cmd, capable_opt.format);

  CommonOptions report_opt;
  std::string fixture_path;
  CLI::App* report_cmd = app.add_subcommand(
      "report", "recompute the whole corpus and verify it against the expected table");
  report_cmd->add_option("--fixture", fixture_path,
                         "expected-table JSON file (defaults to the built-in table)");
  report_cmd->add_option("--ceiling", report_opt.ceiling, "basis size ceiling")
      ->capture_default_str();
  add_format_option(report_cmd, report_opt.format);

  std::vector<std::string> argv_storage = args;
  std::vector<const char*> argv;
  argv.push_back("nilmult");
  for (const std::string& a : argv_storage) argv.push_back(a.c_str());

  try {
    app.parse((int)argv.size(), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return 1;
  }

  try {
    if (*witt_cmd) {
      out << witt(witt_generators, witt_length).get_str() << "\n";
      return 0;
    }

    if (*basis_cmd) {
      HallBasis basis((int)basis_generators, (int)basis_length, basis_opt.ceiling);
      if (basis_opt.format == "json") {
        Json j;
        j["generators"] = basis.generators();
        j["max_length"] = basis.max_length();
        Json elements = Json::array();
        for (int rank = 0; rank < basis.size(); ++rank)
          elements.push_back(Json{{"rank", rank},
                                  {"length", basis.at(rank).length},
                                  {"text", basis.render(rank)}});
        j["elements"] = std::move(elements);
        Json counts = Json::array();
        for (int t = 1; t <= basis.max_length(); ++t)
          counts.push_back(basis.count_of_length(t));
        j["counts_per_length"] = std::move(counts);
        out << j.dump(2) << "\n";
      } else {
        for (int rank = 0; rank < basis.size(); ++rank)
          out << rank << ": " << basis.render(rank) << "\n";
        out << "counts per length:";
        for (int t = 1; t <= basis.max_length(); ++t)
          out << " " << basis.count_of_length(t);
        out << "\n";
      }
      return 0;
    }

    if (*show_cmd) {
      NilpotentAlgebra l = load_algebra(show_opt.algebra_source);
      SeriesInfo info = series(l);
      if (show_opt.format == "json") {
        Json j;
        j["algebra"] = algebra_to_json(l);
        j["class"] = info.nilpotency_class;
        j["derived_dim"] = info.derived_dim;
        j["center_dim"] = info.center_dim;
        j["lower_central_dims"] = info.lower_central_dims;
        out << j.dump(2) << "\n";
      } else {
        out << "name: " << l.name().value_or("(unnamed)") << "\n"
            << "dim: " << l.dim() << "\n"
            << "class: " << info.nilpotency_class << "\n"
            << "dim L^2: " << info.derived_dim << "\n"
            << "dim Z(L): " << info.center_dim << "\n"
            << "lower central series dims:";
        for (int d : info.lower_central_dims) out << " " << d;
        out << "\n";
      }
      return 0;
    }

    if (*mult_cmd) {
      NilpotentAlgebra l = load_algebra(mult_opt.algebra_source);
      if (mult_opt.format == "json") {
        MultiplierReport r =
            build_report(l, mult_c, /*with_capability=*/false, mult_opt.ceiling);
        out << report_to_json(r).dump(2) << "\n";
      } else {
        out << multiplier_dim(l, mult_c, mult_opt.ceiling) << "\n";
      }
      return 0;
    }

    if (*classify_cmd) {
      NilpotentAlgebra l = load_algebra(classify_opt.algebra_source);
      long value = s2(l, classify_opt.ceiling);
      std::string verdict = classify_s2(value);
      if (classify_opt.format == "json") {
        Json j;
        j["name"] = l.name().value_or("");
        j["s2"] = value;
        j["verdict"] = verdict;
        out << j.dump(2) << "\n";
      } else {
        out << "s2 = " << value << "\n" << "verdict = " << verdict << "\n";
      }
      return 0;
    }

    if (*capable_cmd) {
      NilpotentAlgebra l = load_algebra(capable_opt.algebra_source);
      CapabilityResult r = two_capable(l, capable_opt.ceiling);
      if (capable_opt.format == "json") {
        Json j;
        j["name"] = l.name().value_or("");
        j["two_capable"] = r.capable;
        if (r.witness) {
          Json w = Json::array();
          for (const Rational& x : *r.witness) w.push_back(to_string(x));
          j["witness"] = std::move(w);
        }
        out << j.dump(2) << "\n";
      } else {
        out << (r.capable ? "true" : "false") << "\n";
        if (r.witness) out << "witness = " << combination_string(*r.witness) << "\n";
      }
      return 0;
    }

    if (*report_cmd) {
      Json expected = expected_report_fixture();
      if (!fixture_path.empty()) {
        std::ifstream in(fixture_path);
        if (!in) throw std::invalid_argument("cannot open fixture " + fixture_path);
        expected = Json::parse(in);
      }
      std::vector<MultiplierReport> rows = run_corpus(report_opt.ceiling);
      Json computed = Json::array();
      for (const MultiplierReport& r : rows) computed.push_back(report_to_json(r));
      if (report_opt.format == "json")
        out << computed.dump(2) << "\n";
      else
        print_report_table(rows, out);
      std::vector<std::string> mismatches = report_mismatches(computed, expected);
      if (!mismatches.empty()) {
        for (const std::string& m : mismatches) err << "mismatch: " << m << "\n";
        return 2;
      }
      return 0;
    }
  } catch (const ImpossibleValue& e) {
    err << "internal assertion failed: " << e.what() << "\n";
    return 2;
  } catch (const ValidationError& e) {
    err << "internal assertion failed: " << e.what() << "\n";
    return 2;
  } catch (const Json::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace nilmult::cli
