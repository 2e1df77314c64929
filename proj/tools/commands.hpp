#pragma once

#include "regseq/analysis.hpp"
#include "regseq/baumsweet.hpp"
#include "regseq/compiler.hpp"
#include "regseq/io.hpp"
#include "regseq/linrep.hpp"
#include "regseq/rlt.hpp"

#include "CLI11.hpp"

#include <algorithm>
#include <cstdint>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace regseq::cli {

/// Inclusive range LO..HI, or a single value. LO > HI is empty.
struct Range {
  Integer lo = 0;
  Integer hi = -1;
};

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

inline Integer parse_natural(const std::string& s) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) {
    throw ParseError("expected a nonnegative integer, got '" + s + "'");
  }
  return Integer(s);
}

inline Range parse_range(const std::string& s) {
  const auto dots = s.find("..");
  if (dots == std::string::npos) {
    const Integer n = parse_natural(s);
    return {n, n};
  }
  return {parse_natural(s.substr(0, dots)), parse_natural(s.substr(dots + 2))};
}

inline std::vector<Integer> parse_integers(const std::string& s) {
  std::vector<Integer> out;
  for (const auto& part : split(s, ',')) out.push_back(to_integer(parse_number(part)));
  return out;
}

inline SumSpec parse_spec(const std::string& s) {
  const auto a = parse_integers(s);
  if (a.size() != 4) throw ParseError("--a needs four integers A1,A2,A3,A4");
  for (const auto& x : a) {
    if (x > 1'000'000 || x < -1'000'000) throw ParseError("coefficient out of range: " + x.str());
  }
  return SumSpec{a[0].convert_to<std::int64_t>(), a[1].convert_to<std::int64_t>(),
                 a[2].convert_to<std::int64_t>(), a[3].convert_to<std::int64_t>()};
}

inline std::string format_values(const std::vector<BFileEntry>& rows, const std::string& format) {
  if (format == "bfile") return format_bfile(rows);
  if (format == "csv") return format_csv(rows);
  if (format == "json") {
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (const auto& r : rows) j.push_back({{"n", r.n.str()}, {"value", format_number(r.value)}});
    return j.dump() + "\n";
  }
  std::string s;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (i) s += ",";
    s += format_number(rows[i].value);
  }
  return rows.empty() ? s : s + "\n";
}

inline void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
  } else {
    write_file(path, text);
  }
}

inline LinearRepresentation load_rep(const std::string& path) { return parse_rep(read_file(path)); }

inline std::string describe(const Fixture& f) {
  return f.name + " (" + f.description + (f.oeis.empty() ? "" : ", " + f.oeis) + ")";
}

inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Binomial sums mod 2, 2-regular linear representations and run-length transforms",
               "regseq"};
  app.require_subcommand(1);
  int status = 0;

  // compile
  std::string spec_text, output;
  bool do_minimize = false;
  auto* compile_cmd = app.add_subcommand("compile", "Compile a binomial sum to a representation");
  compile_cmd->add_option("--a", spec_text, "Coefficients A1,A2,A3,A4")->required();
  compile_cmd->add_flag("--minimize", do_minimize, "Minimize the result");
  compile_cmd->add_option("-o,--output", output, "Output file (default stdout)");
  compile_cmd->callback([&] {
    const SumSpec spec = parse_spec(spec_text);
    const auto rep = compile(spec, do_minimize);
    emit(serialize(rep, Provenance{spec, do_minimize}), output, out);
  });

  // eval
  std::string rep_path, range_text, format = "list";
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a representation on a range of n");
  eval_cmd->add_option("rep", rep_path, "Representation file")->required();
  eval_cmd->add_option("--n", range_text, "N or LO..HI")->required();
  eval_cmd->add_option("--format", format, "list, bfile, csv or json")
      ->check(CLI::IsMember({"list", "bfile", "csv", "json"}));
  eval_cmd->callback([&] {
    const auto rep = load_rep(rep_path);
    const Range range = parse_range(range_text);
    std::vector<BFileEntry> rows;
    for (Integer n = range.lo; n <= range.hi; ++n) rows.push_back({n, evaluate(rep, n)});
    out << format_values(rows, format);
  });

  // minimize
  auto* min_cmd = app.add_subcommand("minimize", "Reduce a representation to minimal rank");
  min_cmd->add_option("rep", rep_path, "Representation file")->required();
  min_cmd->add_option("-o,--output", output, "Output file (default stdout)");
  min_cmd->callback([&] {
    const auto text = read_file(rep_path);
    auto prov = provenance_from_json(nlohmann::json::parse(text));
    if (prov) {
      prov->minimized = true;
      prov->tool = kToolVersion;
    }
    emit(serialize(minimize(parse_rep(text)), prov), output, out);
  });

  // equiv
  std::string other_path;
  auto* equiv_cmd = app.add_subcommand("equiv", "Decide whether two representations agree");
  equiv_cmd->add_option("rep1", rep_path, "First representation")->required();
  equiv_cmd->add_option("rep2", other_path, "Second representation")->required();
  equiv_cmd->callback([&] {
    const bool same = equivalent(load_rep(rep_path), load_rep(other_path));
    out << (same ? "equivalent" : "not equivalent") << "\n";
    status = same ? 0 : 1;
  });

  // identify
  auto* id_cmd = app.add_subcommand("identify", "Recognise a run-length transform");
  id_cmd->add_option("rep", rep_path, "Representation file")->required();
  id_cmd->callback([&] {
    auto rep = load_rep(rep_path);
    if (rep.order() == ReadingOrder::lsd) rep = reverse(rep);
    const auto id = identify_rlt(rep);
    if (!id) {
      out << "not-an-RLT: " << id.failure << "\n";
      status = 1;
      return;
    }
    const auto& rec = *id.recurrence;
    out << "order: " << rec.order() << "\n";
    out << "coefficients:";
    for (std::size_t i = 0; i < rec.coefficients().size(); ++i) {
      out << " d" << i << "=" << rec.coefficients()[i];
    }
    out << "\ninitial:";
    for (std::size_t i = 0; i < rec.initial().size(); ++i) {
      out << (i ? "," : " ") << rec.initial()[i];
    }
    out << "\nrecurrence: " << rec.str() << "\n";
    const auto terms = recurrence_terms(rec, 12);
    out << "terms:";
    for (std::size_t i = 0; i < terms.size(); ++i) out << (i ? "," : " ") << terms[i];
    out << "\n";
    if (const auto* f = match_fixture(rep)) out << "fixture: " << describe(*f) << "\n";
  });

  // rlt-apply
  std::string coeff_text, init_text;
  auto* apply_cmd =
      app.add_subcommand("rlt-apply", "Run-length transform of a recurrence (and its representation)");
  apply_cmd->add_option("--coeffs", coeff_text, "d0,...,dr")->required();
  apply_cmd->add_option("--init", init_text, "1,c1,...,cr")->required();
  apply_cmd->add_option("--n", range_text, "N or LO..HI");
  apply_cmd->add_option("--format", format, "list, bfile, csv or json")
      ->check(CLI::IsMember({"list", "bfile", "csv", "json"}));
  apply_cmd->add_option("-o,--output", output, "Write the normal-form representation here");
  apply_cmd->callback([&] {
    const LinearRecurrence rec(parse_integers(coeff_text), parse_integers(init_text));
    if (!output.empty()) emit(serialize(normal_form(rec)), output, out);
    if (!range_text.empty()) {
      const Range range = parse_range(range_text);
      std::vector<BFileEntry> rows;
      for (Integer n = range.lo; n <= range.hi; ++n) {
        rows.push_back({n, Rational(run_length_transform(rec, n))});
      }
      out << format_values(rows, format);
    }
  });

  // average
  std::string r_text = "0..10";
  bool closed_form = false;
  double tol = 1e-9;
  auto* avg_cmd = app.add_subcommand("average", "Block sums g(r) and block averages mu(r)");
  avg_cmd->add_option("rep", rep_path, "Representation file")->required();
  avg_cmd->add_option("--r", r_text, "R or LO..HI (default 0..10)");
  avg_cmd->add_flag("--closed-form", closed_form, "Check the known closed form");
  avg_cmd->add_option("--tol", tol, "Relative tolerance for --closed-form");
  avg_cmd->callback([&] {
    auto rep = load_rep(rep_path);
    if (rep.order() == ReadingOrder::lsd) rep = reverse(rep);
    const Range range = parse_range(r_text);
    if (range.hi > 4096) throw ParseError("--r upper bound too large");
    out << "minimal polynomial: " << minimal_polynomial(rep).str() << "\n";
    out << "r\tg(r)\tmu(r)\n";
    if (range.lo <= range.hi) {
      const auto hi = range.hi.convert_to<unsigned>();
      for (const auto& row : block_table(rep, hi)) {
        if (row.r < range.lo) continue;
        out << row.r << "\t" << row.g_r << "\t" << to_string(row.mu_r) << "\n";
      }
    }
    if (closed_form) {
      const Fixture* f = match_fixture(rep);
      const auto form = f ? known_closed_form(f->name) : std::nullopt;
      if (!form) {
        err << "no known closed form for this representation\n";
        status = 1;
        return;
      }
      const unsigned r_max = std::max(1u, range.hi < 0 ? 1u : range.hi.convert_to<unsigned>());
      const auto report = verify_closed_form(rep, *form, r_max, tol);
      out << "closed form [" << f->name << "] " << form->text << ": "
          << (report.passed ? "pass" : "FAIL") << " (r <= " << r_max
          << ", max relative error " << std::max(report.max_error_fit, report.max_error_formula)
          << ")\n";
      if (!report.passed) status = 1;
    }
  });

  // baumsweet
  unsigned m = 0;
  bool check = false;
  auto* bs_cmd = app.add_subcommand("baumsweet", "Generalized Baum-Sweet sequence T_m");
  bs_cmd->add_option("--m", m, "m >= 2")->required();
  bs_cmd->add_option("--n", range_text, "N or LO..HI")->required();
  bs_cmd->add_flag("--check", check, "Cross-check sum, predicate and witness");
  bs_cmd->add_option("--format", format, "list, bfile, csv or json")
      ->check(CLI::IsMember({"list", "bfile", "csv", "json"}));
  bs_cmd->callback([&] {
    const BsSpec spec(m);
    const Range range = parse_range(range_text);
    if (range.hi >= Integer(1) << 40) throw ParseError("--n upper bound too large");
    if (!check) {
      std::vector<BFileEntry> rows;
      for (Integer n = range.lo; n <= range.hi; ++n) {
        rows.push_back({n, Rational(tm_sum(spec, n.convert_to<std::uint64_t>()))});
      }
      out << format_values(rows, format);
      return;
    }
    std::uint64_t checked = 0, failures = 0;
    for (Integer big = range.lo; big <= range.hi; ++big) {
      const auto n = big.convert_to<std::uint64_t>();
      const auto odd = tm_odd_terms(spec, n);
      const auto witness = tm_witness(spec, n);
      const bool ok = odd.size() == static_cast<std::size_t>(tm_predicate(spec, n)) &&
                      (odd.empty() ? !witness : witness && *witness == odd.front());
      ++checked;
      if (!ok) {
        if (++failures <= 10) err << "mismatch at n = " << n << "\n";
      }
    }
    out << "T_" << m << ": " << checked << " values checked, " << failures << " mismatches: "
        << (failures ? "FAIL" : "pass") << "\n";
    if (failures) status = 1;
  });

  // verify
  std::vector<std::string> names;
  std::uint64_t bound = 4096;
  auto* verify_cmd = app.add_subcommand("verify", "Verify the built-in fixtures");
  verify_cmd->add_option("fixtures", names, "Fixture names (default all)");
  verify_cmd->add_option("--bound", bound, "Check n < bound (default 4096)");
  verify_cmd->callback([&] {
    std::vector<const Fixture*> selected;
    if (names.empty()) {
      for (const auto& f : fixtures()) selected.push_back(&f);
    } else {
      for (const auto& name : names) {
        const Fixture* f = find_fixture(name);
        if (!f) throw ParseError("unknown fixture '" + name + "'");
        selected.push_back(f);
      }
    }
    std::size_t passed = 0;
    for (const auto* f : selected) {
      const auto report = verify_fixture(*f, bound);
      out << (report.passed() ? "PASS " : "FAIL ") << f->name << "  rank "
          << report.minimized_rank;
      if (report.identified) out << "  " << report.identified->str();
      out << "\n";
      for (const auto& c : report.checks) {
        if (!c.passed) out << "    " << c.name << ": " << c.detail << "\n";
      }
      passed += report.passed();
    }
    out << passed << "/" << selected.size() << " fixtures pass\n";
    if (passed != selected.size()) status = 1;
  });

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return status;
}

}  // namespace regseq::cli
