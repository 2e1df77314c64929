#pragma once

#include "regseq/bitnum.hpp"
#include "regseq/linrep.hpp"
#include "regseq/numeric.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace regseq {

inline constexpr const char* kToolVersion = "regseq 0.1.0";
inline constexpr const char* kRepFormat = "regseq-linrep";

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Provenance {
  std::optional<SumSpec> spec;
  bool minimized = false;
  std::string tool = kToolVersion;
};

// Integers as plain decimal strings, everything else as "p/q".
inline std::string format_number(const Rational& q) { return to_string(q); }

inline Rational parse_number(const std::string& s) {
  auto parse_int = [&](const std::string& part) {
    std::size_t start = (!part.empty() && (part[0] == '-' || part[0] == '+')) ? 1 : 0;
    if (part.size() == start ||
        part.find_first_not_of("0123456789", start) != std::string::npos) {
      throw ParseError("malformed number '" + s + "'");
    }
    return Integer(part[0] == '+' ? part.substr(1) : part);
  };
  const auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(parse_int(s));
  const Integer den = parse_int(s.substr(slash + 1));
  if (den == 0) throw ParseError("zero denominator in '" + s + "'");
  return Rational(parse_int(s.substr(0, slash))) / Rational(den);
}

inline nlohmann::ordered_json to_json(const LinearRepresentation& rep,
                                      const std::optional<Provenance>& prov = std::nullopt) {
  using json = nlohmann::ordered_json;
  auto vec = [](const Vector<Rational>& x) {
    json a = json::array();
    for (const auto& e : x) a.push_back(format_number(e));
    return a;
  };
  auto mat = [&](const Matrix<Rational>& m) {
    json a = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
      a.push_back(vec(Vector<Rational>(m.row(i).begin(), m.row(i).end())));
    }
    return a;
  };
  json j;
  j["format"] = kRepFormat;
  j["rank"] = rep.rank();
  j["order"] = to_string(rep.order());
  j["v"] = vec(rep.v());
  j["gamma0"] = mat(rep.gamma0());
  j["gamma1"] = mat(rep.gamma1());
  j["w"] = vec(rep.w());
  if (prov) {
    json p;
    if (prov->spec) {
      const auto& s = *prov->spec;
      p["spec"] = {s.a1, s.a2, s.a3, s.a4};
    }
    p["minimized"] = prov->minimized;
    p["tool"] = prov->tool;
    j["provenance"] = p;
  }
  return j;
}

inline LinearRepresentation rep_from_json(const nlohmann::json& j) {
  try {
    if (j.value("format", std::string{}) != kRepFormat) {
      throw ParseError(std::string("expected format \"") + kRepFormat + "\"");
    }
    const std::size_t d = j.at("rank").get<std::size_t>();
    const std::string order = j.at("order").get<std::string>();
    if (order != "msd" && order != "lsd") throw ParseError("order must be msd or lsd");
    auto vec = [&](const nlohmann::json& a, const char* what) {
      if (!a.is_array() || a.size() != d) {
        throw ParseError(std::string(what) + " must have " + std::to_string(d) + " entries");
      }
      Vector<Rational> x;
      for (const auto& e : a) x.push_back(parse_number(e.get<std::string>()));
      return x;
    };
    auto mat = [&](const nlohmann::json& a, const char* what) {
      if (!a.is_array() || a.size() != d) {
        throw ParseError(std::string(what) + " must have " + std::to_string(d) + " rows");
      }
      Matrix<Rational> m(d, d);
      for (std::size_t i = 0; i < d; ++i) {
        const auto row = vec(a[i], what);
        for (std::size_t k = 0; k < d; ++k) m(i, k) = row[k];
      }
      return m;
    };
    return LinearRepresentation(vec(j.at("v"), "v"), mat(j.at("gamma0"), "gamma0"),
                                mat(j.at("gamma1"), "gamma1"), vec(j.at("w"), "w"),
                                order == "msd" ? ReadingOrder::msd : ReadingOrder::lsd);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("rep file: ") + e.what());
  }
}

inline std::optional<Provenance> provenance_from_json(const nlohmann::json& j) {
  if (!j.contains("provenance")) return std::nullopt;
  const auto& p = j["provenance"];
  Provenance out;
  out.minimized = p.value("minimized", false);
  out.tool = p.value("tool", std::string{});
  if (p.contains("spec")) {
    const auto a = p["spec"].get<std::vector<std::int64_t>>();
    if (a.size() != 4) throw ParseError("provenance spec needs 4 coefficients");
    out.spec = SumSpec{a[0], a[1], a[2], a[3]};
  }
  return out;
}

inline std::string serialize(const LinearRepresentation& rep,
                             const std::optional<Provenance>& prov = std::nullopt) {
  return to_json(rep, prov).dump(2) + "\n";
}

inline LinearRepresentation parse_rep(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("rep file: ") + e.what());
  }
  return rep_from_json(j);
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << text;
}

/// OEIS b-file: one "n value" pair per line.
struct BFileEntry {
  Integer n;
  Rational value;
};

inline std::string format_bfile(const std::vector<BFileEntry>& rows) {
  std::ostringstream os;
  for (const auto& r : rows) os << r.n << ' ' << format_number(r.value) << '\n';
  return os.str();
}

inline std::vector<BFileEntry> parse_bfile(const std::string& text) {
  std::vector<BFileEntry> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    std::string n, v;
    if (!(ls >> n >> v)) throw ParseError("malformed b-file line: " + line);
    out.push_back({to_integer(parse_number(n)), parse_number(v)});
  }
  return out;
}

inline std::string format_csv(const std::vector<BFileEntry>& rows) {
  std::ostringstream os;
  os << "n,value\n";
  for (const auto& r : rows) os << r.n << ',' << format_number(r.value) << '\n';
  return os.str();
}

}  // namespace regseq
