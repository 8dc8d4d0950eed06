#ifndef DGK_HOMOLOGY_HPP
#define DGK_HOMOLOGY_HPP

#include "dgk/snf.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dgk {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Presentation {
  std::vector<std::string> generators;
  std::vector<std::vector<BigInt>> relators;  // one coefficient per generator

  int index_of(const std::string& g) const {
    for (std::size_t i = 0; i < generators.size(); ++i)
      if (generators[i] == g) return static_cast<int>(i);
    return -1;
  }
};

struct AbelianGroup {
  int free_rank = 0;
  std::vector<BigInt> torsion;  // each >= 2, each divides the next

  bool operator==(const AbelianGroup&) const = default;

  std::string to_string() const {
    std::vector<std::string> parts;
    if (free_rank == 1) parts.push_back("Z");
    else if (free_rank > 1) parts.push_back("Z^" + std::to_string(free_rank));
    for (const auto& d : torsion) parts.push_back("Z/" + d.str());
    if (parts.empty()) return "0";
    std::string s = parts[0];
    for (std::size_t i = 1; i < parts.size(); ++i) s += " + " + parts[i];
    return s;
  }
};

namespace detail {

inline std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

inline bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
inline bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

// Accumulates sign * (terms of s) into row. Terms: [+|-] [int] [*] ident.
inline void parse_side(const std::string& s, int sign, const Presentation& p, std::vector<BigInt>& row) {
  std::size_t i = 0;
  auto skip = [&] {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  };
  bool first = true;
  skip();
  if (i == s.size()) throw ParseError("empty relator side in '" + s + "'");
  while (i < s.size()) {
    int term_sign = 1;
    skip();
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
      term_sign = s[i] == '-' ? -1 : 1;
      ++i;
      skip();
    } else if (!first) {
      throw ParseError("expected '+' or '-' in '" + s + "'");
    }
    first = false;
    std::string digits;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) digits += s[i++];
    skip();
    if (i < s.size() && s[i] == '*') {
      if (digits.empty()) throw ParseError("dangling '*' in '" + s + "'");
      ++i;
      skip();
    }
    if (i >= s.size() || !ident_start(s[i])) {
      if (digits == "0") {  // permits "=0"
        skip();
        continue;
      }
      throw ParseError("expected generator in '" + s + "'");
    }
    std::string name;
    while (i < s.size() && ident_char(s[i])) name += s[i++];
    int g = p.index_of(name);
    if (g < 0) throw ParseError("undeclared generator '" + name + "'");
    BigInt c = digits.empty() ? BigInt(1) : BigInt(digits);
    row[g] += sign * term_sign * c;
    skip();
  }
}

}  // namespace detail

inline std::vector<BigInt> parse_relator(const Presentation& p, const std::string& text) {
  std::vector<BigInt> row(p.generators.size(), 0);
  auto eq = text.find('=');
  if (eq == std::string::npos) {
    detail::parse_side(text, 1, p, row);
  } else {
    if (text.find('=', eq + 1) != std::string::npos) throw ParseError("more than one '=' in '" + text + "'");
    detail::parse_side(text.substr(0, eq), 1, p, row);
    detail::parse_side(text.substr(eq + 1), -1, p, row);
  }
  return row;
}

// Text format: "gens: a,b,c" then one relator per line; '#' starts a comment.
inline Presentation parse_presentation(const std::string& text) {
  Presentation p;
  std::istringstream in(text);
  std::string line;
  bool have_gens = false;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    line = detail::trim(line);
    if (line.empty()) continue;
    if (!have_gens) {
      if (line.rfind("gens:", 0) != 0) throw ParseError("line " + std::to_string(lineno) + ": expected 'gens:'");
      std::stringstream gs(line.substr(5));
      std::string g;
      while (std::getline(gs, g, ',')) {
        g = detail::trim(g);
        if (g.empty() || !detail::ident_start(g[0])) throw ParseError("bad generator name '" + g + "'");
        for (char c : g)
          if (!detail::ident_char(c)) throw ParseError("bad generator name '" + g + "'");
        if (p.index_of(g) >= 0) throw ParseError("duplicate generator '" + g + "'");
        p.generators.push_back(g);
      }
      have_gens = true;
      continue;
    }
    try {
      p.relators.push_back(parse_relator(p, line));
    } catch (const ParseError& e) {
      throw ParseError("line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (!have_gens) throw ParseError("missing 'gens:' line");
  return p;
}

inline Presentation load_presentation(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw ParseError("cannot read " + path);
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_presentation(ss.str());
}

inline std::string format_relator(const Presentation& p, const std::vector<BigInt>& row) {
  std::string s;
  for (std::size_t g = 0; g < row.size(); ++g) {
    if (row[g] == 0) continue;
    BigInt c = row[g] < 0 ? BigInt(-row[g]) : row[g];
    if (row[g] < 0) s += "-";
    else if (!s.empty()) s += "+";
    if (c != 1) s += c.str();
    s += p.generators[g];
  }
  return s.empty() ? "0" : s;
}

inline std::string format_presentation(const Presentation& p) {
  std::string s = "gens: ";
  for (std::size_t i = 0; i < p.generators.size(); ++i) s += (i ? "," : "") + p.generators[i];
  s += "\n";
  for (const auto& r : p.relators) s += format_relator(p, r) + "\n";
  return s;
}

inline BigMatrix relator_matrix(const Presentation& p) {
  BigMatrix m(p.relators.size(), p.generators.size());
  for (std::size_t i = 0; i < p.relators.size(); ++i) {
    if (p.relators[i].size() != p.generators.size()) throw ParseError("relator width mismatch");
    for (std::size_t j = 0; j < p.generators.size(); ++j) m(i, j) = p.relators[i][j];
  }
  return m;
}

inline AbelianGroup group_from_factors(std::size_t generators, const std::vector<BigInt>& factors) {
  AbelianGroup g;
  g.free_rank = static_cast<int>(generators - factors.size());
  for (const auto& d : factors)
    if (d != 1) g.torsion.push_back(d < 0 ? BigInt(-d) : d);
  return g;
}

inline AbelianGroup group_of(const Presentation& p) {
  auto r = smith_normal_form(relator_matrix(p));
  return group_from_factors(p.generators.size(), invariant_factors(r.D));
}

inline bool is_qhs_torus(const AbelianGroup& g) { return g.free_rank == 0; }

enum class ParametricFamily { ElevenPMinusTwoQ, ElevenRPlusTwoS };

inline ParametricFamily parse_family(const std::string& s) {
  if (s == "11p-2q") return ParametricFamily::ElevenPMinusTwoQ;
  if (s == "11r+2s") return ParametricFamily::ElevenRPlusTwoS;
  throw ParseError("unknown parametric family '" + s + "'");
}

// Four-generator presentation whose last relator carries the parameters.
inline Presentation parametric_presentation(ParametricFamily f, long a, long b) {
  Presentation p;
  p.generators = {"l", "m", "x", "y"};
  auto row = [](long l, long m, long x, long y) { return std::vector<BigInt>{l, m, x, y}; };
  if (f == ParametricFamily::ElevenPMinusTwoQ) {
    p.relators = {row(0, 1, 2, 0), row(a, b, a, 0), row(-1, -1, 0, 2), row(0, 2, 0, 1)};
  } else {
    p.relators = {row(0, 1, 2, 0), row(-1, 0, 0, 2), row(0, 3, 0, -1), row(a, b, a, 0)};
  }
  return p;
}

// Order of the cyclic reduction <x | n x>.
inline long parametric_order(ParametricFamily f, long a, long b) {
  return f == ParametricFamily::ElevenPMinusTwoQ ? 11 * a - 2 * b : 11 * a + 2 * b;
}

inline AbelianGroup cyclic_group(long n) {
  AbelianGroup g;
  if (n == 0) g.free_rank = 1;
  else if (n != 1 && n != -1) g.torsion.push_back(n < 0 ? -n : n);
  return g;
}

struct ParametricMismatch : std::logic_error {
  using std::logic_error::logic_error;
};

inline AbelianGroup parametric_group(ParametricFamily f, long a, long b) {
  AbelianGroup reduced = cyclic_group(parametric_order(f, a, b));
  AbelianGroup full = group_of(parametric_presentation(f, a, b));
  if (!(reduced == full))
    throw ParametricMismatch("reduced " + reduced.to_string() + " != full " + full.to_string());
  return reduced;
}

}  // namespace dgk

#endif  // DGK_HOMOLOGY_HPP
