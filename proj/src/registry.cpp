#include "qvlab/registry.hpp"

#include <cctype>
#include <cstdlib>
#include <vector>

namespace qvlab {

namespace {

[[noreturn]] void bad_id(const std::string& what) {
  fail(errc::unknown_function, what);
}

std::string trim(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

double parse_real(const std::string& s) {
  const std::string t = trim(s);
  if (t.empty()) bad_id("expected a number, got an empty field");
  char* end = nullptr;
  const double v = std::strtod(t.c_str(), &end);
  if (end != t.c_str() + t.size())
    bad_id("could not parse '" + t + "' as a real number");
  return v;
}

int parse_int(const std::string& s) {
  const std::string t = trim(s);
  if (t.empty()) bad_id("expected an integer, got an empty field");
  char* end = nullptr;
  const long v = std::strtol(t.c_str(), &end, 10);
  if (end != t.c_str() + t.size())
    bad_id("could not parse '" + t + "' as an integer");
  return static_cast<int>(v);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

bool starts_with(const std::string& s, const std::string& prefix) {
  return s.size() >= prefix.size() && s.compare(0, prefix.size(), prefix) == 0;
}

// Split "a + b - c" at top-level signs; a '-' opens a new term and keeps its
// sign, exponent signs ("1e-3") and signs inside parentheses stay put.
std::vector<std::string> split_terms(const std::string& s) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  auto push = [&] {
    const std::string t = trim(cur);
    if (t.empty()) bad_id("empty term in harmonic term list");
    out.push_back(t);
    cur.clear();
  };
  for (char ch : s) {
    if (ch == '(') ++depth;
    if (ch == ')') --depth;
    if (depth == 0 && (ch == '+' || ch == '-')) {
      const std::string t = trim(cur);
      const char prev = t.empty() ? '\0' : t.back();
      if (!t.empty() && prev != 'e' && prev != 'E' && prev != '*') {
        push();
        if (ch == '-') cur = "-";
        continue;
      }
    }
    cur += ch;
  }
  push();
  return out;
}

// Atom after the optional "coef*" prefix: Re(z^k), Im(z^k), or Y(l,mm).
HarmonicTerm parse_atom(int m, const std::string& atom, double coef) {
  const std::string a = trim(atom);
  if (a.size() < 4 || a.back() != ')')
    bad_id("could not parse harmonic term '" + a + "'");
  if (starts_with(a, "Re(") || starts_with(a, "Im(")) {
    if (m != 2) bad_id("Re/Im terms belong to harm:m=2");
    const std::string inner = trim(a.substr(3, a.size() - 4));
    int k = 1;
    if (inner != "z") {
      if (!starts_with(inner, "z^"))
        bad_id("planar terms look like Re(z^k) or Im(z^k), got '" + a + "'");
      k = parse_int(inner.substr(2));
    }
    return {k, a[0] == 'R' ? 0 : 1, coef};
  }
  if (starts_with(a, "Y(")) {
    if (m != 3) bad_id("Y(l,m) terms belong to harm:m=3");
    const std::vector<std::string> lm = split(a.substr(2, a.size() - 3), ',');
    if (lm.size() != 2) bad_id("solid terms look like Y(l,m), got '" + a + "'");
    const int l = parse_int(lm[0]);
    const int mm = parse_int(lm[1]);
    return {l, l + mm, coef};
  }
  bad_id("could not parse harmonic term '" + a + "'");
}

Profile profile_by_name(const std::string& name) {
  if (name == "const1")
    return [](const Vec&) { return QPoint(std::vector<Vec>{{1.0}}); };
  if (name == "roots2")
    return [](const Vec& u) {
      return eval_branched_roots(2, {1.0, 0.0}, {0.0, 0.0}, Complex{u[0], u[1]});
    };
  if (name == "roots3")
    return [](const Vec& u) {
      return eval_branched_roots(3, {1.0, 0.0}, {0.0, 0.0}, Complex{u[0], u[1]});
    };
  bad_id("unknown homogeneous profile '" + name +
         "' (known: const1, roots2, roots3)");
}

}  // namespace

Complex parse_complex(const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) bad_id("empty complex literal");

  // Last top-level sign splits real and imaginary parts.
  std::size_t split_at = std::string::npos;
  for (std::size_t k = 1; k < s.size(); ++k)
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E')
      split_at = k;

  auto parse_imag = [&](std::string part) {
    if (part.empty() || part.back() != 'i')
      bad_id("imaginary part of '" + text + "' must end in i");
    part.pop_back();
    if (part.empty() || part == "+") return 1.0;
    if (part == "-") return -1.0;
    return parse_real(part);
  };

  if (s.back() == 'i') {
    if (split_at == std::string::npos) return {0.0, parse_imag(s)};
    return {parse_real(s.substr(0, split_at)), parse_imag(s.substr(split_at))};
  }
  return {parse_real(s), 0.0};
}

HarmonicCombo parse_harmonic_combo(int m, const std::string& terms) {
  const std::string body = trim(terms);
  if (body.empty()) bad_id("harm: needs a term list after the dimension");
  std::vector<HarmonicTerm> parsed;
  for (const std::string& term : split_terms(body)) {
    const std::size_t star = term.find('*');
    if (star != std::string::npos) {
      parsed.push_back(parse_atom(m, term.substr(star + 1),
                                  parse_real(term.substr(0, star))));
      continue;
    }
    if (starts_with(term, "Re(") || starts_with(term, "Im(") ||
        starts_with(term, "Y(")) {
      parsed.push_back(parse_atom(m, term, 1.0));
      continue;
    }
    if (starts_with(term, "-Re(") || starts_with(term, "-Im(") ||
        starts_with(term, "-Y(")) {
      parsed.push_back(parse_atom(m, term.substr(1), -1.0));
      continue;
    }
    parsed.push_back({0, 0, parse_real(term)});  // bare constant
  }
  return make_combo(m, std::move(parsed));
}

QFunction make_function(const std::string& id) {
  const std::string s = trim(id);
  auto finish = [&](QFunction f) {
    f.set_id(s);
    return f;
  };

  if (s == "cube-root") return finish(QFunction::branched(3, {1.0, 0.0}, {0.0, 0.0}));
  if (s == "dellis") return finish(QFunction::branched(2, {2.0, 0.0}, {-1.0, 0.0}));

  if (starts_with(s, "roots:")) {
    const std::vector<std::string> parts = split(s.substr(6), ',');
    if (parts.size() != 3)
      bad_id("roots: takes exactly q,a,b — got '" + s + "'");
    return finish(QFunction::branched(parse_int(parts[0]),
                                      parse_complex(parts[1]),
                                      parse_complex(parts[2])));
  }

  if (starts_with(s, "homog:")) {
    const std::vector<std::string> parts = split(s.substr(6), ',');
    if (parts.size() != 2)
      bad_id("homog: takes alpha,profile — got '" + s + "'");
    const double alpha = parse_real(parts[0]);
    return finish(QFunction::homogeneous(alpha, 2, profile_by_name(trim(parts[1]))));
  }

  if (starts_with(s, "harm:")) {
    const std::string rest = s.substr(5);
    int m = 0;
    if (starts_with(rest, "m=2;"))
      m = 2;
    else if (starts_with(rest, "m=3;"))
      m = 3;
    else
      bad_id("harm: needs an m=2; or m=3; prefix — got '" + s + "'");
    return finish(to_qfunction(parse_harmonic_combo(m, rest.substr(4))));
  }

  bad_id("unknown function id '" + s +
         "' (known: cube-root, dellis, roots:q,a,b, homog:alpha,profile, "
         "harm:m=2;..., harm:m=3;...)");
}

}  // namespace qvlab
