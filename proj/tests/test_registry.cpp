#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <functional>

#include "doctest.h"
#include "qvlab/error.hpp"
#include "qvlab/growth.hpp"
#include "qvlab/registry.hpp"

using namespace qvlab;

namespace {

errc code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected a qvlab::Error");
  return errc::nonfinite;
}

}  // namespace

TEST_CASE("complex literals in the roots grammar") {
  CHECK(parse_complex("1") == Complex{1.0, 0.0});
  CHECK(parse_complex("-2.5") == Complex{-2.5, 0.0});
  CHECK(parse_complex("1e-3") == Complex{1e-3, 0.0});
  CHECK(parse_complex("2i") == Complex{0.0, 2.0});
  CHECK(parse_complex("i") == Complex{0.0, 1.0});
  CHECK(parse_complex("-i") == Complex{0.0, -1.0});
  CHECK(parse_complex("1+2i") == Complex{1.0, 2.0});
  CHECK(parse_complex("0.5-0.25i") == Complex{0.5, -0.25});
  CHECK(parse_complex("1e+2-3i") == Complex{100.0, -3.0});
  CHECK(parse_complex(" 1 + i ") == Complex{1.0, 1.0});

  for (const char* bad : {"", "abc", "1+2", "2i+1", "1++2i", "+", "1i2"})
    CHECK(code_of([&] { parse_complex(bad); }) == errc::unknown_function);
}

TEST_CASE("harmonic term lists") {
  const HarmonicCombo c2 = parse_harmonic_combo(2, "1+Re(z)+0.5*Im(z^2)");
  REQUIRE(c2.terms.size() == 3);
  CHECK(c2.m == 2);
  CHECK(c2.terms[0].degree == 0);
  CHECK(c2.terms[0].coef == 1.0);
  CHECK(c2.terms[1].degree == 1);
  CHECK(c2.terms[1].index == 0);
  CHECK(c2.terms[2].degree == 2);
  CHECK(c2.terms[2].index == 1);
  CHECK(c2.terms[2].coef == 0.5);

  const HarmonicCombo neg = parse_harmonic_combo(2, "1-0.5*Re(z)-Im(z^3)");
  REQUIRE(neg.terms.size() == 3);
  CHECK(neg.terms[1].coef == -0.5);
  CHECK(neg.terms[2].coef == -1.0);
  CHECK(neg.terms[2].degree == 3);

  // Exponent signs are not term separators.
  const HarmonicCombo sci = parse_harmonic_combo(2, "2e-1*Re(z)+1e+1");
  CHECK(sci.terms[0].coef == 0.2);
  CHECK(sci.terms[1].coef == 10.0);

  const HarmonicCombo c3 = parse_harmonic_combo(3, "0.25*Y(4,-2)+Y(2,0)-Y(1,1)");
  REQUIRE(c3.terms.size() == 3);
  CHECK(c3.terms[0].degree == 4);
  CHECK(c3.terms[0].index == 2);
  CHECK(c3.terms[0].coef == 0.25);
  CHECK(c3.terms[1].index == 2);
  CHECK(c3.terms[2].index == 2);
  CHECK(c3.terms[2].coef == -1.0);

  // Grammar errors versus semantic errors.
  CHECK(code_of([] { parse_harmonic_combo(2, "Y(2,1)"); }) == errc::unknown_function);
  CHECK(code_of([] { parse_harmonic_combo(3, "Re(z)"); }) == errc::unknown_function);
  CHECK(code_of([] { parse_harmonic_combo(2, "Re(w)"); }) == errc::unknown_function);
  CHECK(code_of([] { parse_harmonic_combo(2, "1+"); }) == errc::unknown_function);
  CHECK(code_of([] { parse_harmonic_combo(2, ""); }) == errc::unknown_function);
  CHECK(code_of([] { parse_harmonic_combo(2, "Re(z^9)"); }) == errc::invalid_parameter);
  CHECK(code_of([] { parse_harmonic_combo(3, "Y(5,0)"); }) == errc::invalid_parameter);
  CHECK(code_of([] { parse_harmonic_combo(3, "Y(2,3)"); }) == errc::invalid_parameter);
  CHECK(code_of([] { parse_harmonic_combo(2, "0"); }) == errc::invalid_parameter);
}

TEST_CASE("aliases expand to their root families") {
  const QFunction cube = make_function("cube-root");
  const QFunction cube2 = make_function("roots:3,1,0");
  const QFunction dellis = make_function("dellis");
  const QFunction dellis2 = make_function("roots:2,2,-1");
  CHECK(cube.id() == "cube-root");
  CHECK(cube2.id() == "roots:3,1,0");

  const Vec z{0.3, 0.4};
  CHECK(metric_g(cube.value(z), cube2.value(z)) == 0.0);
  CHECK(metric_g(dellis.value(z), dellis2.value(z)) == 0.0);
  CHECK(h_bar(cube, 0.4) == h_bar(cube2, 0.4));
  CHECK(h_bar(dellis, 0.3) == h_bar(dellis2, 0.3));

  // Complex fields go through the re+imi parser.
  const QFunction ci = make_function("roots:2, 1+0i, 0");
  CHECK(metric_g(ci.value(z), make_function("roots:2,1,0").value(z)) == 0.0);
}

TEST_CASE("homogeneous profiles") {
  // const1 has |profile|^2 = 1, so Hbar = r^{2 alpha}.
  const QFunction c1 = make_function("homog:1,const1");
  CHECK(h_bar(c1, 0.3) == doctest::Approx(0.09).epsilon(1e-12));

  // roots2 matches the cone family: Hbar = 2r.
  const QFunction r2 = make_function("homog:0.5,roots2");
  CHECK(h_bar(r2, 0.6) == doctest::Approx(1.2).epsilon(1e-12));

  // roots3 carries three unit branches: Hbar = 3 r^{2/3}.
  const QFunction r3 = make_function("homog:0.333333333333333333,roots3");
  CHECK(h_bar(r3, 0.5) ==
        doctest::Approx(3.0 * std::pow(0.5, 2.0 / 3.0)).epsilon(1e-12));

  CHECK(code_of([] { make_function("homog:0.5,quux"); }) == errc::unknown_function);
  CHECK(code_of([] { make_function("homog:0.5"); }) == errc::unknown_function);
  CHECK(code_of([] { make_function("homog:-1,const1"); }) == errc::invalid_parameter);
}

TEST_CASE("harmonic ids evaluate through the baseline module") {
  const QFunction f = make_function("harm:m=2;1+Re(z)");
  CHECK(f.id() == "harm:m=2;1+Re(z)");
  CHECK(f.kind() == QFunction::Kind::scalar);
  CHECK(h_bar(f, 0.4) == doctest::Approx(1.0 + 0.5 * 0.16).epsilon(1e-11));

  const QFunction g = make_function("harm:m=3;Y(1,0)");
  CHECK(h_bar(g, 0.6) == doctest::Approx(0.36 / 3.0).epsilon(1e-11));

  CHECK(code_of([] { make_function("harm:m=4;1"); }) == errc::unknown_function);
  CHECK(code_of([] { make_function("harm:1+Re(z)"); }) == errc::unknown_function);
}

TEST_CASE("unknown ids are refused with the registry code") {
  for (const char* bad : {"quux", "roots:2,1", "roots:0.5,1,0", "", "ROOTS:2,1,0"})
    CHECK(code_of([&] { make_function(bad); }) == errc::unknown_function);
  // Valid grammar, invalid family parameters keep their own code.
  CHECK(code_of([] { make_function("roots:0,1,0"); }) == errc::invalid_parameter);
  CHECK(code_of([] { make_function("roots:2,0,0"); }) == errc::invalid_parameter);
}
