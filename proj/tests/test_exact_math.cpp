#include <doctest.h>

#include <cmath>
#include <random>

#include "kscolor/error.hpp"
#include "kscolor/exact_math.hpp"
#include "support.hpp"

using namespace kscolor;
using kscolor::testing::ivec;
using kscolor::testing::random_scalar;
using kscolor::testing::random_vec;

namespace {

ExactScalar sc(long a, long b) { return ExactScalar(Rational(a), Rational(b)); }

}  // namespace

TEST_CASE("rationals are stored in lowest terms") {
  const Rational q = parse_rational("-6/4");
  CHECK(q.get_num() == -3);
  CHECK(q.get_den() == 2);
  const Rational zero = parse_rational("0/7");
  CHECK(zero.get_num() == 0);
  CHECK(zero.get_den() == 1);
  CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
  CHECK_THROWS_AS(parse_rational("abc"), ParseError);
}

TEST_CASE("scalar arithmetic examples") {
  CHECK(scalar_arith(sc(1, 1), sc(1, -1), ArithOp::Mul) == sc(-1, 0));
  CHECK(scalar_arith(sc(0, 1), sc(0, 1), ArithOp::Mul) == sc(2, 0));
  CHECK(scalar_arith(sc(3, 2), sc(3, 2), ArithOp::Div) == sc(1, 0));
  CHECK(scalar_arith(sc(3, 2), sc(1, 1), ArithOp::Add) == sc(4, 3));
  CHECK(scalar_arith(sc(3, 2), sc(1, 1), ArithOp::Sub) == sc(2, 1));
  CHECK_THROWS_AS(scalar_arith(sc(1, 1), sc(0, 0), ArithOp::Div), Error);
  CHECK_THROWS_AS(ExactScalar(0).inverse(), Error);
}

TEST_CASE("zero iff both parts are zero") {
  CHECK(ExactScalar(0).is_zero());
  CHECK_FALSE(sc(0, 1).is_zero());
  CHECK_FALSE(sc(1, 0).is_zero());
  // Canonical representation makes 2/4 equal to 1/2.
  CHECK(ExactScalar(Rational(2, 4), Rational(0)) == ExactScalar(Rational(1, 2), Rational(0)));
}

TEST_CASE("exact sign including near-cancellation") {
  CHECK(sc(1, 0).sign() == 1);
  CHECK(sc(-1, 0).sign() == -1);
  CHECK(sc(0, 0).sign() == 0);
  CHECK(sc(-1, 1).sign() == 1);   // sqrt2 - 1
  CHECK(sc(3, -2).sign() == 1);   // 3 - 2 sqrt2 ~ 0.17
  CHECK(sc(-3, 2).sign() == -1);
  // 665857 - 470832 sqrt2 ~ 7.5e-7; naive double evaluation keeps only a few digits.
  CHECK(sc(665857, -470832).sign() == 1);
  CHECK(sc(-665857, 470832).sign() == -1);
  CHECK(sc(665857, -470832).to_double() == doctest::Approx(7.509119826032946e-7).epsilon(1e-12));
  CHECK(sc(-1, 1) > sc(0, 0));
  CHECK(sc(1, 1) > sc(2, 0));
  CHECK(sc(2, 0) > sc(0, 1));
}

TEST_CASE("scalar text format") {
  CHECK(parse_scalar("3") == sc(3, 0));
  CHECK(parse_scalar("-1/2") == ExactScalar(Rational(-1, 2)));
  CHECK(parse_scalar("sqrt2") == sc(0, 1));
  CHECK(parse_scalar("-sqrt2") == sc(0, -1));
  CHECK(parse_scalar("3/4*sqrt2") == ExactScalar(Rational(0), Rational(3, 4)));
  CHECK(parse_scalar("1/2+0*sqrt2") == ExactScalar(Rational(1, 2)));
  CHECK(parse_scalar("1/2+0*sqrt2").is_rational());
  CHECK(parse_scalar("1-sqrt2") == sc(1, -1));
  CHECK(parse_scalar(" 2 + 3*sqrt2 ") == sc(2, 3));

  for (const char* bad : {"", "x", "1/0", "sqrt2+1", "1+", "1*2", "sqrt2+sqrt2", "1 2"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_scalar(bad), ParseError);
  }
  try {
    parse_scalar("1/0");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.column() == 3);
  }

  CHECK(to_string(sc(0, 1)) == "sqrt2");
  CHECK(to_string(sc(0, -1)) == "-sqrt2");
  CHECK(to_string(ExactScalar(Rational(1, 2), Rational(-3, 4))) == "1/2-3/4*sqrt2");
  CHECK(to_string(ExactScalar(0)) == "0");

  std::mt19937_64 rng(11);
  for (int i = 0; i < 500; ++i) {
    const ExactScalar s = random_scalar(rng);
    CHECK(parse_scalar(to_string(s)) == s);
  }
}

TEST_CASE("dot examples") {
  CHECK(dot(ivec(1, 2, 2), ivec(2, 1, -2)).is_zero());
  CHECK(dot(ivec(1, 0, 0), ivec(1, 0, 0)) == ExactScalar(1));
  CHECK(dot(ivec(1, 1, 0), ivec(1, -1, 0)).is_zero());
}

TEST_CASE("cross examples") {
  CHECK(cross(ivec(1, 2, 2), ivec(2, 1, -2)) == ivec(-6, 6, -3));
  CHECK(cross(ivec(1, 0, 0), ivec(0, 1, 0)) == ivec(0, 0, 1));
  CHECK_THROWS_AS(cross(ivec(1, 1, 0), ivec(2, 2, 0)), Error);
  CHECK(cross_unchecked(ivec(1, 1, 0), ivec(2, 2, 0)).is_zero());
}

TEST_CASE("field axioms on random triples") {
  std::mt19937_64 rng(20240601);
  for (int i = 0; i < 1000; ++i) {
    const ExactScalar a = random_scalar(rng), b = random_scalar(rng), c = random_scalar(rng);
    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK(a - a == ExactScalar(0));
    if (!a.is_zero()) CHECK(a * a.inverse() == ExactScalar(1));
    if (!b.is_zero()) CHECK((a / b) * b == a);
  }
}

TEST_CASE("exact sign agrees with float sign away from zero") {
  std::mt19937_64 rng(7);
  int checked = 0;
  for (int i = 0; i < 2000; ++i) {
    const ExactScalar s = random_scalar(rng);
    const double f = s.rat().get_d() + s.irr().get_d() * std::sqrt(2.0);
    if (std::abs(f) > 1e-9) {
      CHECK(s.sign() == (f > 0 ? 1 : -1));
      ++checked;
    }
  }
  CHECK(checked > 1900);
}

TEST_CASE("cross is orthogonal to both inputs") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 1000; ++i) {
    const bool irr = i % 2 == 1;
    const ExactVec3 u = random_vec(rng, irr), v = random_vec(rng, irr);
    const ExactVec3 w = cross_unchecked(u, v);
    CHECK(dot(u, w).is_zero());
    CHECK(dot(v, w).is_zero());
  }
}

TEST_CASE("dot is symmetric and bilinear") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 300; ++i) {
    const ExactVec3 u = random_vec(rng), v = random_vec(rng), w = random_vec(rng);
    const ExactScalar s = random_scalar(rng);
    CHECK(dot(u, v) == dot(v, u));
    CHECK(dot(u + v, w) == dot(u, w) + dot(v, w));
    CHECK(dot(s * u, v) == s * dot(u, v));
  }
}
