#include "kscolor/exact_math.hpp"

#include <cctype>
#include <cmath>

#include "kscolor/error.hpp"

namespace kscolor {

namespace {

constexpr std::string_view kSqrt2 = "sqrt2";

bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

// Cursor over scalar text; positions reported 1-based.
struct Cursor {
  std::string_view text;
  std::size_t pos = 0;

  bool done() const { return pos >= text.size(); }
  char peek() const { return done() ? '\0' : text[pos]; }
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError(what + " in scalar \"" + std::string(text) + "\"", 1, pos + 1);
  }
  void skip_space() {
    while (!done() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  bool accept(std::string_view token) {
    if (text.substr(pos, token.size()) == token) {
      pos += token.size();
      return true;
    }
    return false;
  }
  std::string digits() {
    std::size_t start = pos;
    while (!done() && is_digit(text[pos])) ++pos;
    if (start == pos) fail("expected digits");
    return std::string(text.substr(start, pos - start));
  }
};

// Unsigned rational "p" or "p/q".
Rational read_magnitude(Cursor& cur) {
  std::string num = cur.digits();
  if (!cur.accept("/")) return Rational(mpz_class(num));
  std::size_t den_pos = cur.pos;
  mpz_class den(cur.digits());
  if (den == 0) {
    cur.pos = den_pos;
    cur.fail("zero denominator");
  }
  Rational q(mpz_class(num), den);
  q.canonicalize();
  return q;
}

// One signed term: either a rational or a multiple of sqrt2.
struct Term {
  Rational value;
  bool is_irrational = false;
};

Term read_term(Cursor& cur, int sign) {
  Term term;
  if (cur.accept(kSqrt2)) {
    term.value = sign;
    term.is_irrational = true;
    return term;
  }
  if (!is_digit(cur.peek())) cur.fail("expected number or sqrt2");
  term.value = read_magnitude(cur);
  if (sign < 0) term.value = -term.value;
  if (cur.accept("*")) {
    if (!cur.accept(kSqrt2)) cur.fail("expected sqrt2 after '*'");
    term.is_irrational = true;
  }
  return term;
}

int sign_of(const Rational& q) { return sgn(q); }

}  // namespace

Rational parse_rational(std::string_view text) {
  Cursor cur{text};
  cur.skip_space();
  int sign = 1;
  if (cur.accept("-")) {
    sign = -1;
  } else {
    cur.accept("+");
  }
  Rational q = read_magnitude(cur);
  cur.skip_space();
  if (!cur.done()) cur.fail("trailing characters");
  return sign < 0 ? Rational(-q) : q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

ExactScalar::ExactScalar(Rational rat, Rational irr)
    : rat_(std::move(rat)), irr_(std::move(irr)) {
  rat_.canonicalize();
  irr_.canonicalize();
}

int ExactScalar::sign() const {
  const int a = sign_of(rat_);
  const int b = sign_of(irr_);
  if (b == 0) return a;
  if (a == 0 || a == b) return b;
  // Opposite signs: the part with the larger square wins.
  const int c = cmp(rat_ * rat_, 2 * irr_ * irr_);
  return c > 0 ? a : b;
}

ExactScalar ExactScalar::inverse() const {
  if (is_zero()) throw Error("division by zero in Q(sqrt2)");
  const Rational n = norm();
  return ExactScalar(rat_ / n, -irr_ / n);
}

double ExactScalar::to_double() const {
  static const double kRoot2 = std::sqrt(2.0);
  const int a = sign_of(rat_);
  const int b = sign_of(irr_);
  if (a == 0 || b == 0 || a == b) return rat_.get_d() + irr_.get_d() * kRoot2;
  // a + b*sqrt2 = (a^2 - 2b^2) / (a - b*sqrt2); the denominator has no cancellation.
  const Rational n = norm();
  return n.get_d() / (rat_.get_d() - irr_.get_d() * kRoot2);
}

ExactScalar& ExactScalar::operator+=(const ExactScalar& o) {
  rat_ += o.rat_;
  irr_ += o.irr_;
  return *this;
}

ExactScalar& ExactScalar::operator-=(const ExactScalar& o) {
  rat_ -= o.rat_;
  irr_ -= o.irr_;
  return *this;
}

ExactScalar& ExactScalar::operator*=(const ExactScalar& o) {
  if (is_rational() && o.is_rational()) {
    rat_ *= o.rat_;
    return *this;
  }
  Rational r = rat_ * o.rat_ + 2 * irr_ * o.irr_;
  Rational i = rat_ * o.irr_ + irr_ * o.rat_;
  rat_ = std::move(r);
  irr_ = std::move(i);
  return *this;
}

ExactScalar& ExactScalar::operator/=(const ExactScalar& o) {
  if (o.is_zero()) throw Error("division by zero in Q(sqrt2)");
  if (o.is_rational()) {
    rat_ /= o.rat_;
    irr_ /= o.rat_;
    return *this;
  }
  return *this *= o.inverse();
}

std::strong_ordering operator<=>(const ExactScalar& a, const ExactScalar& b) {
  const int s = (a - b).sign();
  if (s < 0) return std::strong_ordering::less;
  if (s > 0) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

ExactScalar scalar_arith(const ExactScalar& a, const ExactScalar& b, ArithOp op) {
  switch (op) {
    case ArithOp::Add: return a + b;
    case ArithOp::Sub: return a - b;
    case ArithOp::Mul: return a * b;
    case ArithOp::Div: return a / b;
  }
  throw Error("unknown arithmetic operation");
}

ExactScalar parse_scalar(std::string_view text) {
  Cursor cur{text};
  cur.skip_space();
  if (cur.done()) cur.fail("empty scalar");

  Rational rat, irr;
  bool seen_rat = false, seen_irr = false;
  bool first = true;
  while (true) {
    cur.skip_space();
    int sign = 1;
    if (cur.accept("-")) {
      sign = -1;
    } else if (cur.accept("+")) {
    } else if (!first) {
      break;
    }
    cur.skip_space();
    const std::size_t term_pos = cur.pos;
    Term t = read_term(cur, sign);
    if (t.is_irrational) {
      if (seen_irr) {
        cur.pos = term_pos;
        cur.fail("more than one sqrt2 term");
      }
      irr = t.value;
      seen_irr = true;
    } else {
      if (seen_rat || seen_irr) {
        cur.pos = term_pos;
        cur.fail("rational term must come first");
      }
      rat = t.value;
      seen_rat = true;
    }
    first = false;
    cur.skip_space();
    if (cur.done()) break;
  }
  if (!cur.done()) cur.fail("trailing characters");
  return ExactScalar(rat, irr);
}

std::string to_string(const ExactScalar& s) {
  const bool has_rat = sgn(s.rat()) != 0;
  const bool has_irr = sgn(s.irr()) != 0;
  std::string out;
  if (has_rat || !has_irr) out = s.rat().get_str();
  if (!has_irr) return out;

  Rational mag = abs(s.irr());
  const bool negative = sgn(s.irr()) < 0;
  if (negative) {
    out += "-";
  } else if (has_rat) {
    out += "+";
  }
  if (mag != 1) out += mag.get_str() + "*";
  out += kSqrt2;
  return out;
}

int compare_parts(const ExactScalar& a, const ExactScalar& b) {
  if (int c = cmp(a.rat(), b.rat()); c != 0) return c < 0 ? -1 : 1;
  int c = cmp(a.irr(), b.irr());
  return c < 0 ? -1 : (c > 0 ? 1 : 0);
}

bool ExactVec3::is_rational() const {
  return c_[0].is_rational() && c_[1].is_rational() && c_[2].is_rational();
}

ExactVec3 operator+(const ExactVec3& a, const ExactVec3& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}

ExactVec3 operator-(const ExactVec3& a, const ExactVec3& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}

ExactVec3 operator*(const ExactScalar& s, const ExactVec3& v) {
  return {s * v[0], s * v[1], s * v[2]};
}

std::array<double, 3> ExactVec3::to_double() const {
  return {c_[0].to_double(), c_[1].to_double(), c_[2].to_double()};
}

ExactScalar dot(const ExactVec3& u, const ExactVec3& v) {
  return u[0] * v[0] + u[1] * v[1] + u[2] * v[2];
}

ExactVec3 cross_unchecked(const ExactVec3& u, const ExactVec3& v) {
  return {u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2],
          u[0] * v[1] - u[1] * v[0]};
}

ExactVec3 cross(const ExactVec3& u, const ExactVec3& v) {
  ExactVec3 w = cross_unchecked(u, v);
  if (w.is_zero()) {
    throw Error("cross product of parallel vectors " + to_string(u) + " and " +
                to_string(v));
  }
  return w;
}

std::string to_string(const ExactVec3& v) {
  return "(" + to_string(v[0]) + "," + to_string(v[1]) + "," + to_string(v[2]) + ")";
}

}  // namespace kscolor
