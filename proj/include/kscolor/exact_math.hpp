#pragma once

// Exact arithmetic over Q and Q(sqrt2), and 3-vectors over that field.
//
// Everything that decides equality or orthogonality of directions goes
// through these types; floating point only appears in to_double().

#include <gmpxx.h>

#include <array>
#include <compare>
#include <string>
#include <string_view>

namespace kscolor {

// Canonical arbitrary-precision rational (gcd(num, den) = 1, den > 0).
using Rational = mpq_class;

Rational parse_rational(std::string_view text);
std::string to_string(const Rational& q);

// a + b*sqrt2 with a, b rational. The representation is unique because
// sqrt2 is irrational, so equality is component-wise.
class ExactScalar {
 public:
  ExactScalar() = default;
  ExactScalar(long value) : rat_(value) {}  // NOLINT(runtime/explicit)
  explicit ExactScalar(Rational rat, Rational irr = 0);

  static ExactScalar sqrt2() { return ExactScalar(0, 1); }

  const Rational& rat() const { return rat_; }
  const Rational& irr() const { return irr_; }

  bool is_zero() const { return sgn(rat_) == 0 && sgn(irr_) == 0; }
  bool is_rational() const { return sgn(irr_) == 0; }

  // Exact sign, decided by comparing rat^2 with 2*irr^2.
  int sign() const;

  // rat^2 - 2*irr^2, the field norm. Nonzero iff the scalar is nonzero.
  Rational norm() const { return rat_ * rat_ - 2 * irr_ * irr_; }
  ExactScalar conjugate() const { return ExactScalar(rat_, -irr_); }

  // Throws Error on zero.
  ExactScalar inverse() const;

  // Nearest-ish double; avoids cancellation when the two parts have
  // opposite signs by going through the conjugate.
  double to_double() const;

  ExactScalar operator-() const { return ExactScalar(-rat_, -irr_); }
  ExactScalar& operator+=(const ExactScalar& o);
  ExactScalar& operator-=(const ExactScalar& o);
  ExactScalar& operator*=(const ExactScalar& o);
  ExactScalar& operator/=(const ExactScalar& o);

  friend ExactScalar operator+(ExactScalar a, const ExactScalar& b) { return a += b; }
  friend ExactScalar operator-(ExactScalar a, const ExactScalar& b) { return a -= b; }
  friend ExactScalar operator*(ExactScalar a, const ExactScalar& b) { return a *= b; }
  friend ExactScalar operator/(ExactScalar a, const ExactScalar& b) { return a /= b; }

  friend bool operator==(const ExactScalar& a, const ExactScalar& b) {
    return a.rat_ == b.rat_ && a.irr_ == b.irr_;
  }
  // Numeric order on the real line.
  friend std::strong_ordering operator<=>(const ExactScalar& a, const ExactScalar& b);

 private:
  Rational rat_;
  Rational irr_;
};

enum class ArithOp { Add, Sub, Mul, Div };

ExactScalar scalar_arith(const ExactScalar& a, const ExactScalar& b, ArithOp op);

// Textual form: "p", "p/q", "r/s*sqrt2", "sqrt2", "p/q+r/s*sqrt2", "p/q-sqrt2".
// Throws ParseError (column = offending character position).
ExactScalar parse_scalar(std::string_view text);
std::string to_string(const ExactScalar& s);

// Total lexicographic order on the (rat, irr) parts; used for sorting and
// map keys, not numeric comparison.
int compare_parts(const ExactScalar& a, const ExactScalar& b);

class ExactVec3 {
 public:
  ExactVec3() = default;
  ExactVec3(ExactScalar x, ExactScalar y, ExactScalar z)
      : c_{std::move(x), std::move(y), std::move(z)} {}

  const ExactScalar& x() const { return c_[0]; }
  const ExactScalar& y() const { return c_[1]; }
  const ExactScalar& z() const { return c_[2]; }
  const ExactScalar& operator[](std::size_t i) const { return c_[i]; }
  ExactScalar& operator[](std::size_t i) { return c_[i]; }

  bool is_zero() const { return c_[0].is_zero() && c_[1].is_zero() && c_[2].is_zero(); }
  bool is_rational() const;

  ExactVec3 operator-() const { return {-c_[0], -c_[1], -c_[2]}; }
  friend ExactVec3 operator+(const ExactVec3& a, const ExactVec3& b);
  friend ExactVec3 operator-(const ExactVec3& a, const ExactVec3& b);
  friend ExactVec3 operator*(const ExactScalar& s, const ExactVec3& v);
  friend bool operator==(const ExactVec3&, const ExactVec3&) = default;

  std::array<double, 3> to_double() const;

 private:
  std::array<ExactScalar, 3> c_;
};

ExactScalar dot(const ExactVec3& u, const ExactVec3& v);

// Throws Error when u and v are parallel (including either being zero).
ExactVec3 cross(const ExactVec3& u, const ExactVec3& v);

// Cross product without the parallel check.
ExactVec3 cross_unchecked(const ExactVec3& u, const ExactVec3& v);

std::string to_string(const ExactVec3& v);

}  // namespace kscolor
