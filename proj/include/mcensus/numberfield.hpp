#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <vector>

namespace mcensus {

using Rational = boost::multiprecision::cpp_rational;

class CosineField;

// An element of a CosineField, stored as coefficients (low degree first) in
// the power basis of the generator.  Elements remember their field; mixing
// elements of different fields is a programming error and asserts.
class FieldElem {
 public:
  FieldElem() : field_(nullptr) {}
  FieldElem(const CosineField* f, std::vector<Rational> c)
      : field_(f), coeff_(std::move(c)) {}

  FieldElem operator+(const FieldElem& o) const;
  FieldElem operator-(const FieldElem& o) const;
  FieldElem operator-() const;
  FieldElem operator*(const FieldElem& o) const;
  FieldElem operator/(const FieldElem& o) const;
  FieldElem& operator+=(const FieldElem& o) { return *this = *this + o; }
  FieldElem& operator-=(const FieldElem& o) { return *this = *this - o; }
  FieldElem& operator*=(const FieldElem& o) { return *this = *this * o; }
  FieldElem& operator/=(const FieldElem& o) { return *this = *this / o; }
  bool operator==(const FieldElem& o) const;
  bool operator!=(const FieldElem& o) const { return !(*this == o); }

  FieldElem inverse() const;  // throws std::domain_error on zero
  FieldElem pow(long e) const;
  bool is_zero() const;
  double to_double() const;
  std::string to_string() const;  // polynomial in the generator, for debugging

  const std::vector<Rational>& coefficients() const { return coeff_; }
  const CosineField* field() const { return field_; }

 private:
  const CosineField* field_;
  std::vector<Rational> coeff_;
};

// The real cyclotomic field Q(delta) with delta = 2 cos(pi / r), realized as
// Q[x] modulo the minimal polynomial of delta.  All arithmetic is exact; the
// numeric embedding sends the generator to the real number 2 cos(pi / r).
class CosineField {
 public:
  explicit CosineField(int r);  // r >= 3

  int r() const { return r_; }
  int degree() const { return degree_; }
  // Minimal polynomial of the generator, monic, coefficients low degree first.
  const std::vector<Rational>& minimal_polynomial() const { return psi_; }

  FieldElem zero() const;
  FieldElem one() const;
  FieldElem integer(long v) const;
  FieldElem rational(const Rational& v) const;
  FieldElem generator() const;  // delta = 2 cos(pi / r)

  // Internal helpers used by FieldElem (reduction modulo psi).
  std::vector<Rational> reduce(std::vector<Rational> c) const;
  double generator_value() const { return delta_; }

 private:
  int r_;
  int degree_;
  std::vector<Rational> psi_;
  // delta^k for k in [degree, 2*degree-2], reduced to the power basis.
  std::vector<std::vector<Rational>> high_powers_;
  double delta_;
};

}  // namespace mcensus
