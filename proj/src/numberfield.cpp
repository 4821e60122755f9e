#include "mcensus/numberfield.hpp"

#include <cassert>
#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>

namespace mcensus {

namespace {

using Poly = std::vector<Rational>;  // coefficients, low degree first

void trim(Poly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

int deg(const Poly& p) { return int(p.size()) - 1; }  // -1 for zero

Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

// Division with remainder: a = q*b + r.  b must be nonzero.
void poly_divmod(Poly a, const Poly& b, Poly& q, Poly& r) {
  q.assign(a.size(), Rational(0));
  while (deg(a) >= deg(b)) {
    int shift = deg(a) - deg(b);
    Rational c = a.back() / b.back();
    q[shift] = c;
    for (int i = 0; i <= deg(b); ++i) a[i + shift] -= c * b[i];
    trim(a);
    if (a.empty()) break;
  }
  trim(q);
  r = std::move(a);
}

// n-th cyclotomic polynomial, exact, via (y^n - 1) / prod of proper divisors.
Poly cyclotomic(int n, std::map<int, Poly>& memo) {
  auto it = memo.find(n);
  if (it != memo.end()) return it->second;
  Poly p(n + 1, Rational(0));
  p[0] = -1;
  p[n] = 1;
  for (int d = 1; d < n; ++d)
    if (n % d == 0) {
      Poly q, r;
      poly_divmod(p, cyclotomic(d, memo), q, r);
      assert(r.empty());
      p = std::move(q);
    }
  memo[n] = p;
  return p;
}

}  // namespace

CosineField::CosineField(int r) : r_(r) {
  if (r < 3) throw std::invalid_argument("field order must be at least 3");
  std::map<int, Poly> memo;
  Poly phi = cyclotomic(2 * r, memo);
  // phi is palindromic of even degree 2m; the minimal polynomial of
  // y + 1/y is recovered through the basis y^k + y^-k = D_k(x), with
  // D_0 = 2, D_1 = x, D_k = x D_{k-1} - D_{k-2}.
  int m = deg(phi) / 2;
  assert(deg(phi) == 2 * m);
  Poly psi{phi[m]};
  Poly dk_prev{Rational(2)};   // D_0
  Poly dk{Rational(0), Rational(1)};  // D_1
  for (int k = 1; k <= m; ++k) {
    Poly term = dk;
    for (auto& c : term) c *= phi[m - k];
    if (term.size() > psi.size()) psi.resize(term.size());
    for (size_t i = 0; i < term.size(); ++i) psi[i] += term[i];
    // advance D
    Poly next = poly_mul(Poly{Rational(0), Rational(1)}, dk);
    for (size_t i = 0; i < dk_prev.size(); ++i) next[i] -= dk_prev[i];
    trim(next);
    dk_prev = std::move(dk);
    dk = std::move(next);
  }
  trim(psi);
  assert(psi.back() == 1);  // monic
  psi_ = std::move(psi);
  degree_ = deg(psi_);

  // Precompute reductions of delta^k for k = degree .. 2*degree-2.
  // delta^degree = -(psi - leading term).
  Poly cur(degree_);
  for (int i = 0; i < degree_; ++i) cur[i] = -psi_[i];
  high_powers_.push_back(cur);
  for (int k = degree_ + 1; k <= 2 * degree_ - 2; ++k) {
    Poly next(degree_);
    // next = shift(cur) reduced: delta * cur
    Rational top = cur.empty() ? Rational(0) : cur[degree_ - 1];
    for (int i = degree_ - 1; i >= 1; --i) next[i] = cur[i - 1];
    next[0] = 0;
    for (int i = 0; i < degree_; ++i) next[i] += top * high_powers_[0][i];
    high_powers_.push_back(next);
    cur = std::move(next);
  }
  delta_ = 2.0 * std::cos(M_PI / r_);
}

std::vector<Rational> CosineField::reduce(std::vector<Rational> c) const {
  for (int k = int(c.size()) - 1; k >= degree_; --k) {
    if (c[k] != 0) {
      const auto& rep = high_powers_[k - degree_];
      for (int i = 0; i < degree_; ++i) c[i] += c[k] * rep[i];
    }
    c.pop_back();
  }
  c.resize(degree_, Rational(0));
  return c;
}

FieldElem CosineField::zero() const {
  return FieldElem(this, std::vector<Rational>(degree_, Rational(0)));
}

FieldElem CosineField::one() const { return integer(1); }

FieldElem CosineField::integer(long v) const {
  std::vector<Rational> c(degree_, Rational(0));
  c[0] = v;
  return FieldElem(this, std::move(c));
}

FieldElem CosineField::rational(const Rational& v) const {
  std::vector<Rational> c(degree_, Rational(0));
  c[0] = v;
  return FieldElem(this, std::move(c));
}

FieldElem CosineField::generator() const {
  std::vector<Rational> c(degree_, Rational(0));
  if (degree_ == 1) {
    // Q itself (r = 3): delta = 1.
    c[0] = 1;
  } else {
    c[1] = 1;
  }
  return FieldElem(this, std::move(c));
}

FieldElem FieldElem::operator+(const FieldElem& o) const {
  assert(field_ == o.field_);
  std::vector<Rational> c(coeff_);
  for (size_t i = 0; i < c.size(); ++i) c[i] += o.coeff_[i];
  return FieldElem(field_, std::move(c));
}

FieldElem FieldElem::operator-(const FieldElem& o) const {
  assert(field_ == o.field_);
  std::vector<Rational> c(coeff_);
  for (size_t i = 0; i < c.size(); ++i) c[i] -= o.coeff_[i];
  return FieldElem(field_, std::move(c));
}

FieldElem FieldElem::operator-() const {
  std::vector<Rational> c(coeff_);
  for (auto& v : c) v = -v;
  return FieldElem(field_, std::move(c));
}

FieldElem FieldElem::operator*(const FieldElem& o) const {
  assert(field_ == o.field_);
  std::vector<Rational> prod(coeff_.size() + o.coeff_.size() - 1, Rational(0));
  for (size_t i = 0; i < coeff_.size(); ++i) {
    if (coeff_[i] == 0) continue;
    for (size_t j = 0; j < o.coeff_.size(); ++j)
      prod[i + j] += coeff_[i] * o.coeff_[j];
  }
  return FieldElem(field_, field_->reduce(std::move(prod)));
}

FieldElem FieldElem::operator/(const FieldElem& o) const {
  return *this * o.inverse();
}

bool FieldElem::operator==(const FieldElem& o) const {
  assert(field_ == o.field_);
  return coeff_ == o.coeff_;
}

bool FieldElem::is_zero() const {
  for (const auto& c : coeff_)
    if (c != 0) return false;
  return true;
}

FieldElem FieldElem::inverse() const {
  if (is_zero()) throw std::domain_error("division by zero field element");
  // Extended Euclid between this element and the minimal polynomial.
  Poly r0 = field_->minimal_polynomial();
  Poly r1 = coeff_;
  trim(r1);
  Poly s0{}, s1{Rational(1)};  // coefficients of the input element
  while (!r1.empty() && deg(r1) > 0) {
    Poly q, rem;
    poly_divmod(r0, r1, q, rem);
    // s_new = s0 - q * s1
    Poly qs = poly_mul(q, s1);
    Poly snew = s0;
    if (qs.size() > snew.size()) snew.resize(qs.size(), Rational(0));
    for (size_t i = 0; i < qs.size(); ++i) snew[i] -= qs[i];
    trim(snew);
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(snew);
  }
  if (r1.empty()) {
    // gcd has positive degree: cannot happen when psi is irreducible and
    // the element is nonzero, but guard anyway.
    throw std::domain_error("element not invertible");
  }
  Rational c = r1[0];
  for (auto& v : s1) v /= c;
  return FieldElem(field_, field_->reduce(std::move(s1)));
}

FieldElem FieldElem::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  FieldElem base = *this;
  FieldElem acc = field_->one();
  while (e > 0) {
    if (e & 1) acc *= base;
    base *= base;
    e >>= 1;
  }
  return acc;
}

double FieldElem::to_double() const {
  double x = field_->generator_value();
  double acc = 0.0;
  for (int i = int(coeff_.size()) - 1; i >= 0; --i)
    acc = acc * x + coeff_[i].convert_to<double>();
  return acc;
}

std::string FieldElem::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (size_t i = 0; i < coeff_.size(); ++i) {
    if (coeff_[i] == 0) continue;
    if (!first) os << " + ";
    os << coeff_[i];
    if (i == 1) os << "*d";
    if (i > 1) os << "*d^" << i;
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

}  // namespace mcensus
