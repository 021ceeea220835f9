#pragma once

#include <string>
#include <vector>

#include "vwb/field.hpp"

namespace vwb {

using elem = GaloisField::elem;

// Polynomial in t over F_q. Coefficients low degree first, no trailing zeros.
class Poly {
 public:
  Poly() = default;
  explicit Poly(FieldRef f) : f_(f) {}
  Poly(FieldRef f, elem c);
  Poly(FieldRef f, std::vector<elem> coeffs);
  static Poly t(FieldRef f) { return Poly(f, std::vector<elem>{0, 1}); }
  // c*t + d
  static Poly linear(FieldRef f, elem c, elem d) { return Poly(f, std::vector<elem>{d, c}); }

  FieldRef field() const { return f_; }
  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  // t-adic valuation; -1 for zero
  int valuation() const;
  elem coeff(int i) const { return i < static_cast<int>(c_.size()) ? c_[i] : elem(0); }
  elem constant() const { return coeff(0); }
  elem lead() const { return c_.empty() ? elem(0) : c_.back(); }
  const std::vector<elem>& coeffs() const { return c_; }
  elem eval(elem x) const;

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator-() const;
  Poly operator*(const Poly& o) const;
  Poly scaled(elem s) const;
  Poly& operator+=(const Poly& o) { return *this = *this + o; }
  Poly& operator-=(const Poly& o) { return *this = *this - o; }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }
  bool operator==(const Poly& o) const { return c_ == o.c_; }
  bool operator!=(const Poly& o) const { return c_ != o.c_; }

  // Division with remainder; divisor nonzero.
  void divmod(const Poly& d, Poly& q, Poly& r) const;
  // Exact division by t^k (must be divisible).
  Poly shift_down(int k) const;
  Poly monic() const;
  std::string to_string() const;

 private:
  void trim();
  FieldRef f_ = nullptr;
  std::vector<elem> c_;
};

Poly gcd(Poly a, Poly b);

// Rational function num/den with den monic, reduced.
class RatFunc {
 public:
  RatFunc() = default;
  explicit RatFunc(const Poly& n);
  RatFunc(const Poly& n, const Poly& d);
  bool is_zero() const { return num_.is_zero(); }
  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  RatFunc operator+(const RatFunc& o) const;
  RatFunc operator-(const RatFunc& o) const;
  RatFunc operator*(const RatFunc& o) const;
  RatFunc operator/(const RatFunc& o) const;
  RatFunc operator-() const;

 private:
  void normalize();
  Poly num_, den_;
};

// Element of A/t^M known modulo t^prec (prec <= M).
class Series {
 public:
  Series() = default;
  Series(FieldRef f, int prec) : f_(f), c_(prec, 0) {}
  static Series from_poly(const Poly& p, int prec);
  static Series constant(FieldRef f, elem c, int prec);

  FieldRef field() const { return f_; }
  int prec() const { return static_cast<int>(c_.size()); }
  elem coeff(int i) const { return c_[i]; }
  elem& coeff(int i) { return c_[i]; }
  // valuation, or prec() if zero to known precision
  int valuation() const;
  bool is_zero() const { return valuation() == prec(); }

  Series operator+(const Series& o) const;
  Series operator-(const Series& o) const;
  Series operator-() const;
  Series operator*(const Series& o) const;
  Series scaled(elem s) const;
  // inverse of a unit (valuation 0)
  Series inverse() const;
  // divide by t^k; precision drops by k
  Series shift_down(int k) const;
  Series truncated(int prec) const;
  Poly to_poly() const;
  std::string to_string() const;

 private:
  FieldRef f_ = nullptr;
  std::vector<elem> c_;
};

}  // namespace vwb
