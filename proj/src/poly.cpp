#include "vwb/poly.hpp"

#include <algorithm>

#include "vwb/errors.hpp"

namespace vwb {

Poly::Poly(FieldRef f, elem c) : f_(f) {
  if (c) c_.push_back(c);
}

Poly::Poly(FieldRef f, std::vector<elem> coeffs) : f_(f), c_(std::move(coeffs)) { trim(); }

void Poly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

int Poly::valuation() const {
  for (size_t i = 0; i < c_.size(); ++i)
    if (c_[i]) return static_cast<int>(i);
  return -1;
}

elem Poly::eval(elem x) const {
  elem r = 0;
  for (int i = degree(); i >= 0; --i) r = f_->add(f_->mul(r, x), c_[i]);
  return r;
}

Poly Poly::operator+(const Poly& o) const {
  FieldRef f = f_ ? f_ : o.f_;
  if (c_.empty()) return Poly(f, o.c_);
  if (o.c_.empty()) return Poly(f, c_);
  std::vector<elem> r(std::max(c_.size(), o.c_.size()), 0);
  for (size_t i = 0; i < r.size(); ++i) r[i] = f->add(coeff(i), o.coeff(i));
  return Poly(f, std::move(r));
}

Poly Poly::operator-() const {
  std::vector<elem> r(c_.size());
  for (size_t i = 0; i < c_.size(); ++i) r[i] = f_->neg(c_[i]);
  return Poly(f_, std::move(r));
}

Poly Poly::operator-(const Poly& o) const {
  FieldRef f = f_ ? f_ : o.f_;
  if (o.c_.empty()) return Poly(f, c_);
  std::vector<elem> r(std::max(c_.size(), o.c_.size()), 0);
  for (size_t i = 0; i < r.size(); ++i) r[i] = f->sub(coeff(i), o.coeff(i));
  return Poly(f, std::move(r));
}

Poly Poly::operator*(const Poly& o) const {
  FieldRef f = f_ ? f_ : o.f_;
  if (c_.empty() || o.c_.empty()) return Poly(f);
  std::vector<elem> r(c_.size() + o.c_.size() - 1, 0);
  for (size_t i = 0; i < c_.size(); ++i) {
    if (!c_[i]) continue;
    for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] = f->add(r[i + j], f->mul(c_[i], o.c_[j]));
  }
  return Poly(f, std::move(r));
}

Poly Poly::scaled(elem s) const {
  if (!s) return Poly(f_);
  std::vector<elem> r(c_.size());
  for (size_t i = 0; i < c_.size(); ++i) r[i] = f_->mul(c_[i], s);
  return Poly(f_, std::move(r));
}

void Poly::divmod(const Poly& d, Poly& q, Poly& r) const {
  if (d.is_zero()) throw Error("SingularInput", "polynomial division by zero");
  FieldRef f = d.f_;
  std::vector<elem> rem = c_;
  int dd = d.degree();
  elem li = f->inv(d.lead());
  std::vector<elem> quo(std::max(0, degree() - dd + 1), 0);
  for (int k = degree(); k >= dd; --k) {
    elem c = rem[k];
    if (!c) continue;
    elem m = f->mul(c, li);
    quo[k - dd] = m;
    for (int i = 0; i <= dd; ++i) rem[k - dd + i] = f->sub(rem[k - dd + i], f->mul(m, d.c_[i]));
  }
  q = Poly(f, std::move(quo));
  r = Poly(f, std::move(rem));
}

Poly Poly::shift_down(int k) const {
  if (k == 0) return *this;
  for (int i = 0; i < k && i < static_cast<int>(c_.size()); ++i)
    if (c_[i]) throw Error("SingularInput", "polynomial not divisible by t^k");
  if (k >= static_cast<int>(c_.size())) return Poly(f_);
  return Poly(f_, std::vector<elem>(c_.begin() + k, c_.end()));
}

Poly Poly::monic() const {
  if (is_zero()) return *this;
  return scaled(f_->inv(lead()));
}

std::string Poly::to_string() const {
  if (c_.empty()) return "0";
  std::string s;
  for (int i = degree(); i >= 0; --i) {
    if (!c_[i]) continue;
    if (!s.empty()) s += " + ";
    std::string c = f_->to_string(c_[i]);
    if (f_->degree() > 1 && i > 0 && c.find('+') != std::string::npos) c = "(" + c + ")";
    if (i == 0) {
      s += c;
    } else {
      if (c != "1") s += c + "*";
      s += "t";
      if (i > 1) s += "^" + std::to_string(i);
    }
  }
  return s;
}

Poly gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly q, r;
    a.divmod(b, q, r);
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

// RatFunc

RatFunc::RatFunc(const Poly& n) : num_(n), den_(n.field(), 1) {}

RatFunc::RatFunc(const Poly& n, const Poly& d) : num_(n), den_(d) { normalize(); }

void RatFunc::normalize() {
  if (den_.is_zero()) throw Error("SingularInput", "rational function with zero denominator");
  if (num_.is_zero()) {
    den_ = Poly(den_.field(), 1);
    return;
  }
  if (den_.degree() > 0) {
    Poly g = gcd(num_, den_);
    if (g.degree() > 0) {
      Poly q, r;
      num_.divmod(g, q, r);
      num_ = q;
      den_.divmod(g, q, r);
      den_ = q;
    }
  }
  elem li = den_.field()->inv(den_.lead());
  num_ = num_.scaled(li);
  den_ = den_.scaled(li);
}

RatFunc RatFunc::operator+(const RatFunc& o) const {
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  if (den_ == o.den_) return RatFunc(num_ + o.num_, den_);
  return RatFunc(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RatFunc RatFunc::operator-() const {
  RatFunc r = *this;
  r.num_ = -r.num_;
  return r;
}

RatFunc RatFunc::operator-(const RatFunc& o) const { return *this + (-o); }

RatFunc RatFunc::operator*(const RatFunc& o) const {
  if (is_zero()) return *this;
  if (o.is_zero()) return o;
  return RatFunc(num_ * o.num_, den_ * o.den_);
}

RatFunc RatFunc::operator/(const RatFunc& o) const {
  if (o.is_zero()) throw Error("SingularInput", "rational division by zero");
  return RatFunc(num_ * o.den_, den_ * o.num_);
}

// Series

Series Series::from_poly(const Poly& p, int prec) {
  Series s(p.field(), prec);
  for (int i = 0; i < prec && i <= p.degree(); ++i) s.c_[i] = p.coeff(i);
  return s;
}

Series Series::constant(FieldRef f, elem c, int prec) {
  Series s(f, prec);
  if (prec > 0) s.c_[0] = c;
  return s;
}

int Series::valuation() const {
  for (size_t i = 0; i < c_.size(); ++i)
    if (c_[i]) return static_cast<int>(i);
  return prec();
}

Series Series::operator+(const Series& o) const {
  int n = std::min(prec(), o.prec());
  Series r(f_ ? f_ : o.f_, n);
  for (int i = 0; i < n; ++i) r.c_[i] = r.f_->add(c_[i], o.c_[i]);
  return r;
}

Series Series::operator-(const Series& o) const {
  int n = std::min(prec(), o.prec());
  Series r(f_ ? f_ : o.f_, n);
  for (int i = 0; i < n; ++i) r.c_[i] = r.f_->sub(c_[i], o.c_[i]);
  return r;
}

Series Series::operator-() const {
  Series r(f_, prec());
  for (int i = 0; i < prec(); ++i) r.c_[i] = f_->neg(c_[i]);
  return r;
}

// precision of a product: min over v(a)+prec(b), v(b)+prec(a)
Series Series::operator*(const Series& o) const {
  FieldRef f = f_ ? f_ : o.f_;
  int va = valuation(), vb = o.valuation();
  int n = std::min(va + o.prec(), vb + prec());
  Series r(f, n);
  for (int i = va; i < prec() && i < n; ++i) {
    if (!c_[i]) continue;
    for (int j = vb; j < o.prec() && i + j < n; ++j) r.c_[i + j] = f->add(r.c_[i + j], f->mul(c_[i], o.c_[j]));
  }
  return r;
}

Series Series::scaled(elem s) const {
  Series r(f_, prec());
  for (int i = 0; i < prec(); ++i) r.c_[i] = f_->mul(c_[i], s);
  return r;
}

Series Series::inverse() const {
  if (prec() == 0 || c_[0] == 0) throw Error("SingularInput", "series is not a unit");
  int n = prec();
  Series r(f_, n);
  elem i0 = f_->inv(c_[0]);
  r.c_[0] = i0;
  for (int k = 1; k < n; ++k) {
    elem s = 0;
    for (int j = 1; j <= k; ++j) s = f_->add(s, f_->mul(c_[j], r.c_[k - j]));
    r.c_[k] = f_->neg(f_->mul(s, i0));
  }
  return r;
}

Series Series::shift_down(int k) const {
  for (int i = 0; i < k && i < prec(); ++i)
    if (c_[i]) throw Error("SingularInput", "series not divisible by t^k");
  int n = std::max(0, prec() - k);
  Series r(f_, n);
  for (int i = 0; i < n; ++i) r.c_[i] = c_[i + k];
  return r;
}

Series Series::truncated(int p) const {
  Series r(f_, std::min(p, prec()));
  for (int i = 0; i < r.prec(); ++i) r.c_[i] = c_[i];
  return r;
}

Poly Series::to_poly() const { return Poly(f_, c_); }

std::string Series::to_string() const { return to_poly().to_string() + " + O(t^" + std::to_string(prec()) + ")"; }

}  // namespace vwb
