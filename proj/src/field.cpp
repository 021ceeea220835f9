#include "vwb/field.hpp"

#include <map>
#include <memory>
#include <mutex>

#include "vwb/errors.hpp"

namespace vwb {

bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

namespace {

std::vector<int> digits(int a, int p, int r) {
  std::vector<int> d(r);
  for (int i = 0; i < r; ++i) {
    d[i] = a % p;
    a /= p;
  }
  return d;
}

int undigits(const std::vector<int>& d, int p) {
  int a = 0;
  for (int i = static_cast<int>(d.size()) - 1; i >= 0; --i) a = a * p + d[i];
  return a;
}

// monic polynomial of degree r, coefficient vector length r+1; irreducible
// for r <= 3 iff it has no root in F_p
std::vector<int> find_modulus(int p, int r) {
  if (r == 1) return {0, 1};
  int count = 1;
  for (int i = 0; i < r; ++i) count *= p;
  for (int code = 0; code < count; ++code) {
    std::vector<int> f = digits(code, p, r);
    f.push_back(1);
    bool has_root = false;
    for (int x = 0; x < p && !has_root; ++x) {
      long long v = 0;
      for (int i = r; i >= 0; --i) v = (v * x + f[i]) % p;
      has_root = (v == 0);
    }
    if (!has_root) return f;
  }
  throw Error("BadCoefficients", "no irreducible polynomial found");
}

}  // namespace

GaloisField::GaloisField(int p, int r) : p_(p), r_(r) {
  if (!is_prime(p)) throw Error("UnsupportedType", "characteristic must be prime");
  if (r < 1 || r > 3) throw Error("UnsupportedType", "field degree must be 1..3");
  q_ = 1;
  for (int i = 0; i < r; ++i) q_ *= p;
  if (q_ > 1024) throw Error("InfeasibleDimension", "field too large");
  modulus_ = find_modulus(p, r);

  add_.resize(q_ * q_);
  mul_.resize(q_ * q_);
  neg_.resize(q_);
  inv_.assign(q_, 0);
  std::vector<std::vector<int>> dig(q_);
  for (int a = 0; a < q_; ++a) dig[a] = digits(a, p, r);
  for (int a = 0; a < q_; ++a) {
    std::vector<int> n(r);
    for (int i = 0; i < r; ++i) n[i] = (p - dig[a][i]) % p;
    neg_[a] = static_cast<elem>(undigits(n, p));
    for (int b = 0; b < q_; ++b) {
      std::vector<int> s(r);
      for (int i = 0; i < r; ++i) s[i] = (dig[a][i] + dig[b][i]) % p;
      add_[a * q_ + b] = static_cast<elem>(undigits(s, p));
      std::vector<int> prod(2 * r - 1, 0);
      for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) prod[i + j] = (prod[i + j] + dig[a][i] * dig[b][j]) % p;
      for (int k = 2 * r - 2; k >= r; --k) {
        int c = prod[k];
        if (!c) continue;
        for (int i = 0; i <= r; ++i)
          prod[k - r + i] = ((prod[k - r + i] - c * modulus_[i]) % p + p) % p;
      }
      prod.resize(r);
      mul_[a * q_ + b] = static_cast<elem>(undigits(prod, p));
    }
  }
  for (int a = 1; a < q_; ++a)
    for (int b = 1; b < q_; ++b)
      if (mul_[a * q_ + b] == 1) {
        inv_[a] = static_cast<elem>(b);
        break;
      }
}

const GaloisField& GaloisField::get(int p, int degree) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::unique_ptr<GaloisField>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{p, degree}];
  if (!slot) slot.reset(new GaloisField(p, degree));
  return *slot;
}

GaloisField::elem GaloisField::inv(elem a) const {
  if (a == 0) throw Error("SingularInput", "division by zero in F_q");
  return inv_[a];
}

GaloisField::elem GaloisField::pow(elem a, long long e) const {
  if (e < 0) {
    a = inv(a);
    e = -e;
  }
  elem r = 1;
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

GaloisField::elem GaloisField::from_int(long long v) const {
  long long m = v % p_;
  if (m < 0) m += p_;
  return static_cast<elem>(m);
}

std::string GaloisField::to_string(elem a) const {
  if (r_ == 1) return std::to_string(a);
  std::vector<int> d = digits(a, p_, r_);
  std::string s;
  for (int i = r_ - 1; i >= 0; --i) {
    if (!d[i]) continue;
    if (!s.empty()) s += "+";
    if (i == 0 || d[i] != 1) s += std::to_string(d[i]);
    if (i >= 1) s += "g";
    if (i >= 2) s += "^" + std::to_string(i);
  }
  return s.empty() ? "0" : s;
}

}  // namespace vwb
