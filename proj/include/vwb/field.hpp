#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace vwb {

// Finite field F_q, q = p^r, table driven. Elements are integers in [0, q)
// read as base-p digit strings (digit i = coefficient of g^i).
class GaloisField {
 public:
  using elem = std::uint16_t;

  // Cached immutable instance; degree in [1, 3].
  static const GaloisField& get(int p, int degree = 1);

  int characteristic() const { return p_; }
  int degree() const { return r_; }
  int order() const { return q_; }

  elem add(elem a, elem b) const { return add_[a * q_ + b]; }
  elem mul(elem a, elem b) const { return mul_[a * q_ + b]; }
  elem neg(elem a) const { return neg_[a]; }
  elem sub(elem a, elem b) const { return add_[a * q_ + neg_[b]]; }
  elem inv(elem a) const;
  elem div(elem a, elem b) const { return mul(a, inv(b)); }
  elem pow(elem a, long long e) const;
  elem from_int(long long v) const;
  // Defining polynomial coefficients, low degree first (monic, length r+1).
  const std::vector<int>& modulus() const { return modulus_; }
  std::string to_string(elem a) const;

 private:
  GaloisField(int p, int r);
  int p_, r_, q_;
  std::vector<int> modulus_;
  std::vector<elem> add_, mul_, neg_, inv_;
};

using FieldRef = const GaloisField*;

bool is_prime(int n);

}  // namespace vwb
