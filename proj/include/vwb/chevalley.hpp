#pragma once

#include <vector>

#include "vwb/linalg.hpp"
#include "vwb/rootdata.hpp"

namespace vwb {

// Basis of g: indices 0..|R|-1 are the root vectors x_α (root order of the
// RootSystem), then h_1..h_rank (simple coroots).
class ChevalleyBasis {
 public:
  static ChevalleyBasis build(const RootSystem& R);

  const RootSystem& roots() const { return R_; }
  int dim() const { return nroots_ + rank_; }
  int num_roots() const { return nroots_; }
  int h_index(int i) const { return nroots_ + i; }
  bool is_root_index(int u) const { return u < nroots_; }

  // structure constants: [b_u, b_v] = sum_w c[w] b_w
  const std::vector<int>& bracket(int u, int v) const { return table_[u * dim() + v]; }
  // N_{α,β} ([x_α, x_β] = N x_{α+β}); 0 when α+β is not a root
  int N(int a, int b) const;
  // coefficients of [x_α, x_{-α}] on the h_i
  const std::vector<int>& coroot(int a) const { return R_.coroot_coords(a); }

  // defining matrix realization (integer matrices)
  const IntMatrix& matrix(int u) const { return mats_[u]; }
  // adjoint action matrix of a basis element over the integers (dim x dim)
  IntMatrix ad(int u) const;

 private:
  RootSystem R_;
  int nroots_ = 0, rank_ = 0;
  std::vector<std::vector<int>> table_;
  std::vector<IntMatrix> mats_;
};

// χ values on the basis: χ(x_{-α_i}) = 1 for i ∈ I, zero elsewhere.
struct PChar {
  std::vector<int> values;
  int on(int u) const { return values[u]; }
  bool vanishes_on(const std::vector<int>& basis_indices) const;
};
PChar standard_levi_pchar(const ChevalleyBasis& cb, const LeviDatum& D);

// x^{[p]} for x = Σ c_u b_u with coefficients in F_q, via the adjoint representation.
std::vector<elem> p_power_map(const ChevalleyBasis& cb, FieldRef f, const std::vector<elem>& x);
KMatrix ad_matrix(const ChevalleyBasis& cb, FieldRef f, const std::vector<elem>& x);

// τ(x_α) = ε_α x_{-w_I α}, τ(h_i) = h_{-w_I α_i}; signs fixed by brute force
// so that τ is an automorphism with τ² = 1 and χ∘τ = -χ.
struct TauMap {
  std::vector<int> image;  // basis index of τ(b_u) for root vectors; unused for h
  std::vector<int> sign;   // ε for root vectors
  IntMatrix h_image;       // τ(h_i) = Σ_j h_image[i][j] h_j
  // τ applied to a basis element as an integer vector over the basis
  std::vector<int> apply(const ChevalleyBasis& cb, int u) const;
};
TauMap tau_map(const ChevalleyBasis& cb, const LeviDatum& D, const PChar& chi);

struct BorelDescriptor {
  WeylElement w;
  std::vector<int> negative_part;  // w(R^-), in root order
  std::vector<int> positive_part;  // w(R^+)
};
BorelDescriptor borel_descriptor(const RootSystem& R, const WeylElement& w);

}  // namespace vwb
