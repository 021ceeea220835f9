#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vwb/homspace.hpp"

namespace vwb {

// Smith form of a key-preserving map X: M -> N over A, computed block by block.
// v columns (in M) satisfy X v_i = t^{a_i} v'_i with v'_i columns in N.
struct KeySmith {
  std::vector<int> exponents;     // a_i, aligned with the columns below
  std::vector<Key> keys;          // key of each adapted vector
  KMatrix source_basis;           // v̄_i (mod t), dim M x n
  KMatrix target_basis;           // v̄'_i (mod t), dim N x n
};
KeySmith key_smith(const AModule& M, const AModule& N, const PolyMatrix& X, int prec);

struct Layer {
  int j = 0;
  std::size_t dim = 0;
  Character ch;
  KMatrix basis;  // columns, over k
};

struct JantzenReport {
  Weight lambda;
  std::vector<int> levi;
  int p = 0;
  int N = 0;  // N(I,λ)
  std::vector<int> exponents;        // of c = ϖ', sorted
  std::vector<int> exponents_prime;  // of c' = ϖ, sorted
  std::vector<Layer> twisted_layers;  // Ẑ^{w^I}(λ^{w^I})^{(j)}, j = 0..
  std::vector<Layer> layers;          // Ẑ(λ)^{(j)}, j = 0..
  Character full;                     // ch Ẑ(λ)
  bool layers_are_submodules = false;
  int length = 0;  // largest j with Ẑ(λ)^{(j)} != 0
  std::optional<bool> duality, sum_formula, ker_coker;
  std::string failure;  // first failing identity, if any
};

// Layers of both Jantzen filtrations from the pinned chain composites.
JantzenReport jantzen_filtration(const ChainData& C);
JantzenReport jantzen_filtration(const SettingPtr& S, const Weight& lambda);

// ch Ẑ^{w^I,(j)} + ch Ẑ^{(N-j+1)} = ch Ẑ for j = 1..N; returns first failing j or 0.
int duality_check(const JantzenReport& r);

struct SumFormula {
  Character lhs;                  // Σ_{j>=1} ch Ẑ(λ)^{(j)}
  Character rhs;                  // Σ_i ch C̄_i
  std::vector<Character> cokernels;
  bool equal = false;
  bool ker_coker_iso = false;     // explicit isomorphism found for every i
  bool torsion_ok = false;        // t C_i = 0 over A
  std::string failure;
};
SumFormula verma_sum_formula(const ChainData& C, const JantzenReport& r);

// Full report with all three verdicts filled in.
JantzenReport jantzen_report(const SettingPtr& S, const Weight& lambda);

// Looks for an invertible element of Hom(M, N) (span of hom_space); deterministic.
std::optional<KMatrix> find_isomorphism(const KModule& M, const KModule& N, unsigned seed = 1);

}  // namespace vwb
