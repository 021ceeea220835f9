#pragma once

#include <optional>
#include <vector>

#include "vwb/inducemod.hpp"

namespace vwb {

// Roots killing the generator of a cyclic PBW module (its twisted n^+).
template <class Mat>
std::vector<int> generator_killers(const GModule<Mat>& M) {
  std::vector<int> out;
  int nr = M.S->R.num_roots();
  for (int a = 0; a < nr; ++a) {
    if (M.act[a].rows == 0) continue;
    bool in_psi = false;
    for (int b : M.psi) in_psi = in_psi || b == a;
    for (int b : M.inner_psi) in_psi = in_psi || b == a;
    if (!in_psi) out.push_back(a);
  }
  return out;
}

// Basis (columns) of {v ∈ N of key k : x_u v = 0 for u in kill}.
KMatrix hw_vectors(const KModule& N, const Key& k, const std::vector<int>& kill);
// Saturated A-basis of the same space over A.
std::vector<std::vector<Poly>> hw_lattice(const AModule& N, const Key& k, const std::vector<int>& kill);

// Hom from a cyclic PBW module by reciprocity.
std::vector<KMatrix> hom_from_cyclic(const KModule& src, const KModule& N);
std::vector<PolyMatrix> hom_from_cyclic(const AModule& src, const AModule& N);

// Grade-preserving intertwiners between arbitrary modules over k (basis).
std::vector<KMatrix> hom_space(const KModule& M, const KModule& N);

// rank Hom_A(Ẑ^w_A(λ^w), Ẑ_A(μ))
int twisted_hom_rank(const SettingPtr& S, const Weight& lambda, const Weight& mu, const WeylElement& w);
int hom_rank_A(const SettingPtr& S, const Weight& lambda, const Weight& mu);

// Isomorphism Ẑ(μ) -> τ(Ẑ^{w^I}(μ^{w^I})^*) from the (rank one) hom lattice;
// nullopt when its generator is not invertible.
std::optional<KMatrix> tau_duality_witness(const SettingPtr& S, const Weight& mu);
std::optional<PolyMatrix> tau_duality_witness_A(const SettingPtr& S, const Weight& mu);

// Intertwiner chain Ẑ^1 -> ... -> Ẑ^{N+1} along the reduced word of w^I.
struct ChainData {
  SettingPtr S;
  Weight lambda;
  std::vector<int> word;            // reduced expression of w^I used
  std::vector<WeylElement> w;       // w_1 ... w_{N+1}
  std::vector<int> beta;            // β_i = w_i α_{s_i}
  std::vector<AModule> Z;           // Z[i] = Ẑ^{w_{i+1}}_A(λ^{w_{i+1}}), i = 0..N
  std::vector<PolyMatrix> phi;      // phi[i]: Z[i] -> Z[i+1]
  std::vector<PolyMatrix> phip;     // phip[i]: Z[i+1] -> Z[i]
  PolyMatrix varpi;                 // c' = phi_N ∘ ... ∘ phi_1 : Z[0] -> Z[N]
  PolyMatrix varpip;                // c  = phi'_1 ∘ ... ∘ phi'_N : Z[N] -> Z[0]
  int N = 0;
};
ChainData build_chain(const SettingPtr& S, const Weight& lambda);
// same along another reduced expression of w^I
ChainData build_chain(const SettingPtr& S, const Weight& lambda, const std::vector<int>& word);
// all reduced expressions of w
std::vector<std::vector<int>> reduced_words(const RootSystem& R, const WeylElement& w);

// Throws FormulaMismatch unless every column of phi_i, phi'_i equals the closed form.
void closed_form_check(const ChainData& C);

// If X = u t^e id with u a unit of A, returns e; otherwise throws NotScalar.
int scalar_exponent(const PolyMatrix& X);
// Composite exponent of ϖ'∘ϖ (checked equal to that of ϖ∘ϖ').
int composite_exponent(const ChainData& C);
// exponents δ_i of φ_i∘φ'_i (checked equal for φ'_i∘φ_i)
std::vector<int> step_exponents(const ChainData& C);

}  // namespace vwb
