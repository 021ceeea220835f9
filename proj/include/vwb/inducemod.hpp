#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "vwb/chevalley.hpp"
#include "vwb/linalg.hpp"
#include "vwb/rootdata.hpp"

namespace vwb {

// Graded component label: class of the weight in X/ZI together with dλ (= weight mod p).
struct Key {
  Weight grade;
  Weight residue;
  auto operator<=>(const Key& o) const = default;
  bool operator==(const Key& o) const = default;
  std::string str() const;
};

// Everything fixed by (type, p, I): root data, Chevalley basis, χ, τ, the field
// and the π-coefficients c_i (π(h_i) = c_i t).
class Setting {
 public:
  static std::shared_ptr<const Setting> make(const std::string& type, int p, const std::vector<int>& I);
  // explicit coefficients over F_p; BadCoefficients when the two conditions fail
  static std::shared_ptr<const Setting> make(const std::string& type, int p, const std::vector<int>& I,
                                             const std::vector<long long>& c);

  RootSystem R;
  LeviDatum D;
  ChevalleyBasis cb;
  PChar chi;
  TauMap tau;
  Linkage L;
  int p;
  FieldRef f;
  std::vector<elem> c;
  std::size_t dim_cap = 4096;

  // c_α for the coroot of α
  elem c_root(int a) const;
  Key key(const Weight& w) const;
  // scalar of h_i on a weight-wt vector; over A this is c_i t + wt_i
  Poly h_value(int i, const Weight& wt, bool over_A) const;
  elem chi_value(int u) const { return f->from_int(chi.on(u)); }

  Setting(RootSystem R0, LeviDatum D0, int p0, FieldRef f0, std::vector<elem> c0);
};
using SettingPtr = std::shared_ptr<const Setting>;

// Graded module given by generator matrices. act[u] is indexed by Chevalley
// basis index; an empty matrix means the generator is not part of the
// ambient algebra (Levi modules only see g_I).
template <class Mat>
struct GModule {
  SettingPtr S;
  std::string name;
  std::vector<Weight> weights;  // representative weight of each basis vector
  std::vector<Mat> act;
  // PBW data for induced modules: basis index = mono * dim_M + m, mono in
  // mixed radix over psi (first entry least significant), divided powers.
  std::vector<int> psi;
  std::size_t dim_M = 0;
  // torus projectives: the inducing module is itself PBW over inner_psi
  // (mixed radix, first entry least significant) applied to one vector
  std::vector<int> inner_psi;
  bool over_A = false;

  std::size_t dim() const { return weights.size(); }
  bool defined(int u) const { return act[u].rows != 0 || dim() == 0; }
  Key key(std::size_t i) const { return S->key(weights[i]); }
  std::vector<int> exponents(std::size_t i) const;
};
using AModule = GModule<PolyMatrix>;
using KModule = GModule<KMatrix>;

// Data of the inducing module for U(S).
struct InducingData {
  std::vector<Weight> weights;
  std::map<int, PolyMatrix> action;  // root index in S; missing roots act by 0
};

// U ⊗_{U(S)} M where S = h ⊕ (roots in s_roots), Psi = psi_roots is closed,
// and S ∪ Psi ∪ h is the ambient algebra. twist fixes the PBW order of Psi:
// increasing -ht(twist^{-1}ψ), then root order.
AModule induce(const SettingPtr& S, const std::vector<int>& s_roots, const std::vector<int>& psi_roots,
               const WeylElement& twist, const InducingData& M, bool over_A, const std::string& name);

AModule induce_verma_A(const SettingPtr& S, const Weight& lambda, const WeylElement& w);
KModule induce_verma(const SettingPtr& S, const Weight& lambda, const WeylElement& w);
// baby Verma of g_I (Levi ambient)
AModule levi_verma(const SettingPtr& S, const Weight& lambda, bool over_A);
// U ⊗ over p = g_I + n^+ (side P) or p^- = g_I + n^- (side Pprime) of a g_I-module
enum class ParabolicSide { P, Pprime };
AModule induce_from_parabolic(const AModule& M, ParabolicSide side);
// U ⊗_{U(h)} A_ν, built in two stages through b^+
AModule torus_projective_A(const SettingPtr& S, const Weight& nu);
KModule torus_projective(const SettingPtr& S, const Weight& nu);

KModule specialize(const AModule& M);
AModule lift_constant(const KModule& M);

using Character = std::map<Key, int>;
template <class Mat>
Character character(const GModule<Mat>& M) {
  Character ch;
  for (std::size_t i = 0; i < M.dim(); ++i) ch[M.key(i)] += 1;
  return ch;
}

// (u.f)(m) = f(-τ^{-1}(u).m) on the dual basis
KModule tau_dual(const KModule& M);
AModule tau_dual(const AModule& M);

// Problems found by the invariant audit (empty = all good): bracket law,
// p-th powers (over k), grade shift, and the form of the h-action.
std::vector<std::string> audit_module(const KModule& M);
std::vector<std::string> audit_module(const AModule& M);

// Module map from a cyclic PBW module (dim_M = 1 or a torus projective,
// generator = basis vector 0) sending the generator to g: column of mono Y is Y·g.
KMatrix map_from_generator(const KModule& source, const KModule& target, const std::vector<elem>& g);
PolyMatrix map_from_generator(const AModule& source, const AModule& target, const std::vector<Poly>& g);

// Does X intertwine the actions (X ρ_M(u) = ρ_N(u) X for all defined u)?
bool is_module_map(const KModule& M, const KModule& N, const KMatrix& X);
bool is_module_map(const AModule& M, const AModule& N, const PolyMatrix& X);

// Submodule spanned by the columns of B (each column supported on one key),
// and the quotient by it on the complementary standard basis vectors.
// Throws SingularInput if the span is not stable.
KModule submodule(const KModule& M, const KMatrix& B);
KModule quotient(const KModule& M, const KMatrix& B);
// Is span(B) stable under every defined generator?
bool is_stable(const KModule& M, const KMatrix& B);

// basis vector index of a given PBW exponent tuple (dim_M = 1 modules)
std::size_t pbw_index(const KModule& M, const std::vector<int>& exps);
std::size_t pbw_index(const AModule& M, const std::vector<int>& exps);

}  // namespace vwb
