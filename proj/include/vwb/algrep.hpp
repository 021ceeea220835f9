#pragma once

#include <map>
#include <memory>
#include <random>
#include <string>
#include <vector>

#include "vwb/homspace.hpp"

namespace vwb {

// Closure of span(seeds) under all defined root generators. Columns are
// key-homogeneous when the seeds are.
KMatrix spin(const KModule& M, const std::vector<std::vector<elem>>& seeds);
// positive simple roots that act on M (R_I simple roots for Levi modules)
std::vector<int> raising_roots(const KModule& M);
std::vector<std::size_t> key_indices(const KModule& M, const Key& k);

struct SimpleFactor {
  Weight weight;  // weight of a highest weight vector
  Weight label;   // linkage label of weight
  std::size_t dim = 0;
};

// A simple submodule (columns, key-homogeneous). rng only fixes the search order.
KMatrix find_simple_submodule(const KModule& M, std::mt19937& rng, Weight* hw = nullptr);
// Factors bottom to top (socle series order of the greedy search).
std::vector<SimpleFactor> composition_series(const KModule& M, unsigned seed);
int multiplicity(const std::vector<SimpleFactor>& fs, const Weight& label);

struct DecompositionReport {
  std::string module;
  unsigned seed = 0;
  std::vector<std::pair<Weight, int>> summands;  // (head label, count); projectives only
  std::vector<std::pair<Weight, int>> factors;   // (label, multiplicity)
  std::vector<std::size_t> factor_dims;          // per factor, series order
  bool dims_add_up = false;
};
DecompositionReport composition_factors(const KModule& M, unsigned seed);

// L̂(λ) = Ẑ(λ)/rad, the radical read off from the simple socle of the τ-dual.
KModule simple_head(const SettingPtr& S, const Weight& lambda);
// Label of the simple socle of Ẑ(λ).
Weight verma_socle(const SettingPtr& S, const Weight& lambda, unsigned seed = 1);

KModule direct_sum(const std::vector<KModule>& mods);

// End(P_ν) ≅ (P_ν)_{key ν} with g∗h := image of h under the map v0 ↦ g.
struct TorusEnd {
  std::vector<std::size_t> J;  // indices of the key-ν block of P
  std::vector<std::vector<std::vector<elem>>> T;  // T[b][c] = mono_b · e_c in J coordinates
  FieldRef f = nullptr;
  std::size_t d() const { return J.size(); }
  std::vector<elem> mul(const std::vector<elem>& g, const std::vector<elem>& h) const;
  KMatrix left(const std::vector<elem>& g) const;
  std::vector<elem> unit() const;
};
TorusEnd torus_end(const KModule& P);

struct ProjectiveCover {
  SettingPtr S;
  Weight nu;
  Weight label;
  KModule P;                 // torus projective at ν
  std::vector<elem> idem;    // e(v0) in J coordinates
  KMatrix E;                 // idempotent endomorphism of P
  std::vector<std::size_t> pivots;  // columns of E spanning Q
  KModule Q;
  std::vector<std::pair<Weight, int>> summands;  // head labels of a full splitting of P
};
ProjectiveCover projective_cover(const SettingPtr& S, const Weight& nu, unsigned seed = 1);

// Lift of the splitting idempotent to A/t^M.
struct LiftedCover {
  AModule PA;
  std::vector<Series> idem;  // J coordinates
  SeriesMatrix E;
  int M = 16;
};
LiftedCover lift_projective(const ProjectiveCover& Q, int M = 16);
// E·P_A on the pivot columns; entries are truncated mod t^M
AModule lifted_module(const ProjectiveCover& Q, const LiftedCover& L);

struct VermaMultiplicity {
  Weight mu;
  int hom_rank = 0;    // rank of Hom_A(Q̂_A, Ẑ_A(μ))
  bool hom_saturated = true;
  int filtration = 0;  // factors ≅ Ẑ(μ) in an extracted Ẑ-filtration
  int predicted = 0;   // |W_I·μ̄|·[Ẑ(μ):L̂(λ)]
  int verma_mult = 0;  // [Ẑ(μ):L̂(λ)]
};
std::vector<VermaMultiplicity> verma_multiplicities(const ProjectiveCover& Q, const LiftedCover& L,
                                                    const std::vector<Weight>& mus, unsigned seed = 1);

struct FiltrationResult {
  bool ok = false;
  std::vector<Weight> weights;  // Ẑ(μ) factors in extraction order (one per Levi factor)
  std::vector<Weight> labels;
  std::vector<Weight> grades;   // grade of each extraction step
  std::string reason;
};
// Greedy Ẑ-filtration (twisted: Ẑ^{w^I}) by peeling extreme grades. q_version
// asks for Ẑ_Q factors, i.e. projective Levi pieces.
FiltrationResult z_filtration_extract(const KModule& M, bool twisted, bool q_version = false, unsigned seed = 1);

// restriction of M to g_I on the basis vectors J (must be a union of grade blocks)
KModule levi_piece(const KModule& M, const std::vector<std::size_t>& J);

struct ProbeResult {
  bool obstruction = false;
  std::vector<elem> witness;  // coefficients over the Chevalley basis
  std::string witness_desc;
  int probes = 0;
  int rejected = 0;  // random samples failing x^[p] = 0
};
ProbeResult rank_variety_probe(const KModule& M, int trials, unsigned seed);

struct Presentation {
  KModule P;                    // direct sum of torus projectives
  std::vector<Weight> tops;     // their ν
  KMatrix pi;                   // P -> M
  KMatrix omega;                // kernel basis, key-homogeneous columns
};
Presentation presentation(const KModule& M);
int ext1(const KModule& M, const KModule& N);
// pushout of 0 -> Ω -> P -> top along a random f: Ω -> sub
KModule random_extension(const KModule& top, const KModule& sub, unsigned seed);

// Per-setting caches of heads, covers and Verma factors.
class RepCache {
 public:
  explicit RepCache(SettingPtr S, unsigned seed = 1) : S_(std::move(S)), seed_(seed) {}
  const SettingPtr& setting() const { return S_; }
  const KModule& head(const Weight& mu);
  const ProjectiveCover& cover(const Weight& mu);
  const std::vector<SimpleFactor>& verma_factors(const Weight& mu);

 private:
  SettingPtr S_;
  unsigned seed_;
  std::map<Weight, KModule> heads_;
  std::map<Weight, std::unique_ptr<ProjectiveCover>> covers_;
  std::map<Weight, std::vector<SimpleFactor>> vf_;
};

// dim Hom(M, L̂(μ)) for each factor label of M
std::map<Weight, int> head_multiplicities(const KModule& M, RepCache& cache, unsigned seed = 1);
// dim M = Σ head mult · dim Q̂
bool is_projective_exact(const KModule& M, RepCache& cache, unsigned seed = 1);

}  // namespace vwb
