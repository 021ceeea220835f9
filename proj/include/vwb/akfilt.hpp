#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "vwb/algrep.hpp"
#include "vwb/jantzenkit.hpp"

namespace vwb {

using SVec = std::vector<Series>;

// A projective of C together with its A/t^M form E·P_A (E = id for torus projectives).
struct ProjectiveLift {
  SettingPtr S;
  std::string name;
  Weight nu;
  bool torus = false;
  KModule Qk;
  AModule PA;
  SeriesMatrix E;
  SVec gE;  // E(v0)
  int M = 16;
  std::shared_ptr<const ProjectiveCover> cover;  // for re-lifting at higher precision
};
ProjectiveLift torus_lift(const SettingPtr& S, const Weight& nu, int M = 16);
ProjectiveLift cover_lift(const ProjectiveCover& Q, int M = 16);

// Hom_A(Z[i], Q_A) for a cyclic module Z[i]: images f of its generator.
std::vector<SVec> hom_into_lift(const ProjectiveLift& Q, const AModule& Z);

struct FESpaces {
  std::vector<SVec> F;   // Hom(Ẑ^{w^I}_A(λ^{w^I}), Q_A), images of the generator (in P_A)
  std::vector<SVec> E;   // Hom(Q_A, Ẑ_A(λ)), ψ determined by ψ(v0) = y (in Ẑ_A(λ))
  std::vector<SVec> Ft;  // Hom(Ẑ_A(λ), Q_A)
  int dim_F_k = 0, dim_E_k = 0, dim_Ft_k = 0;
};
FESpaces fe_spaces(const ProjectiveLift& Q, const ChainData& C);

struct AKReport {
  Weight lambda;
  std::string module;
  Weight nu;
  int p = 0;
  std::vector<int> levi;
  int N = 0;  // N(I,λ)
  int M = 0;  // truncation used
  int n_lambda = 0;
  int rank_E = 0, rank_Ft = 0;
  std::vector<int> exponents;   // m_λ(i), sorted
  int degenerate = 0;           // pivots of the pairing that vanish at the top precision
  std::vector<int> layer_dims;  // j = 0..N+1
  bool specialization_ok = false;  // ranks match dimensions over k
  bool cprime_agrees = false;      // layers equal the c'-description at every j
  int det_B = 0;                   // ν_t det of φ ↦ φ∘c'
  std::vector<int> chain_dets;     // ν_t det of each step of the same map
  bool biorthogonal = false;       // E × F̃ pairing has bases with δ t^N
  std::vector<int> bio_exponents;
  std::string failure;
};
// Retries with doubled truncation (up to 128) when a valuation is not visible.
AKReport ak_filtration(const ProjectiveLift& Q, const ChainData& C);

// Per-setting caches for sweeps over (λ, ν).
class AKCache {
 public:
  explicit AKCache(SettingPtr S, unsigned seed = 1, int M = 16) : S_(S), seed_(seed), M_(M), reps_(S, seed) {}
  const SettingPtr& setting() const { return S_; }
  RepCache& reps() { return reps_; }
  const ProjectiveLift& cover(const Weight& nu);
  const ProjectiveLift& torus(const Weight& nu);
  const ChainData& chain(const Weight& lambda);
  const JantzenReport& jantzen(const Weight& lambda);
  // composition factors of each Jantzen layer Ẑ(λ)^{(j)}
  const std::vector<std::vector<SimpleFactor>>& layer_factors(const Weight& lambda);
  const AKReport& report(const ProjectiveLift& Q, const Weight& lambda);

 private:
  SettingPtr S_;
  unsigned seed_;
  int M_;
  RepCache reps_;
  std::map<Weight, ProjectiveLift> covers_, tori_;
  std::map<Weight, ChainData> chains_;
  std::map<Weight, JantzenReport> jantzen_;
  std::map<Weight, std::vector<std::vector<SimpleFactor>>> layers_;
  std::map<std::pair<std::string, Weight>, AKReport> reports_;
};

struct SumFor1 {
  Weight lambda, nu;
  int lhs = 0, rhs = 0;
  bool ok = false;
};
SumFor1 sumfor1_check(AKCache& cache, const Weight& lambda, const Weight& nu);

struct SumFor2 {
  Weight lambda;
  std::string module;
  std::vector<int> lhs, rhs;  // j = 0..N+1
  int failing_j = -1;
  bool ok = false;
};
SumFor2 sumfor2_check(const ProjectiveLift& Q, const ChainData& C, const JantzenReport& J);
// same, reusing the cached report
SumFor2 sumfor2_check(AKCache& cache, const ProjectiveLift& Q, const Weight& lambda);

// Reported, never asserted.
struct BoundaryReport {
  int step0 = 0, stepN = 0;     // dim F_k^{(0)}, dim F_k^{(N)}
  int piece0 = 0, pieceN = 0;   // graded pieces F_k^{(j)}/F_k^{(j+1)} at j = 0, N
  int mult_lambda = 0;          // (Q:Q(λ)) as a summand
  Weight socle;                 // λ' with L(λ') = soc Ẑ(λ)
  int mult_socle = 0;           // (Q:Q(λ'))
  int remark2_rhs = 0;          // experimental closed form
  int remark2_lhs = 0;          // Σ m_λ(i)
};
BoundaryReport boundary_report(const ProjectiveLift& Q, const AKReport& r, AKCache& cache);

}  // namespace vwb
