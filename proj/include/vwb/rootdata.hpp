#pragma once

#include <compare>
#include <initializer_list>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace vwb {

// Integer vector in fundamental-weight coordinates.
struct Weight {
  std::vector<int> c;

  Weight() = default;
  explicit Weight(std::vector<int> v) : c(std::move(v)) {}
  Weight(std::initializer_list<int> v) : c(v) {}
  static Weight zero(int rank) { return Weight(std::vector<int>(rank, 0)); }

  std::size_t size() const { return c.size(); }
  int operator[](std::size_t i) const { return c[i]; }
  int& operator[](std::size_t i) { return c[i]; }
  Weight operator+(const Weight& o) const;
  Weight operator-(const Weight& o) const;
  Weight operator-() const;
  Weight operator*(int s) const;
  Weight& operator+=(const Weight& o) { return *this = *this + o; }
  Weight& operator-=(const Weight& o) { return *this = *this - o; }
  auto operator<=>(const Weight& o) const = default;
  bool operator==(const Weight& o) const = default;
  // coordinatewise reduction into [0, p)
  Weight mod(int p) const;
  std::string str() const;
};

using IntMatrix = std::vector<std::vector<int>>;

Weight act(const IntMatrix& m, const Weight& v);
IntMatrix matmul(const IntMatrix& a, const IntMatrix& b);
IntMatrix identity_matrix(int n);

// Sublattice of Z^n with canonical coset representatives (Hermite form).
class Lattice {
 public:
  Lattice() = default;
  Lattice(int n, const std::vector<Weight>& generators);
  Weight reduce(Weight v) const;
  bool contains(const Weight& v) const;
  const std::vector<Weight>& hnf() const { return rows_; }

 private:
  int n_ = 0;
  std::vector<Weight> rows_;
  std::vector<int> piv_;
};

struct WeylElement {
  std::vector<int> word;  // simple reflection indices, leftmost first
  IntMatrix matrix;       // action on weight coordinates
  std::size_t length() const { return word.size(); }
};

enum class RootType { A1, A1xA1, A2, B2 };

class RootSystem {
 public:
  static RootSystem build(const std::string& label);

  const std::string& label() const { return label_; }
  RootType type() const { return type_; }
  int rank() const { return rank_; }
  const IntMatrix& cartan() const { return cartan_; }
  const Weight& rho() const { return rho_; }

  // All roots in the fixed order (height, then lexicographic root coordinates).
  int num_roots() const { return static_cast<int>(roots_.size()); }
  const Weight& root(int a) const { return roots_[a]; }
  const std::vector<int>& root_coords(int a) const { return rcoords_[a]; }
  const std::vector<int>& coroot_coords(int a) const { return ccoords_[a]; }
  int height(int a) const;
  bool is_positive(int a) const { return height(a) > 0; }
  int negative(int a) const { return neg_[a]; }
  int simple(int i) const { return simple_[i]; }
  const std::vector<int>& positive_roots() const { return positive_; }
  std::optional<int> find_root(const Weight& w) const;
  // <λ, α∨>
  int pairing(const Weight& lambda, int a) const;
  bool is_long(int a) const;

  // simple root coordinates of a weight in ZR (nullopt if not in the root lattice)
  std::optional<std::vector<int>> to_root_coords(const Weight& w) const;
  Weight from_root_coords(const std::vector<int>& m) const;

  // Weyl group
  const std::vector<WeylElement>& weyl_group() const { return weyl_; }
  const WeylElement& longest() const { return weyl_[w0_]; }
  WeylElement reflection(int i) const;
  WeylElement from_word(const std::vector<int>& word) const;
  WeylElement compose(const WeylElement& a, const WeylElement& b) const;
  WeylElement inverse(const WeylElement& a) const;
  // root index of w(α_a)
  int act_on_root(const WeylElement& w, int a) const;
  Weight dot(const WeylElement& w, const Weight& lambda) const;
  // reflection s_α (undotted) for a root index
  Weight reflect(int a, const Weight& mu) const;

 private:
  std::string label_;
  RootType type_{};
  int rank_ = 0;
  IntMatrix cartan_;
  Weight rho_;
  std::vector<Weight> roots_;
  std::vector<std::vector<int>> rcoords_, ccoords_;
  std::vector<int> neg_, simple_, positive_;
  std::map<Weight, int> index_;
  std::vector<WeylElement> weyl_;
  std::size_t w0_ = 0;
  int det_ = 1;
};

bool good_prime_check(const std::string& type_label, int p);

// affine reflection s_{α,rp}; dotted applies it in the ρ-shifted action
Weight affine_reflection(const RootSystem& R, int a, int r, int p, const Weight& mu, bool dotted);
Weight twist_weight(const RootSystem& R, const Weight& lambda, const WeylElement& w, int p);

struct LeviDatum {
  std::vector<int> I;         // 0-based simple indices
  std::vector<int> RI;        // all roots in the span of I
  std::vector<int> RI_plus;   // positive ones
  std::vector<WeylElement> WI;
  WeylElement wI, w0, wsup;   // wsup = w^I = w_I w_0
  std::vector<int> reduced_expr;   // s_1 ... s_N (simple indices)
  std::vector<WeylElement> chain;  // w_1 ... w_{N+1}
  std::vector<int> beta;           // root indices β_1 ... β_N
  int N = 0;
  bool in_levi_roots(int a) const;
  bool in_I(int i) const;
};

LeviDatum levi_datum(const RootSystem& R, std::vector<int> I);
bool in_WI_min(const RootSystem& R, const LeviDatum& D, const WeylElement& w);
int n_of_lambda(const RootSystem& R, const LeviDatum& D, const Weight& lambda, int p);
// {α ∈ R^+ : <λ+ρ,α∨> ≢ 0 mod p}
std::vector<int> nonsingular_roots(const RootSystem& R, const Weight& lambda, int p);

// Linkage in the graded sense: W_{I,p} = W_I ⋉ pZR_I acting by the dot action.
class Linkage {
 public:
  Linkage(const RootSystem& R, const LeviDatum& D, int p);
  // W_{I,p}·λ ∩ box, by fixed-point closure under the dotted affine reflections
  std::set<Weight> orbit_in_box(const Weight& lambda, int box) const;
  // canonical representative of W_{I,p}·λ
  Weight label(const Weight& lambda) const;
  bool linked(const Weight& a, const Weight& b) const { return label(a) == label(b); }
  // canonical representative of λ + ZI
  Weight grade(const Weight& lambda) const { return zi_.reduce(lambda); }
  // μ+ZI <= λ+ZI
  bool grade_leq(const Weight& mu, const Weight& lambda) const;
  // |W_I · (μ mod p)|
  int residue_orbit_size(const Weight& mu) const;
  int p() const { return p_; }

 private:
  RootSystem R_;
  LeviDatum D_;
  int p_;
  Lattice zi_, pzri_;
};

}  // namespace vwb
