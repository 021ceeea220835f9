#include "vwb/inducemod.hpp"

#include <algorithm>
#include <tuple>

#include "vwb/errors.hpp"

namespace vwb {

std::string Key::str() const { return grade.str() + "|" + residue.str(); }

Setting::Setting(RootSystem R0, LeviDatum D0, int p0, FieldRef f0, std::vector<elem> c0)
    : R(std::move(R0)),
      D(std::move(D0)),
      cb(ChevalleyBasis::build(R)),
      chi(standard_levi_pchar(cb, D)),
      tau(tau_map(cb, D, chi)),
      L(R, D, p0),
      p(p0),
      f(f0),
      c(std::move(c0)) {}

elem Setting::c_root(int a) const {
  elem s = 0;
  const auto& k = R.coroot_coords(a);
  for (int i = 0; i < R.rank(); ++i) s = f->add(s, f->mul(f->from_int(k[i]), c[i]));
  return s;
}

Key Setting::key(const Weight& w) const { return Key{L.grade(w), w.mod(p)}; }

Poly Setting::h_value(int i, const Weight& wt, bool over_A) const {
  elem d = f->from_int(wt[i]);
  return over_A ? Poly::linear(f, c[i], d) : Poly(f, d);
}

namespace {

void check_prime(const std::string& type, int p) {
  require(is_prime(p), "UnsupportedType", "p = " + std::to_string(p) + " is not prime");
  require(good_prime_check(type, p), "UnsupportedType", "p = " + std::to_string(p) + " is not good for " + type);
}

bool coefficients_ok(const RootSystem& R, const LeviDatum& D, FieldRef f, const std::vector<elem>& c,
                     std::string* why) {
  auto croot = [&](int a) {
    elem s = 0;
    for (int i = 0; i < R.rank(); ++i) s = f->add(s, f->mul(f->from_int(R.coroot_coords(a)[i]), c[i]));
    return s;
  };
  for (int a = 0; a < R.num_roots(); ++a) {
    bool nz = croot(a) != 0;
    if (nz == D.in_levi_roots(a)) {
      if (why) *why = "c_alpha must vanish exactly on R_I (root " + R.root(a).str() + ")";
      return false;
    }
    if (croot(R.act_on_root(D.wI, a)) != croot(a)) {
      if (why) *why = "c is not w_I-invariant";
      return false;
    }
  }
  return true;
}

}  // namespace

std::shared_ptr<const Setting> Setting::make(const std::string& type, int p, const std::vector<int>& I) {
  RootSystem R = RootSystem::build(type);
  check_prime(type, p);
  for (int i : I) require(i >= 0 && i < R.rank(), "UnsupportedType", "Levi index out of range");
  LeviDatum D = levi_datum(R, I);
  int n = R.rank();
  for (int r = 1; r <= 3; ++r) {
    long q = 1;
    for (int k = 0; k < r; ++k) q *= p;
    if (q > 1024) break;
    FieldRef f = &GaloisField::get(p, r);
    std::vector<int> free;
    for (int i = 0; i < n; ++i)
      if (!D.in_I(i)) free.push_back(i);
    std::vector<elem> ones(n, 0);
    for (int i : free) ones[i] = 1;
    if (coefficients_ok(R, D, f, ones, nullptr)) return std::make_shared<const Setting>(R, D, p, f, ones);
    long total = 1;
    for (std::size_t k = 0; k < free.size(); ++k) total *= q;
    for (long code = 0; code < total; ++code) {
      std::vector<elem> c(n, 0);
      long x = code;
      for (int i : free) {
        c[i] = static_cast<elem>(x % q);
        x /= q;
      }
      if (coefficients_ok(R, D, f, c, nullptr)) return std::make_shared<const Setting>(R, D, p, f, c);
    }
  }
  throw Error("BadCoefficients", "no admissible pi-coefficients over F_{p^r}, r <= 3");
}

std::shared_ptr<const Setting> Setting::make(const std::string& type, int p, const std::vector<int>& I,
                                             const std::vector<long long>& cin) {
  RootSystem R = RootSystem::build(type);
  check_prime(type, p);
  LeviDatum D = levi_datum(R, I);
  require(static_cast<int>(cin.size()) == R.rank(), "BadCoefficients", "need one coefficient per simple coroot");
  FieldRef f = &GaloisField::get(p, 1);
  std::vector<elem> c;
  for (long long v : cin) c.push_back(f->from_int(v));
  std::string why;
  require(coefficients_ok(R, D, f, c, &why), "BadCoefficients", why);
  return std::make_shared<const Setting>(R, D, p, f, c);
}

template <class Mat>
std::vector<int> GModule<Mat>::exponents(std::size_t i) const {
  std::vector<int> e(psi.size(), 0);
  std::size_t y = i / std::max<std::size_t>(dim_M, 1);
  for (std::size_t k = 0; k < psi.size(); ++k) {
    e[k] = static_cast<int>(y % S->p);
    y /= S->p;
  }
  return e;
}
template struct GModule<PolyMatrix>;
template struct GModule<KMatrix>;

namespace {

using UVec = std::map<int, elem>;
using MVec = std::map<std::size_t, Poly>;

class Engine {
 public:
  Engine(const Setting& S, const std::vector<int>& s_roots, const std::vector<int>& psi, const InducingData& M,
         bool over_A)
      : S_(S), f_(S.f), p_(S.p), psi_(psi), M_(M), over_A_(over_A) {
    int nr = S.R.num_roots();
    kpos_.assign(nr, -1);
    inS_.assign(nr, 0);
    for (std::size_t k = 0; k < psi.size(); ++k) kpos_[psi[k]] = static_cast<int>(k);
    for (int a : s_roots) inS_[a] = 1;
    n_ = static_cast<int>(psi.size());
    pw_.assign(n_ + 1, 1);
    for (int k = 1; k <= n_; ++k) pw_[k] = pw_[k - 1] * p_;
    dimU_ = pw_[n_];
    dimM_ = M.weights.size();
    require(static_cast<std::size_t>(dimU_) * dimM_ <= S.dim_cap && dimU_ * dimM_ > 0, "InfeasibleDimension",
            "induced module of dimension " + std::to_string(dimU_ * dimM_) + " exceeds the cap");
    exps_.resize(dimU_);
    wtY_.resize(dimU_);
    for (long y = 0; y < dimU_; ++y) {
      std::vector<int> e(n_);
      long x = y;
      Weight w = Weight::zero(S.R.rank());
      for (int k = 0; k < n_; ++k) {
        e[k] = static_cast<int>(x % p_);
        x /= p_;
        w += S.R.root(psi[k]) * e[k];
      }
      exps_[y] = e;
      wtY_[y] = w;
    }
    inv_fact_.assign(p_, 1);
    elem fact = 1;
    for (int j = 1; j < p_; ++j) {
      fact = f_->mul(fact, f_->from_int(j));
      inv_fact_[j] = f_->inv(fact);
    }
  }

  long dimU() const { return dimU_; }
  std::size_t dimM() const { return dimM_; }
  Weight weight(std::size_t gi) const { return wtY_[gi / dimM_] + M_.weights[gi % dimM_]; }

  MVec act_basis(int w, long Y, std::size_t v) {
    int nr = S_.R.num_roots();
    if (w >= nr) {
      MVec r;
      Poly s = S_.h_value(w - nr, wtY_[Y] + M_.weights[v], over_A_);
      if (!s.is_zero()) r[Y * dimM_ + v] = s;
      return r;
    }
    if (kpos_[w] >= 0) {
      MVec r;
      for (const auto& [y2, c] : psi_mult(kpos_[w], Y)) r[y2 * dimM_ + v] = Poly(f_, c);
      return r;
    }
    require(inS_[w], "SingularInput", "generator outside the ambient algebra");
    return act_S(w, Y, v);
  }

 private:
  std::vector<int> bracket_with(const std::vector<int>& z, int y) const {
    int d = S_.cb.dim();
    std::vector<int> out(d, 0);
    for (int u = 0; u < d; ++u)
      if (z[u]) {
        const auto& b = S_.cb.bracket(u, y);
        for (int w = 0; w < d; ++w) out[w] += z[u] * b[w];
      }
    return out;
  }

  int first_factor(long Y) const {
    for (int k = 0; k < n_; ++k)
      if (exps_[Y][k]) return k;
    return -1;
  }

  UVec prepend(int first, int m, const UVec& v) const {
    UVec out;
    for (const auto& [y, c] : v) {
      for (int k = 0; k <= first; ++k)
        require(exps_[y][k] == 0, "SingularInput", "PBW order is not compatible with the bracket");
      out[y + m * pw_[first]] = c;
    }
    return out;
  }

  void add_into(UVec& acc, const UVec& v, elem s) const {
    for (const auto& [y, c] : v) {
      elem x = f_->add(acc[y], f_->mul(s, c));
      if (x)
        acc[y] = x;
      else
        acc.erase(y);
    }
  }

  void add_into(MVec& acc, const MVec& v, elem s) const {
    for (const auto& [i, c] : v) {
      auto it = acc.find(i);
      Poly x = (it == acc.end() ? Poly(f_) : it->second) + c.scaled(s);
      if (x.is_zero()) {
        if (it != acc.end()) acc.erase(it);
      } else {
        acc[i] = x;
      }
    }
  }

  // x_{psi[k]} · Y in U(n_Psi) (with x^p = χ(x)^p)
  UVec psi_mult(int k, long Y) {
    auto key = std::make_pair(k, Y);
    if (auto it = pmemo_.find(key); it != pmemo_.end()) return it->second;
    int first = first_factor(Y);
    UVec res;
    if (first < 0 || k < first) {
      res[Y + pw_[k]] = 1;
    } else if (k == first) {
      int m = exps_[Y][k];
      if (m + 1 < p_) {
        res[Y + pw_[k]] = f_->from_int(m + 1);
      } else {
        // y·y^{(p-1)} = y^p/(p-1)! = -χ(y)^p
        elem x = S_.chi_value(psi_[k]);
        if (x) res[Y - m * pw_[k]] = f_->neg(f_->pow(x, p_));
      }
    } else {
      int m = exps_[Y][first];
      long R = Y - m * pw_[first];
      add_into(res, prepend(first, m, psi_mult(k, R)), 1);
      std::vector<int> z(S_.cb.dim(), 0);
      z[psi_[k]] = 1;
      for (int j = 1; j <= m; ++j) {
        z = bracket_with(z, psi_[first]);
        bool any = false;
        for (int w = 0; w < S_.cb.dim(); ++w)
          if (z[w]) {
            any = true;
            require(w < S_.R.num_roots() && kpos_[w] >= 0, "SingularInput", "Psi is not closed");
            elem coef = f_->mul(f_->from_int(z[w]), inv_fact_[j]);
            add_into(res, prepend(first, m - j, psi_mult(kpos_[w], R)), coef);
          }
        if (!any) break;
      }
    }
    pmemo_[key] = res;
    return res;
  }

  MVec psi_act(int k, const MVec& v) {
    MVec out;
    for (const auto& [gi, c] : v) {
      long Y = static_cast<long>(gi / dimM_);
      std::size_t m = gi % dimM_;
      for (const auto& [y2, d] : psi_mult(k, Y)) {
        MVec one;
        one[y2 * dimM_ + m] = c;
        add_into(out, one, d);
      }
    }
    return out;
  }

  MVec ypow(int k, int m, MVec v) {
    for (int i = 0; i < m; ++i) v = psi_act(k, v);
    if (m > 1)
      for (auto& [gi, c] : v) c = c.scaled(inv_fact_[m]);
    return v;
  }

  // x_u·(Y ⊗ v) for a root u of S
  MVec act_S(int u, long Y, std::size_t v) {
    auto key = std::make_tuple(u, Y, v);
    if (auto it = smemo_.find(key); it != smemo_.end()) return it->second;
    MVec res;
    if (Y == 0) {
      auto it = M_.action.find(u);
      if (it != M_.action.end())
        for (std::size_t v2 = 0; v2 < dimM_; ++v2)
          if (!it->second(v2, v).is_zero()) res[v2] = it->second(v2, v);
    } else {
      int first = first_factor(Y);
      int m = exps_[Y][first];
      long R = Y - m * pw_[first];
      res = ypow(first, m, act_S(u, R, v));
      std::vector<int> z(S_.cb.dim(), 0);
      z[u] = 1;
      for (int j = 1; j <= m; ++j) {
        z = bracket_with(z, psi_[first]);
        bool any = false;
        for (int w = 0; w < S_.cb.dim(); ++w)
          if (z[w]) {
            any = true;
            elem coef = f_->mul(f_->from_int(z[w]), inv_fact_[j]);
            add_into(res, ypow(first, m - j, act_basis(w, R, v)), coef);
          }
        if (!any) break;
      }
    }
    smemo_[key] = res;
    return res;
  }

  const Setting& S_;
  FieldRef f_;
  int p_, n_ = 0;
  std::vector<int> psi_, kpos_;
  std::vector<char> inS_;
  std::vector<long> pw_;
  long dimU_ = 1;
  std::size_t dimM_ = 0;
  std::vector<std::vector<int>> exps_;
  std::vector<Weight> wtY_;
  std::vector<elem> inv_fact_;
  std::map<std::pair<int, long>, UVec> pmemo_;
  std::map<std::tuple<int, long, std::size_t>, MVec> smemo_;
  const InducingData& M_;
  bool over_A_;
};

std::vector<int> negatives(const RootSystem& R, const std::vector<int>& roots) {
  std::vector<int> out;
  for (int a : roots) out.push_back(R.negative(a));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

AModule induce(const SettingPtr& S, const std::vector<int>& s_roots, const std::vector<int>& psi_roots,
               const WeylElement& twist, const InducingData& M, bool over_A, const std::string& name) {
  const RootSystem& R = S->R;
  WeylElement winv = R.inverse(twist);
  std::vector<int> psi = psi_roots;
  auto deg = [&](int a) { return -R.height(R.act_on_root(winv, a)); };
  for (int a : psi) require(deg(a) > 0, "SingularInput", "Psi is not positive for the chosen twist");
  std::sort(psi.begin(), psi.end(), [&](int a, int b) {
    if (deg(a) != deg(b)) return deg(a) < deg(b);
    return a < b;
  });
  Engine E(*S, s_roots, psi, M, over_A);
  std::size_t dim = static_cast<std::size_t>(E.dimU()) * E.dimM();
  AModule out;
  out.S = S;
  out.name = name;
  out.psi = psi;
  out.dim_M = E.dimM();
  out.over_A = over_A;
  for (std::size_t gi = 0; gi < dim; ++gi) out.weights.push_back(E.weight(gi));
  int d = S->cb.dim(), nr = R.num_roots();
  out.act.assign(d, PolyMatrix());
  std::vector<char> ambient(d, 0);
  for (int a : psi) ambient[a] = 1;
  for (int a : s_roots) ambient[a] = 1;
  for (int i = 0; i < R.rank(); ++i) ambient[nr + i] = 1;
  for (int u = 0; u < d; ++u) {
    if (!ambient[u]) continue;
    PolyMatrix m(S->f, dim, dim);
    for (std::size_t gi = 0; gi < dim; ++gi) {
      MVec col = E.act_basis(u, static_cast<long>(gi / E.dimM()), gi % E.dimM());
      for (const auto& [i, c] : col) m(i, gi) = c;
    }
    out.act[u] = std::move(m);
  }
  return out;
}

AModule induce_verma_A(const SettingPtr& S, const Weight& lambda, const WeylElement& w) {
  require(in_WI_min(S->R, S->D, w), "IncompatibleWeights", "twist is not a minimal coset representative");
  BorelDescriptor bd = borel_descriptor(S->R, w);
  require(S->chi.vanishes_on(bd.positive_part), "IncompatibleWeights", "chi does not vanish on the twisted n+");
  InducingData M{{lambda}, {}};
  return induce(S, bd.positive_part, bd.negative_part, w, M, true, "Z^w(" + lambda.str() + ")");
}

KModule induce_verma(const SettingPtr& S, const Weight& lambda, const WeylElement& w) {
  require(in_WI_min(S->R, S->D, w), "IncompatibleWeights", "twist is not a minimal coset representative");
  BorelDescriptor bd = borel_descriptor(S->R, w);
  require(S->chi.vanishes_on(bd.positive_part), "IncompatibleWeights", "chi does not vanish on the twisted n+");
  InducingData M{{lambda}, {}};
  return specialize(induce(S, bd.positive_part, bd.negative_part, w, M, false, "Z^w(" + lambda.str() + ")"));
}

AModule levi_verma(const SettingPtr& S, const Weight& lambda, bool over_A) {
  InducingData M{{lambda}, {}};
  return induce(S, S->D.RI_plus, negatives(S->R, S->D.RI_plus), S->R.weyl_group()[0], M, over_A,
                "Z_I(" + lambda.str() + ")");
}

AModule induce_from_parabolic(const AModule& M, ParabolicSide side) {
  const SettingPtr& S = M.S;
  const RootSystem& R = S->R;
  InducingData data;
  data.weights = M.weights;
  int nr = R.num_roots();
  for (std::size_t j = 0; j < M.dim(); ++j)
    for (int i = 0; i < R.rank(); ++i) {
      const PolyMatrix& h = M.act[nr + i];
      require(h.rows == M.dim(), "IncompatibleWeights", "h does not act");
      for (std::size_t r = 0; r < M.dim(); ++r) {
        Poly expect = r == j ? S->h_value(i, M.weights[j], M.over_A) : Poly(S->f);
        require(h(r, j) == expect, "IncompatibleWeights", "h-weights violate the graded condition");
      }
    }
  std::vector<int> s_roots, psi;
  for (int a = 0; a < nr; ++a) {
    bool levi = S->D.in_levi_roots(a);
    bool pos = R.is_positive(a);
    if (levi) {
      require(M.act[a].rows == M.dim(), "IncompatibleWeights", "M is not a g_I-module");
      data.action[a] = M.act[a];
      s_roots.push_back(a);
    } else if (pos == (side == ParabolicSide::P)) {
      s_roots.push_back(a);
    } else {
      psi.push_back(a);
    }
  }
  const WeylElement& twist = side == ParabolicSide::P ? R.weyl_group()[0] : R.longest();
  std::string name = (side == ParabolicSide::P ? "Z(" : "Z'(") + M.name + ")";
  return induce(S, s_roots, psi, twist, data, M.over_A, name);
}

AModule torus_projective_A(const SettingPtr& S, const Weight& nu) {
  const RootSystem& R = S->R;
  InducingData line{{nu}, {}};
  AModule b = induce(S, {}, R.positive_roots(), R.longest(), line, true, "U(b)v");
  InducingData data;
  data.weights = b.weights;
  for (int a : R.positive_roots()) data.action[a] = b.act[a];
  AModule P = induce(S, R.positive_roots(), negatives(R, R.positive_roots()), R.weyl_group()[0], data, true,
                     "P(" + nu.str() + ")");
  P.inner_psi = b.psi;
  return P;
}

KModule torus_projective(const SettingPtr& S, const Weight& nu) {
  const RootSystem& R = S->R;
  InducingData line{{nu}, {}};
  AModule b = induce(S, {}, R.positive_roots(), R.longest(), line, false, "U(b)v");
  InducingData data;
  data.weights = b.weights;
  for (int a : R.positive_roots()) data.action[a] = b.act[a];
  KModule P = specialize(induce(S, R.positive_roots(), negatives(R, R.positive_roots()), R.weyl_group()[0], data,
                                false, "P(" + nu.str() + ")"));
  P.inner_psi = b.psi;
  return P;
}

KModule specialize(const AModule& M) {
  KModule K;
  K.S = M.S;
  K.name = M.name;
  K.weights = M.weights;
  K.psi = M.psi;
  K.dim_M = M.dim_M;
  K.inner_psi = M.inner_psi;
  K.over_A = false;
  for (const auto& m : M.act) K.act.push_back(m.rows ? specialize(m) : KMatrix());
  return K;
}

AModule lift_constant(const KModule& M) {
  AModule A;
  A.S = M.S;
  A.name = M.name;
  A.weights = M.weights;
  A.psi = M.psi;
  A.dim_M = M.dim_M;
  A.inner_psi = M.inner_psi;
  A.over_A = true;
  for (const auto& m : M.act) A.act.push_back(m.rows ? PolyMatrix::from_k(m) : PolyMatrix());
  return A;
}

namespace {

template <class Mat>
Mat scale_int(const Mat& m, int s, FieldRef f);
template <>
KMatrix scale_int(const KMatrix& m, int s, FieldRef f) {
  return scaled(m, f->from_int(s));
}
template <>
PolyMatrix scale_int(const PolyMatrix& m, int s, FieldRef f) {
  return scaled(m, Poly(f, f->from_int(s)));
}

template <class Mat>
GModule<Mat> tau_dual_impl(const GModule<Mat>& M) {
  const Setting& S = *M.S;
  const RootSystem& R = S.R;
  int nr = R.num_roots();
  GModule<Mat> N;
  N.S = M.S;
  N.name = "tau(" + M.name + ")*";
  N.over_A = M.over_A;
  for (const auto& w : M.weights) N.weights.push_back(act(S.D.wI.matrix, w));
  N.act.assign(M.act.size(), Mat());
  for (int a = 0; a < nr; ++a) {
    int b = S.tau.image[a];
    if (M.act[b].rows == 0) continue;
    N.act[a] = scale_int(transpose(M.act[b]), -S.tau.sign[a], S.f);
  }
  for (int i = 0; i < R.rank(); ++i) {
    Mat acc = scale_int(transpose(M.act[nr]), 0, S.f);
    for (int j = 0; j < R.rank(); ++j)
      if (S.tau.h_image[i][j]) acc = acc + scale_int(transpose(M.act[nr + j]), -S.tau.h_image[i][j], S.f);
    N.act[nr + i] = acc;
  }
  return N;
}

bool is_zero_mat(const KMatrix& m) { return m.is_zero(); }
bool is_zero_mat(const PolyMatrix& m) { return m.is_zero(); }

KMatrix power(const KMatrix& m, int e) { return matrix_power(m, e); }
PolyMatrix power(const PolyMatrix& m, int e) {
  PolyMatrix r = PolyMatrix::identity(m.f, m.rows);
  for (int i = 0; i < e; ++i) r = r * m;
  return r;
}
KMatrix ident(const KMatrix& m) { return KMatrix::identity(m.f, m.rows); }
PolyMatrix ident(const PolyMatrix& m) { return PolyMatrix::identity(m.f, m.rows); }

bool entry_nonzero(const KMatrix& m, std::size_t i, std::size_t j) { return m(i, j) != 0; }
bool entry_nonzero(const PolyMatrix& m, std::size_t i, std::size_t j) { return !m(i, j).is_zero(); }
bool entry_equals(const KMatrix& m, std::size_t i, std::size_t j, const Poly& v) { return Poly(m.f, m(i, j)) == v; }
bool entry_equals(const PolyMatrix& m, std::size_t i, std::size_t j, const Poly& v) { return m(i, j) == v; }

template <class Mat>
std::vector<std::string> audit_impl(const GModule<Mat>& M, bool over_A) {
  std::vector<std::string> bad;
  const Setting& S = *M.S;
  const RootSystem& R = S.R;
  int d = S.cb.dim(), nr = R.num_roots();
  std::size_t n = M.dim();
  for (int u = 0; u < d; ++u) {
    if (M.act[u].rows == 0) continue;
    const Mat& X = M.act[u];
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (u < nr) {
          if (entry_nonzero(X, i, j) && !(M.key(i) == S.key(M.weights[j] + R.root(u))))
            bad.push_back("grade shift fails for generator " + std::to_string(u));
        } else {
          Poly expect = i == j ? S.h_value(u - nr, M.weights[j], over_A) : Poly(S.f);
          if (!entry_equals(X, i, j, expect)) bad.push_back("h-action is not pi + d(weight)");
        }
      }
    if (u < nr) {
      elem x = S.f->pow(S.chi_value(u), S.p);
      Mat lhs = power(X, S.p);
      if (!(lhs == scale_int(ident(X), x, S.f))) bad.push_back("x^p != chi(x)^p for generator " + std::to_string(u));
    } else if (!over_A) {
      if (!(power(X, S.p) == X)) bad.push_back("h^p != h");
    }
  }
  for (int u = 0; u < d; ++u)
    for (int v = u + 1; v < d; ++v) {
      if (M.act[u].rows == 0 || M.act[v].rows == 0) continue;
      const auto& br = S.cb.bracket(u, v);
      bool ok = true;
      for (int w = 0; w < d; ++w)
        if (br[w] && M.act[w].rows == 0) ok = false;
      if (!ok) continue;
      Mat lhs = M.act[u] * M.act[v] - M.act[v] * M.act[u];
      for (int w = 0; w < d; ++w)
        if (br[w]) lhs = lhs - scale_int(M.act[w], br[w], S.f);
      if (!is_zero_mat(lhs)) bad.push_back("bracket law fails for (" + std::to_string(u) + "," + std::to_string(v) + ")");
    }
  std::sort(bad.begin(), bad.end());
  bad.erase(std::unique(bad.begin(), bad.end()), bad.end());
  return bad;
}

elem scale_elem(elem x, elem s, FieldRef f) { return f->mul(x, s); }
Poly scale_elem(const Poly& x, elem s, FieldRef) { return x.scaled(s); }

template <class Mat, class Vec>
Mat from_generator_impl(const GModule<Mat>& source, const GModule<Mat>& target, const Vec& g) {
  const Setting& S = *source.S;
  std::size_t inner_dim = 1;
  for (std::size_t k = 0; k < source.inner_psi.size(); ++k) inner_dim *= S.p;
  require(source.dim_M == inner_dim, "SingularInput", "source is not cyclic PBW");
  std::size_t n = source.dim();
  Mat X(S.f, target.dim(), n);
  std::vector<elem> inv_fact(S.p, 1);
  elem fact = 1;
  for (int j = 1; j < S.p; ++j) {
    fact = S.f->mul(fact, S.f->from_int(j));
    inv_fact[j] = S.f->inv(fact);
  }
  auto apply = [&](Vec& v, const std::vector<int>& roots, const std::vector<int>& e) {
    // y_1^{(e_1)} y_2^{(e_2)}...: apply the rightmost factor first
    for (int k = static_cast<int>(e.size()) - 1; k >= 0; --k) {
      const Mat& A = target.act[roots[k]];
      require(A.rows == target.dim(), "SingularInput", "target lacks a generator");
      for (int r = 0; r < e[k]; ++r) v = matvec(A, v);
      if (e[k] > 1)
        for (auto& x : v) x = scale_elem(x, inv_fact[e[k]], S.f);
    }
  };
  for (std::size_t y = 0; y < n; ++y) {
    Vec v = g;
    std::vector<int> ei(source.inner_psi.size());
    std::size_t m = y % inner_dim;
    for (auto& x : ei) {
      x = static_cast<int>(m % S.p);
      m /= S.p;
    }
    apply(v, source.inner_psi, ei);
    apply(v, source.psi, source.exponents(y));
    for (std::size_t i = 0; i < target.dim(); ++i) X(i, y) = v[i];
  }
  return X;
}

}  // namespace

KModule tau_dual(const KModule& M) { return tau_dual_impl(M); }
AModule tau_dual(const AModule& M) { return tau_dual_impl(M); }

std::vector<std::string> audit_module(const KModule& M) { return audit_impl(M, false); }
std::vector<std::string> audit_module(const AModule& M) { return audit_impl(M, M.over_A); }

KMatrix map_from_generator(const KModule& source, const KModule& target, const std::vector<elem>& g) {
  return from_generator_impl(source, target, g);
}
PolyMatrix map_from_generator(const AModule& source, const AModule& target, const std::vector<Poly>& g) {
  return from_generator_impl(source, target, g);
}

bool is_module_map(const KModule& M, const KModule& N, const KMatrix& X) {
  for (std::size_t u = 0; u < M.act.size(); ++u) {
    if (M.act[u].rows == 0 || N.act[u].rows == 0) continue;
    if (X * M.act[u] != N.act[u] * X) return false;
  }
  return true;
}

bool is_module_map(const AModule& M, const AModule& N, const PolyMatrix& X) {
  for (std::size_t u = 0; u < M.act.size(); ++u) {
    if (M.act[u].rows == 0 || N.act[u].rows == 0) continue;
    if (!(X * M.act[u] == N.act[u] * X)) return false;
  }
  return true;
}

namespace {
template <class Mat>
std::size_t pbw_index_impl(const GModule<Mat>& M, const std::vector<int>& e) {
  std::size_t y = 0, pw = 1;
  for (std::size_t k = 0; k < M.psi.size(); ++k) {
    y += e[k] * pw;
    pw *= M.S->p;
  }
  return y * std::max<std::size_t>(M.dim_M, 1);
}
}  // namespace

std::size_t pbw_index(const KModule& M, const std::vector<int>& e) { return pbw_index_impl(M, e); }
std::size_t pbw_index(const AModule& M, const std::vector<int>& e) { return pbw_index_impl(M, e); }

}  // namespace vwb

namespace vwb {

namespace {
std::size_t support_index(const std::vector<elem>& v) {
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i]) return i;
  throw Error("SingularInput", "zero basis vector");
}
}  // namespace

bool is_stable(const KModule& M, const KMatrix& B) {
  std::size_t r = rank(B);
  for (const auto& A : M.act) {
    if (A.rows == 0) continue;
    if (rank(hconcat(B, A * B)) != r) return false;
  }
  return true;
}

KModule submodule(const KModule& M, const KMatrix& B) {
  require(rank(B) == B.cols, "SingularInput", "submodule basis is dependent");
  KModule out;
  out.S = M.S;
  out.name = "sub(" + M.name + ")";
  for (std::size_t c = 0; c < B.cols; ++c) out.weights.push_back(M.weights[support_index(B.column(c))]);
  for (const auto& A : M.act) {
    if (A.rows == 0) {
      out.act.emplace_back();
      continue;
    }
    auto X = solve(B, A * B);
    require(X.has_value(), "SingularInput", "span is not a submodule");
    out.act.push_back(*X);
  }
  out.dim_M = out.dim();
  return out;
}

KModule quotient(const KModule& M, const KMatrix& B) {
  FieldRef f = M.S->f;
  std::size_t n = M.dim();
  EchelonBasis eb(f, n);
  for (std::size_t c = 0; c < B.cols; ++c) require(eb.add(B.column(c)), "SingularInput", "basis is dependent");
  std::vector<std::size_t> J;
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<elem> e(n, 0);
    e[j] = 1;
    if (eb.add(e)) J.push_back(j);
  }
  KMatrix T = B;
  for (std::size_t j : J) {
    KMatrix e(f, n, 1);
    e(j, 0) = 1;
    T = hconcat(T, e);
  }
  KMatrix Ti = inverse(T);
  KModule out;
  out.S = M.S;
  out.name = "quot(" + M.name + ")";
  for (std::size_t j : J) out.weights.push_back(M.weights[j]);
  std::size_t r = B.cols, q = J.size();
  for (const auto& A : M.act) {
    if (A.rows == 0) {
      out.act.emplace_back();
      continue;
    }
    KMatrix Y = Ti * A * T;
    KMatrix Q(f, q, q);
    for (std::size_t i = 0; i < q; ++i)
      for (std::size_t j = 0; j < q; ++j) Q(i, j) = Y(r + i, r + j);
    // stability: lower-left block vanishes
    for (std::size_t i = 0; i < q; ++i)
      for (std::size_t j = 0; j < r; ++j) require(Y(r + i, j) == 0, "SingularInput", "span is not a submodule");
    out.act.push_back(Q);
  }
  out.dim_M = out.dim();
  return out;
}

}  // namespace vwb
