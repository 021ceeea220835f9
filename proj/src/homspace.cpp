#include "vwb/homspace.hpp"

#include <algorithm>
#include <map>

#include "vwb/errors.hpp"

namespace vwb {

namespace {

std::vector<std::size_t> indices_of_key(const Setting& S, const std::vector<Weight>& weights, const Key& k) {
  std::vector<std::size_t> J;
  for (std::size_t i = 0; i < weights.size(); ++i)
    if (S.key(weights[i]) == k) J.push_back(i);
  return J;
}

elem factorial(FieldRef f, int n) {
  elem r = 1;
  for (int j = 2; j <= n; ++j) r = f->mul(r, f->from_int(j));
  return r;
}

std::vector<int> single_exponent(const AModule& M, int root, int s) {
  std::vector<int> e(M.psi.size(), 0);
  auto it = std::find(M.psi.begin(), M.psi.end(), root);
  require(it != M.psi.end(), "SingularInput", "root not in the PBW factor");
  e[it - M.psi.begin()] = s;
  return e;
}

}  // namespace

KMatrix hw_vectors(const KModule& N, const Key& k, const std::vector<int>& kill) {
  const Setting& S = *N.S;
  auto J = indices_of_key(S, N.weights, k);
  std::size_t rows = 0;
  for (int u : kill) rows += N.act[u].rows;
  KMatrix sys(S.f, rows, J.size());
  std::size_t r0 = 0;
  for (int u : kill) {
    const KMatrix& A = N.act[u];
    for (std::size_t i = 0; i < A.rows; ++i)
      for (std::size_t j = 0; j < J.size(); ++j) sys(r0 + i, j) = A(i, J[j]);
    r0 += A.rows;
  }
  KMatrix ns = nullspace(sys);
  KMatrix out(S.f, N.dim(), ns.cols);
  for (std::size_t c = 0; c < ns.cols; ++c)
    for (std::size_t j = 0; j < J.size(); ++j) out(J[j], c) = ns(j, c);
  return out;
}

std::vector<std::vector<Poly>> hw_lattice(const AModule& N, const Key& k, const std::vector<int>& kill) {
  const Setting& S = *N.S;
  auto J = indices_of_key(S, N.weights, k);
  if (J.empty()) return {};
  std::size_t rows = 0;
  for (int u : kill) rows += N.act[u].rows;
  std::vector<std::vector<Poly>> basis;
  if (rows == 0) {
    for (std::size_t j = 0; j < J.size(); ++j) {
      std::vector<Poly> v(J.size(), Poly(S.f));
      v[j] = Poly(S.f, 1);
      basis.push_back(v);
    }
  } else {
    PolyMatrix sys(S.f, rows, J.size());
    std::size_t r0 = 0;
    for (int u : kill) {
      const PolyMatrix& A = N.act[u];
      for (std::size_t i = 0; i < A.rows; ++i)
        for (std::size_t j = 0; j < J.size(); ++j) sys(r0 + i, j) = A(i, J[j]);
      r0 += A.rows;
    }
    basis = kernel_lattice(sys);
  }
  std::vector<std::vector<Poly>> out;
  for (const auto& b : basis) {
    std::vector<Poly> v(N.dim(), Poly(S.f));
    for (std::size_t j = 0; j < J.size(); ++j) v[J[j]] = b[j];
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<KMatrix> hom_from_cyclic(const KModule& src, const KModule& N) {
  KMatrix hw = hw_vectors(N, src.key(0), generator_killers(src));
  std::vector<KMatrix> out;
  for (std::size_t c = 0; c < hw.cols; ++c) out.push_back(map_from_generator(src, N, hw.column(c)));
  return out;
}

std::vector<PolyMatrix> hom_from_cyclic(const AModule& src, const AModule& N) {
  std::vector<PolyMatrix> out;
  for (const auto& g : hw_lattice(N, src.key(0), generator_killers(src))) out.push_back(map_from_generator(src, N, g));
  return out;
}

std::vector<KMatrix> hom_space(const KModule& M, const KModule& N) {
  const Setting& S = *M.S;
  FieldRef f = S.f;
  // unknowns: one block per common key
  std::map<Key, std::vector<std::size_t>> km, kn;
  for (std::size_t i = 0; i < M.dim(); ++i) km[M.key(i)].push_back(i);
  for (std::size_t i = 0; i < N.dim(); ++i) kn[N.key(i)].push_back(i);
  // var[(r, c)] for r in N of key K, c in M of key K
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> var;
  std::vector<std::pair<std::size_t, std::size_t>> vars;
  for (const auto& [k, cols] : km) {
    auto it = kn.find(k);
    if (it == kn.end()) continue;
    for (std::size_t r : it->second)
      for (std::size_t c : cols) {
        var[{r, c}] = vars.size();
        vars.push_back({r, c});
      }
  }
  if (vars.empty()) return {};
  std::vector<int> gens;
  for (int i = 0; i < S.R.rank(); ++i) {
    int a = S.R.simple(i);
    for (int u : {a, S.R.negative(a)})
      if (M.act[u].rows && N.act[u].rows) gens.push_back(u);
  }
  // (X ρ_M(u) - ρ_N(u) X)(r, c) = Σ_j X(r,j) M_u(j,c) - Σ_i N_u(r,i) X(i,c)
  EchelonBasis eq(f, vars.size());
  for (int u : gens) {
    const KMatrix& Mu = M.act[u];
    const KMatrix& Nu = N.act[u];
    for (std::size_t r = 0; r < N.dim(); ++r)
      for (std::size_t c = 0; c < M.dim(); ++c) {
        std::vector<elem> row(vars.size(), 0);
        bool any = false;
        for (std::size_t j = 0; j < M.dim(); ++j) {
          elem m = Mu(j, c);
          if (!m) continue;
          auto it = var.find({r, j});
          if (it == var.end()) continue;
          row[it->second] = f->add(row[it->second], m);
          any = true;
        }
        for (std::size_t i = 0; i < N.dim(); ++i) {
          elem n = Nu(r, i);
          if (!n) continue;
          auto it = var.find({i, c});
          if (it == var.end()) continue;
          row[it->second] = f->sub(row[it->second], n);
          any = true;
        }
        if (any) eq.add(std::move(row));
      }
  }
  KMatrix sys = matrix_from_columns(f, vars.size(), eq.generators());
  KMatrix ns = nullspace(transpose(sys));
  std::vector<KMatrix> out;
  for (std::size_t k = 0; k < ns.cols; ++k) {
    KMatrix X(f, N.dim(), M.dim());
    for (std::size_t v = 0; v < vars.size(); ++v) X(vars[v].first, vars[v].second) = ns(v, k);
    out.push_back(std::move(X));
  }
  return out;
}

int twisted_hom_rank(const SettingPtr& S, const Weight& lambda, const Weight& mu, const WeylElement& w) {
  AModule src = induce_verma_A(S, twist_weight(S->R, lambda, w, S->p), w);
  AModule tgt = induce_verma_A(S, mu, S->R.weyl_group()[0]);
  return static_cast<int>(hw_lattice(tgt, src.key(0), generator_killers(src)).size());
}

int hom_rank_A(const SettingPtr& S, const Weight& lambda, const Weight& mu) {
  return twisted_hom_rank(S, lambda, mu, S->R.weyl_group()[0]);
}

std::optional<KMatrix> tau_duality_witness(const SettingPtr& S, const Weight& mu) {
  WeylElement id = S->R.weyl_group()[0];
  KModule Z = induce_verma(S, mu, id);
  KModule T = tau_dual(induce_verma(S, twist_weight(S->R, mu, S->D.wsup, S->p), S->D.wsup));
  auto H = hom_from_cyclic(Z, T);
  if (H.size() != 1 || rank(H[0]) != Z.dim() || !is_module_map(Z, T, H[0])) return std::nullopt;
  return H[0];
}

std::optional<PolyMatrix> tau_duality_witness_A(const SettingPtr& S, const Weight& mu) {
  WeylElement id = S->R.weyl_group()[0];
  AModule Z = induce_verma_A(S, mu, id);
  AModule T = tau_dual(induce_verma_A(S, twist_weight(S->R, mu, S->D.wsup, S->p), S->D.wsup));
  auto H = hom_from_cyclic(Z, T);
  // invertible over the local ring iff invertible mod t
  if (H.size() != 1 || rank(specialize(H[0])) != Z.dim() || !is_module_map(Z, T, H[0])) return std::nullopt;
  return H[0];
}

std::vector<std::vector<int>> reduced_words(const RootSystem& R, const WeylElement& w) {
  std::vector<std::vector<int>> out;
  if (w.length() == 0) return {{}};
  for (int i = 0; i < R.rank(); ++i) {
    WeylElement v = R.compose(R.reflection(i), w);
    if (v.length() + 1 != w.length()) continue;
    for (auto rest : reduced_words(R, v)) {
      rest.insert(rest.begin(), i);
      out.push_back(rest);
    }
  }
  return out;
}

ChainData build_chain(const SettingPtr& S, const Weight& lambda) { return build_chain(S, lambda, S->D.reduced_expr); }

ChainData build_chain(const SettingPtr& S, const Weight& lambda, const std::vector<int>& word) {
  const RootSystem& R = S->R;
  FieldRef f = S->f;
  require(R.from_word(word).matrix == S->D.wsup.matrix && word.size() == S->D.wsup.length(), "SingularInput",
          "not a reduced expression of w^I");
  ChainData C;
  C.S = S;
  C.lambda = lambda;
  C.word = word;
  C.N = static_cast<int>(word.size());
  for (int i = 0; i <= C.N; ++i) C.w.push_back(R.from_word(std::vector<int>(word.begin(), word.begin() + i)));
  for (int i = 0; i < C.N; ++i) C.beta.push_back(R.act_on_root(C.w[i], R.simple(word[i])));
  for (int i = 0; i <= C.N; ++i) C.Z.push_back(induce_verma_A(S, twist_weight(R, lambda, C.w[i], S->p), C.w[i]));
  elem pf = factorial(f, S->p - 1);
  for (int i = 0; i < C.N; ++i) {
    const AModule& Zi = C.Z[i];
    const AModule& Zn = C.Z[i + 1];
    int b = C.beta[i];
    std::vector<Poly> g(Zn.dim(), Poly(f));
    g[pbw_index(Zn, single_exponent(Zn, b, S->p - 1))] = Poly(f, pf);
    std::vector<Poly> gp(Zi.dim(), Poly(f));
    gp[pbw_index(Zi, single_exponent(Zi, R.negative(b), S->p - 1))] = Poly(f, pf);
    PolyMatrix phi = map_from_generator(Zi, Zn, g);
    PolyMatrix phip = map_from_generator(Zn, Zi, gp);
    require(is_module_map(Zi, Zn, phi), "FormulaMismatch", "phi_" + std::to_string(i + 1) + " is not a module map");
    require(is_module_map(Zn, Zi, phip), "FormulaMismatch", "phi'_" + std::to_string(i + 1) + " is not a module map");
    // generators of rank-one hom lattices
    require(hom_from_cyclic(Zi, Zn).size() == 1 && !specialize(phi).is_zero(), "FormulaMismatch",
            "phi_" + std::to_string(i + 1) + " does not generate its hom lattice");
    require(hom_from_cyclic(Zn, Zi).size() == 1 && !specialize(phip).is_zero(), "FormulaMismatch",
            "phi'_" + std::to_string(i + 1) + " does not generate its hom lattice");
    C.phi.push_back(std::move(phi));
    C.phip.push_back(std::move(phip));
  }
  std::size_t n = C.Z[0].dim();
  C.varpi = PolyMatrix::identity(f, n);
  C.varpip = PolyMatrix::identity(f, n);
  for (int i = 0; i < C.N; ++i) {
    C.varpi = C.phi[i] * C.varpi;
    C.varpip = C.varpip * C.phip[i];
  }
  return C;
}

void closed_form_check(const ChainData& C) {
  const Setting& S = *C.S;
  const RootSystem& R = S.R;
  FieldRef f = S.f;
  int p = S.p;
  for (int i = 0; i < C.N; ++i) {
    int b = C.beta[i];
    const AModule& Zi = C.Z[i];
    const AModule& Zn = C.Z[i + 1];
    elem cb = S.c_root(b);
    int pr = R.pairing(C.lambda + R.rho(), b);
    elem pf = factorial(f, p - 1);
    for (int s = 0; s < p; ++s) {
      elem scal = f->mul(pf, f->inv(factorial(f, s)));
      Poly down(f, (s % 2) ? f->neg(scal) : scal), up(f, scal);
      for (int j = 1; j <= s; ++j) {
        down *= Poly::linear(f, cb, f->from_int(pr - j));
        up *= Poly::linear(f, cb, f->from_int(pr + j));
      }
      std::size_t vs = pbw_index(Zi, single_exponent(Zi, R.negative(b), s));
      std::size_t vps = pbw_index(Zn, single_exponent(Zn, b, s));
      std::size_t vt = pbw_index(Zn, single_exponent(Zn, b, p - 1 - s));
      std::size_t vpt = pbw_index(Zi, single_exponent(Zi, R.negative(b), p - 1 - s));
      std::vector<Poly> e1(Zn.dim(), Poly(f)), e2(Zi.dim(), Poly(f));
      e1[vt] = down;
      e2[vpt] = up;
      std::string where = "(i=" + std::to_string(i + 1) + ", s=" + std::to_string(s) + ")";
      require(C.phi[i].column(vs) == e1, "FormulaMismatch", "phi " + where);
      require(C.phip[i].column(vps) == e2, "FormulaMismatch", "phi' " + where);
    }
  }
}

int scalar_exponent(const PolyMatrix& X) {
  require(X.rows == X.cols && X.rows > 0, "NotScalar", "not square");
  const Poly& d = X(0, 0);
  for (std::size_t i = 0; i < X.rows; ++i)
    for (std::size_t j = 0; j < X.cols; ++j) {
      bool ok = i == j ? X(i, j) == d : X(i, j).is_zero();
      require(ok, "NotScalar", "entry (" + std::to_string(i) + "," + std::to_string(j) + ")");
    }
  require(!d.is_zero(), "NotScalar", "zero composite");
  return d.valuation();
}

int composite_exponent(const ChainData& C) {
  int e1 = scalar_exponent(C.varpip * C.varpi);
  int e2 = scalar_exponent(C.varpi * C.varpip);
  require(e1 == e2, "NotScalar", "two composites disagree");
  return e1;
}

std::vector<int> step_exponents(const ChainData& C) {
  std::vector<int> out;
  for (int i = 0; i < C.N; ++i) {
    int a = scalar_exponent(C.phi[i] * C.phip[i]);
    int b = scalar_exponent(C.phip[i] * C.phi[i]);
    require(a == b, "NotScalar", "step composites disagree");
    out.push_back(a);
  }
  return out;
}

}  // namespace vwb
