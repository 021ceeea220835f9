#include "vwb/algrep.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "vwb/errors.hpp"

namespace vwb {

namespace {

std::vector<elem> unit_vec(std::size_t n, std::size_t i) {
  std::vector<elem> v(n, 0);
  v[i] = 1;
  return v;
}

std::size_t first_support(const std::vector<elem>& v) {
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i]) return i;
  throw Error("SingularInput", "zero vector has no weight");
}

// normalized representatives of the lines of F_q^d
std::vector<std::vector<elem>> all_lines(FieldRef f, std::size_t d) {
  long long q = f->order(), count = 0, pw = 1;
  for (std::size_t i = 0; i < d; ++i) pw *= q;
  count = (pw - 1) / (q - 1);
  require(count <= 20000, "SplitFailure", "too many lines to enumerate");
  std::vector<std::vector<elem>> out;
  for (std::size_t lead = 0; lead < d; ++lead) {
    std::size_t tail = d - lead - 1;
    long long m = 1;
    for (std::size_t i = 0; i < tail; ++i) m *= q;
    for (long long x = 0; x < m; ++x) {
      std::vector<elem> v(d, 0);
      v[lead] = 1;
      long long y = x;
      for (std::size_t i = 0; i < tail; ++i) {
        v[lead + 1 + i] = static_cast<elem>(y % q);
        y /= q;
      }
      out.push_back(v);
    }
  }
  return out;
}

std::vector<Key> sorted_keys(const KModule& M) {
  std::set<Key> ks;
  for (std::size_t i = 0; i < M.dim(); ++i) ks.insert(M.key(i));
  return {ks.begin(), ks.end()};
}

std::vector<elem> axpy(FieldRef f, std::vector<elem> y, elem a, const std::vector<elem>& x) {
  for (std::size_t i = 0; i < y.size(); ++i) y[i] = f->add(y[i], f->mul(a, x[i]));
  return y;
}

elem random_elem(FieldRef f, std::mt19937& rng) {
  return static_cast<elem>(std::uniform_int_distribution<int>(0, f->order() - 1)(rng));
}

bool series_equal(const std::vector<Series>& a, const std::vector<Series>& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!(a[i] - b[i]).is_zero()) return false;
  return true;
}

// Gauss-Jordan over A/t^M; C must be invertible mod t
SeriesMatrix series_inverse(SeriesMatrix C) {
  std::size_t n = C.rows;
  FieldRef f = C.f;
  SeriesMatrix I = SeriesMatrix::identity(f, n, C.prec);
  for (std::size_t j = 0; j < n; ++j) {
    std::size_t piv = n;
    for (std::size_t i = j; i < n; ++i)
      if (C(i, j).valuation() == 0) {
        piv = i;
        break;
      }
    require(piv < n, "SingularInput", "matrix is not invertible mod t");
    for (std::size_t c = 0; c < n; ++c) {
      std::swap(C(j, c), C(piv, c));
      std::swap(I(j, c), I(piv, c));
    }
    Series inv = C(j, j).inverse();
    for (std::size_t c = 0; c < n; ++c) {
      C(j, c) = C(j, c) * inv;
      I(j, c) = I(j, c) * inv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == j || C(i, j).is_zero()) continue;
      Series s = C(i, j);
      for (std::size_t c = 0; c < n; ++c) {
        C(i, c) = C(i, c) - s * C(j, c);
        I(i, c) = I(i, c) - s * I(j, c);
      }
    }
  }
  return I;
}

KModule levi_verma_k(const SettingPtr& S, const Weight& w) { return specialize(levi_verma(S, w, false)); }

int pow_int(int b, std::size_t e) {
  int r = 1;
  for (std::size_t i = 0; i < e; ++i) r *= b;
  return r;
}

}  // namespace

std::vector<std::size_t> key_indices(const KModule& M, const Key& k) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < M.dim(); ++i)
    if (M.key(i) == k) out.push_back(i);
  return out;
}

std::vector<int> raising_roots(const KModule& M) {
  std::vector<int> out;
  for (int i = 0; i < M.S->R.rank(); ++i) {
    int a = M.S->R.simple(i);
    if (M.act[a].rows) out.push_back(a);
  }
  return out;
}

KMatrix spin(const KModule& M, const std::vector<std::vector<elem>>& seeds) {
  FieldRef f = M.S->f;
  std::size_t n = M.dim();
  EchelonBasis eb(f, n);
  std::vector<std::vector<elem>> queue;
  for (const auto& s : seeds)
    if (eb.add(s)) queue.push_back(s);
  std::vector<int> gens;
  for (int u = 0; u < M.S->R.num_roots(); ++u)
    if (M.act[u].rows) gens.push_back(u);
  for (std::size_t q = 0; q < queue.size() && eb.size() < n; ++q) {
    std::vector<elem> v = queue[q];
    for (int u : gens) {
      auto w = matvec(M.act[u], v);
      if (eb.add(w)) queue.push_back(w);
    }
  }
  return matrix_from_columns(f, n, eb.generators());
}

KMatrix find_simple_submodule(const KModule& M, std::mt19937& rng, Weight* hw) {
  require(M.dim() > 0, "SingularInput", "zero module has no simple submodule");
  FieldRef f = M.S->f;
  auto kill = raising_roots(M);
  auto keys = sorted_keys(M);
  KMatrix S;
  Weight w;
  for (const auto& k : keys) {
    KMatrix H = hw_vectors(M, k, kill);
    if (H.cols == 0) continue;
    auto v = H.column(0);
    S = spin(M, {v});
    w = M.weights[first_support(v)];
    break;
  }
  require(S.cols > 0, "SplitFailure", "no highest weight vector in " + M.name);
  for (;;) {
    if (S.cols == 1) break;
    KModule sub = submodule(M, S);
    std::vector<KMatrix> inv;
    std::size_t total = 0;
    for (const auto& k : sorted_keys(sub)) {
      KMatrix H = hw_vectors(sub, k, kill);
      if (H.cols) {
        total += H.cols;
        inv.push_back(H);
      }
    }
    if (total == 1) break;
    std::shuffle(inv.begin(), inv.end(), rng);
    bool shrunk = false;
    for (const auto& H : inv) {
      auto ls = all_lines(f, H.cols);
      std::shuffle(ls.begin(), ls.end(), rng);
      for (const auto& l : ls) {
        auto u = matvec(S, matvec(H, l));
        KMatrix T = spin(M, {u});
        if (T.cols < S.cols) {
          S = T;
          w = M.weights[first_support(u)];
          shrunk = true;
          break;
        }
      }
      if (shrunk) break;
    }
    if (!shrunk) break;
  }
  if (hw) *hw = w;
  return S;
}

std::vector<SimpleFactor> composition_series(const KModule& M, unsigned seed) {
  std::mt19937 rng(seed);
  std::vector<SimpleFactor> out;
  KModule cur = M;
  while (cur.dim() > 0) {
    Weight w;
    KMatrix B = find_simple_submodule(cur, rng, &w);
    out.push_back({w, M.S->L.label(w), B.cols});
    if (B.cols == cur.dim()) break;
    cur = quotient(cur, B);
  }
  return out;
}

int multiplicity(const std::vector<SimpleFactor>& fs, const Weight& label) {
  int m = 0;
  for (const auto& x : fs) m += x.label == label ? 1 : 0;
  return m;
}

DecompositionReport composition_factors(const KModule& M, unsigned seed) {
  DecompositionReport r;
  r.module = M.name;
  r.seed = seed;
  auto fs = composition_series(M, seed);
  std::map<Weight, int> agg;
  std::size_t total = 0;
  for (const auto& x : fs) {
    agg[x.label] += 1;
    r.factor_dims.push_back(x.dim);
    total += x.dim;
  }
  r.factors.assign(agg.begin(), agg.end());
  r.dims_add_up = total == M.dim();
  return r;
}

KModule simple_head(const SettingPtr& S, const Weight& lambda) {
  WeylElement id = S->R.weyl_group()[0];
  KModule Z = induce_verma(S, lambda, id);
  KModule T = tau_dual(Z);
  std::mt19937 rng(1);
  KMatrix Ls = find_simple_submodule(T, rng);
  KModule out;
  if (Ls.cols == Z.dim()) {
    out = Z;
  } else {
    // annihilator of Ls under the dual pairing, one key block at a time
    std::vector<std::vector<elem>> cols;
    for (const auto& k : sorted_keys(Z)) {
      auto G = key_indices(Z, k);
      KMatrix sys(S->f, Ls.cols, G.size());
      for (std::size_t c = 0; c < Ls.cols; ++c)
        for (std::size_t j = 0; j < G.size(); ++j) sys(c, j) = Ls(G[j], c);
      KMatrix ns = nullspace(sys);
      for (std::size_t c = 0; c < ns.cols; ++c) {
        std::vector<elem> v(Z.dim(), 0);
        for (std::size_t j = 0; j < G.size(); ++j) v[G[j]] = ns(j, c);
        cols.push_back(v);
      }
    }
    out = quotient(Z, matrix_from_columns(S->f, Z.dim(), cols));
  }
  out.name = "L(" + lambda.str() + ")";
  out.psi.clear();
  out.dim_M = out.dim();
  return out;
}

Weight verma_socle(const SettingPtr& S, const Weight& lambda, unsigned seed) {
  KModule Z = induce_verma(S, lambda, S->R.weyl_group()[0]);
  std::mt19937 rng(seed);
  Weight w;
  find_simple_submodule(Z, rng, &w);
  return S->L.label(w);
}

KModule direct_sum(const std::vector<KModule>& mods) {
  require(!mods.empty(), "SingularInput", "empty direct sum");
  KModule out;
  out.S = mods[0].S;
  FieldRef f = out.S->f;
  std::size_t n = 0;
  std::string name;
  for (const auto& m : mods) {
    n += m.dim();
    out.weights.insert(out.weights.end(), m.weights.begin(), m.weights.end());
    name += (name.empty() ? "" : "+") + m.name;
  }
  out.name = name;
  std::size_t nu = mods[0].act.size();
  for (std::size_t u = 0; u < nu; ++u) {
    if (mods[0].act[u].rows == 0 && mods[0].dim() > 0) {
      out.act.emplace_back();
      continue;
    }
    KMatrix A(f, n, n);
    std::size_t off = 0;
    for (const auto& m : mods) {
      require(m.act[u].rows == m.dim(), "SingularInput", "summands see different algebras");
      for (std::size_t i = 0; i < m.dim(); ++i)
        for (std::size_t j = 0; j < m.dim(); ++j) A(off + i, off + j) = m.act[u](i, j);
      off += m.dim();
    }
    out.act.push_back(A);
  }
  out.dim_M = n;
  return out;
}

// ---- endomorphisms of torus projectives ----

std::vector<elem> TorusEnd::mul(const std::vector<elem>& g, const std::vector<elem>& h) const {
  std::vector<elem> out(d(), 0);
  for (std::size_t b = 0; b < d(); ++b) {
    if (!h[b]) continue;
    for (std::size_t c = 0; c < d(); ++c) {
      if (!g[c]) continue;
      out = axpy(f, out, f->mul(h[b], g[c]), T[b][c]);
    }
  }
  return out;
}

KMatrix TorusEnd::left(const std::vector<elem>& g) const {
  KMatrix L(f, d(), d());
  for (std::size_t b = 0; b < d(); ++b) {
    std::vector<elem> col(d(), 0);
    for (std::size_t c = 0; c < d(); ++c)
      if (g[c]) col = axpy(f, col, g[c], T[b][c]);
    L.set_column(b, col);
  }
  return L;
}

std::vector<elem> TorusEnd::unit() const { return unit_vec(d(), 0); }

TorusEnd torus_end(const KModule& P) {
  TorusEnd E;
  E.f = P.S->f;
  E.J = key_indices(P, P.key(0));
  require(!E.J.empty() && E.J[0] == 0, "SingularInput", "generator is not basis vector 0");
  std::size_t d = E.J.size();
  std::vector<int> pos(P.dim(), -1);
  for (std::size_t i = 0; i < d; ++i) pos[E.J[i]] = static_cast<int>(i);
  E.T.assign(d, std::vector<std::vector<elem>>(d));
  for (std::size_t c = 0; c < d; ++c) {
    KMatrix X = map_from_generator(P, P, unit_vec(P.dim(), E.J[c]));
    for (std::size_t b = 0; b < d; ++b) {
      std::vector<elem> v(d, 0);
      for (std::size_t i = 0; i < P.dim(); ++i) {
        elem x = X(i, E.J[b]);
        if (!x) continue;
        require(pos[i] >= 0, "InvariantViolation", "endomorphism leaves the key block");
        v[pos[i]] = x;
      }
      E.T[b][c] = v;
    }
  }
  return E;
}

namespace {

std::optional<std::pair<std::vector<elem>, std::vector<elem>>> fitting_split(const TorusEnd& E,
                                                                             const std::vector<elem>& e,
                                                                             std::mt19937& rng) {
  FieldRef f = E.f;
  std::size_t d = E.d();
  for (int tries = 0; tries < 64; ++tries) {
    std::vector<elem> a(d);
    for (auto& x : a) x = random_elem(f, rng);
    elem s = random_elem(f, rng);
    auto b = axpy(f, E.mul(E.mul(e, a), e), f->neg(s), e);
    KMatrix K = matrix_power(E.left(b), static_cast<long long>(d));
    KMatrix im = column_space(K);
    KMatrix ker = nullspace(K);
    if (im.cols == 0 || ker.cols == 0) continue;
    KMatrix ecol(f, d, 1);
    ecol.set_column(0, e);
    auto x = solve(hconcat(im, ker), ecol);
    require(x.has_value(), "InvariantViolation", "Fitting decomposition is not a complement");
    std::vector<elem> e1(d, 0);
    for (std::size_t c = 0; c < im.cols; ++c) e1 = axpy(f, e1, (*x)(c, 0), im.column(c));
    bool zero = std::all_of(e1.begin(), e1.end(), [](elem v) { return v == 0; });
    if (zero || e1 == e) continue;
    require(E.mul(e1, e1) == e1, "InvariantViolation", "Fitting component is not idempotent");
    std::vector<elem> e2 = axpy(f, e, f->neg(1), e1);
    return std::make_pair(e1, e2);
  }
  return std::nullopt;
}

std::vector<elem> embed(const TorusEnd& E, std::size_t n, const std::vector<elem>& g) {
  std::vector<elem> v(n, 0);
  for (std::size_t i = 0; i < E.d(); ++i) v[E.J[i]] = g[i];
  return v;
}

// dim Hom(eP, L) for a torus projective P
int head_hom_dim(const KModule& P, const std::vector<elem>& gfull, const KModule& L) {
  auto JL = key_indices(L, P.key(0));
  std::vector<std::vector<elem>> cols;
  for (std::size_t z : JL) {
    KMatrix X = map_from_generator(P, L, unit_vec(L.dim(), z));
    cols.push_back(matvec(X, gfull));
  }
  if (cols.empty()) return 0;
  return static_cast<int>(rank(matrix_from_columns(P.S->f, L.dim(), cols)));
}

}  // namespace

ProjectiveCover projective_cover(const SettingPtr& S, const Weight& nu, unsigned seed) {
  ProjectiveCover Q;
  Q.S = S;
  Q.nu = nu;
  Q.label = S->L.label(nu);
  Q.P = torus_projective(S, nu);
  TorusEnd E = torus_end(Q.P);
  std::mt19937 rng(seed);
  std::vector<std::vector<elem>> todo{E.unit()}, prim;
  while (!todo.empty()) {
    auto e = todo.back();
    todo.pop_back();
    auto sp = fitting_split(E, e, rng);
    if (sp) {
      todo.push_back(sp->first);
      todo.push_back(sp->second);
    } else {
      prim.push_back(e);
    }
  }
  // candidate heads
  std::map<Weight, Weight> reps;
  for (const auto& x : composition_series(Q.P, seed)) reps.emplace(x.label, x.weight);
  std::map<Weight, KModule> heads;
  for (const auto& [lab, w] : reps) heads.emplace(lab, simple_head(S, w));
  std::map<Weight, int> counts;
  std::optional<std::vector<elem>> chosen;
  std::size_t total = 0;
  for (const auto& e : prim) {
    auto g = embed(E, Q.P.dim(), e);
    int sum = 0;
    Weight lab;
    for (const auto& [l, L] : heads) {
      int m = head_hom_dim(Q.P, g, L);
      if (m) lab = l;
      sum += m;
    }
    require(sum == 1, "SplitFailure",
            "summand of P(" + nu.str() + ") without simple head (seed " + std::to_string(seed) + ")");
    counts[lab] += 1;
    total += rank(map_from_generator(Q.P, Q.P, g));
    if (lab == Q.label && !chosen) chosen = e;
  }
  require(total == Q.P.dim(), "InvariantViolation", "summand dimensions do not add up");
  require(chosen.has_value(), "SplitFailure", "no summand with head L(" + nu.str() + ")");
  Q.summands.assign(counts.begin(), counts.end());
  Q.idem = *chosen;
  Q.E = map_from_generator(Q.P, Q.P, embed(E, Q.P.dim(), Q.idem));
  require(Q.E * Q.E == Q.E, "InvariantViolation", "cover idempotent");
  EchelonBasis eb(S->f, Q.P.dim());
  std::vector<std::vector<elem>> cols;
  for (std::size_t j = 0; j < Q.P.dim(); ++j)
    if (eb.add(Q.E.column(j))) {
      Q.pivots.push_back(j);
      cols.push_back(Q.E.column(j));
    }
  Q.Q = submodule(Q.P, matrix_from_columns(S->f, Q.P.dim(), cols));
  Q.Q.name = "Q(" + nu.str() + ")";
  return Q;
}

LiftedCover lift_projective(const ProjectiveCover& Q, int M) {
  const SettingPtr& S = Q.S;
  FieldRef f = S->f;
  LiftedCover L;
  L.M = M;
  L.PA = torus_projective_A(S, Q.nu);
  KModule sp = specialize(L.PA);
  for (std::size_t u = 0; u < sp.act.size(); ++u)
    require(sp.act[u] == Q.P.act[u], "InvariantViolation", "A-form of the torus projective");
  auto J = key_indices(Q.P, Q.P.key(0));
  std::size_t d = J.size(), n = Q.P.dim();
  std::vector<int> pos(n, -1);
  for (std::size_t i = 0; i < d; ++i) pos[J[i]] = static_cast<int>(i);
  // T[b][c] over A/t^M
  std::vector<std::vector<std::vector<Series>>> T(d, std::vector<std::vector<Series>>(d));
  for (std::size_t c = 0; c < d; ++c) {
    std::vector<Poly> g(n, Poly(f));
    g[J[c]] = Poly(f, 1);
    PolyMatrix X = map_from_generator(L.PA, L.PA, g);
    for (std::size_t b = 0; b < d; ++b) {
      std::vector<Series> v(d, Series(f, M));
      for (std::size_t i = 0; i < n; ++i) {
        const Poly& x = X(i, J[b]);
        if (x.is_zero()) continue;
        require(pos[i] >= 0, "InvariantViolation", "endomorphism leaves the key block");
        v[pos[i]] = Series::from_poly(x, M);
      }
      T[b][c] = v;
    }
  }
  auto mul = [&](const std::vector<Series>& g, const std::vector<Series>& h) {
    std::vector<Series> out(d, Series(f, M));
    for (std::size_t b = 0; b < d; ++b) {
      if (h[b].is_zero()) continue;
      for (std::size_t c = 0; c < d; ++c) {
        if (g[c].is_zero()) continue;
        Series s = h[b] * g[c];
        for (std::size_t i = 0; i < d; ++i)
          if (!T[b][c][i].is_zero()) out[i] = out[i] + s * T[b][c][i];
      }
    }
    return out;
  };
  std::vector<Series> e(d, Series(f, M));
  for (std::size_t i = 0; i < d; ++i) e[i] = Series::constant(f, Q.idem[i], M);
  bool done = false;
  for (int it = 0; it < 12 && !done; ++it) {
    auto e2 = mul(e, e);
    if (series_equal(e2, e)) {
      done = true;
      break;
    }
    auto e3 = mul(e2, e);
    for (std::size_t i = 0; i < d; ++i) e[i] = e2[i].scaled(f->from_int(3)) - e3[i].scaled(f->from_int(2));
  }
  require(done || series_equal(mul(e, e), e), "TruncationExceeded", "idempotent lift did not converge");
  L.idem = e;
  std::vector<Poly> gen(n, Poly(f));
  for (std::size_t i = 0; i < d; ++i) gen[J[i]] = e[i].to_poly();
  L.E = SeriesMatrix::from_poly(map_from_generator(L.PA, L.PA, gen), M);
  SeriesMatrix E2 = L.E * L.E;
  for (std::size_t i = 0; i < E2.a.size(); ++i)
    require((E2.a[i] - L.E.a[i]).is_zero(), "InvariantViolation", "lifted idempotent");
  require(L.E.mod_t() == Q.E, "InvariantViolation", "lift does not specialize to the cover idempotent");
  return L;
}

AModule lifted_module(const ProjectiveCover& Q, const LiftedCover& L) {
  FieldRef f = Q.S->f;
  std::size_t n = Q.P.dim(), r = Q.pivots.size();
  int M = L.M;
  SeriesMatrix B(f, n, r, M);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t c = 0; c < r; ++c) B(i, c) = L.E(i, Q.pivots[c]);
  // rows where B mod t is invertible
  KMatrix Bt = transpose(B.mod_t());
  EchelonBasis eb(f, r);
  std::vector<std::size_t> rows;
  for (std::size_t i = 0; i < n && rows.size() < r; ++i)
    if (eb.add(Bt.column(i))) rows.push_back(i);
  require(rows.size() == r, "InvariantViolation", "pivot columns are dependent");
  SeriesMatrix C(f, r, r, M);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t c = 0; c < r; ++c) C(i, c) = B(rows[i], c);
  SeriesMatrix Ci = series_inverse(C);
  AModule out;
  out.S = Q.S;
  out.name = "Q_A(" + Q.nu.str() + ")";
  out.over_A = true;
  for (std::size_t c : Q.pivots) out.weights.push_back(Q.P.weights[c]);
  for (const auto& A : L.PA.act) {
    if (A.rows == 0) {
      out.act.emplace_back();
      continue;
    }
    SeriesMatrix AB = SeriesMatrix::from_poly(A, M) * B;
    SeriesMatrix R(f, r, r, M);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t c = 0; c < r; ++c) R(i, c) = AB(rows[i], c);
    SeriesMatrix X = Ci * R;
    PolyMatrix P(f, r, r);
    for (std::size_t i = 0; i < r * r; ++i) P.a[i] = X.a[i].to_poly();
    out.act.push_back(P);
  }
  out.dim_M = r;
  return out;
}

std::vector<VermaMultiplicity> verma_multiplicities(const ProjectiveCover& Q, const LiftedCover& L,
                                                    const std::vector<Weight>& mus, unsigned seed) {
  const SettingPtr& S = Q.S;
  FieldRef f = S->f;
  WeylElement id = S->R.weyl_group()[0];
  auto J = key_indices(Q.P, Q.P.key(0));
  std::size_t n = Q.P.dim();
  std::vector<Series> gE(n, Series(f, L.M));
  for (std::size_t i = 0; i < J.size(); ++i) gE[J[i]] = L.idem[i];
  FiltrationResult filt = z_filtration_extract(Q.Q, false, false, seed);
  require(filt.ok, "NoFiltration", "cover has no extracted Z-filtration: " + filt.reason);
  std::vector<VermaMultiplicity> out;
  for (const auto& mu : mus) {
    VermaMultiplicity vm;
    vm.mu = mu;
    AModule Z = induce_verma_A(S, mu, id);
    std::vector<std::size_t> JZ;
    for (std::size_t i = 0; i < Z.dim(); ++i)
      if (Z.key(i) == Q.P.key(0)) JZ.push_back(i);
    if (!JZ.empty()) {
      SeriesMatrix Y(f, JZ.size(), JZ.size(), L.M);
      for (std::size_t zi = 0; zi < JZ.size(); ++zi) {
        std::vector<Poly> g(Z.dim(), Poly(f));
        g[JZ[zi]] = Poly(f, 1);
        SeriesMatrix X = SeriesMatrix::from_poly(map_from_generator(L.PA, Z, g), L.M);
        for (std::size_t ri = 0; ri < JZ.size(); ++ri) {
          Series s(f, L.M);
          for (std::size_t b = 0; b < n; ++b)
            if (!gE[b].is_zero()) s = s + X(JZ[ri], b) * gE[b];
          Y(ri, zi) = s;
        }
      }
      auto sf = smith_form(Y);
      for (int e : sf.exponents) {
        if (e < L.M) ++vm.hom_rank;
        if (e != 0 && e < L.M) vm.hom_saturated = false;
      }
    }
    Weight lab = S->L.label(mu);
    for (const auto& l : filt.labels) vm.filtration += l == lab ? 1 : 0;
    vm.verma_mult = multiplicity(composition_series(specialize(Z), seed), Q.label);
    vm.predicted = S->L.residue_orbit_size(mu) * vm.verma_mult;
    out.push_back(vm);
  }
  return out;
}

// ---- filtrations ----

KModule levi_piece(const KModule& M, const std::vector<std::size_t>& J) {
  const Setting& S = *M.S;
  KModule out;
  out.S = M.S;
  out.name = "levi(" + M.name + ")";
  std::vector<int> pos(M.dim(), -1);
  for (std::size_t i = 0; i < J.size(); ++i) {
    pos[J[i]] = static_cast<int>(i);
    out.weights.push_back(M.weights[J[i]]);
  }
  for (int u = 0; u < S.cb.dim(); ++u) {
    bool keep = !S.cb.is_root_index(u) || S.D.in_levi_roots(u);
    if (!keep || M.act[u].rows == 0) {
      out.act.emplace_back();
      continue;
    }
    KMatrix A(S.f, J.size(), J.size());
    for (std::size_t j = 0; j < J.size(); ++j)
      for (std::size_t i = 0; i < M.dim(); ++i) {
        elem x = M.act[u](i, J[j]);
        if (!x) continue;
        require(pos[i] >= 0, "SingularInput", "basis subset is not g_I-stable");
        A(pos[i], j) = x;
      }
    out.act.push_back(A);
  }
  out.dim_M = J.size();
  return out;
}

FiltrationResult z_filtration_extract(const KModule& M, bool twisted, bool q_version, unsigned seed) {
  const SettingPtr& S = M.S;
  const Linkage& Lk = S->L;
  FiltrationResult res;
  std::size_t outer = 0, inner = 0;
  for (int a : S->R.positive_roots()) (S->D.in_levi_roots(a) ? inner : outer) += 1;
  std::size_t factor = static_cast<std::size_t>(pow_int(S->p, outer));
  int levi_dim = pow_int(S->p, inner);
  KModule cur = M;
  while (cur.dim() > 0) {
    std::set<Weight> grades;
    for (const auto& w : cur.weights) grades.insert(Lk.grade(w));
    std::optional<Weight> g;
    for (const auto& a : grades) {
      bool extreme = true;
      for (const auto& b : grades) {
        if (a == b) continue;
        if (!twisted && Lk.grade_leq(a, b)) extreme = false;
        if (twisted && Lk.grade_leq(b, a)) extreme = false;
      }
      if (extreme) {
        g = a;
        break;
      }
    }
    require(g.has_value(), "InvariantViolation", "grades have no extreme element");
    std::vector<std::size_t> J;
    std::vector<std::vector<elem>> seeds;
    for (std::size_t i = 0; i < cur.dim(); ++i)
      if (Lk.grade(cur.weights[i]) == *g) {
        J.push_back(i);
        seeds.push_back(unit_vec(cur.dim(), i));
      }
    KMatrix T = spin(cur, seeds);
    if (T.cols != J.size() * factor) {
      res.reason = "grade " + g->str() + " does not generate an induced module";
      return res;
    }
    KModule Mg = levi_piece(cur, J);
    auto fs = composition_series(Mg, seed);
    if (q_version) {
      std::map<Weight, Weight> reps;
      for (const auto& x : fs) reps.emplace(x.label, x.weight);
      int expect = 0;
      for (const auto& [lab, w] : reps) {
        int m = static_cast<int>(hom_space(Mg, levi_verma_k(S, w)).size());
        expect += m * Lk.residue_orbit_size(w) * levi_dim;
      }
      if (expect != static_cast<int>(J.size())) {
        res.reason = "Levi piece at grade " + g->str() + " is not projective";
        return res;
      }
    }
    for (const auto& x : fs) {
      res.weights.push_back(x.weight);
      res.labels.push_back(x.label);
      res.grades.push_back(*g);
    }
    if (T.cols == cur.dim()) break;
    cur = quotient(cur, T);
  }
  res.ok = true;
  return res;
}

// ---- rank varieties ----

ProbeResult rank_variety_probe(const KModule& M, int trials, unsigned seed) {
  const Setting& S = *M.S;
  FieldRef f = S.f;
  std::size_t n = M.dim();
  int p = S.p;
  ProbeResult res;
  auto check = [&](const std::vector<elem>& x, const std::string& desc) {
    ++res.probes;
    KMatrix X(f, n, n);
    elem cx = 0;
    for (int u = 0; u < S.cb.dim(); ++u) {
      if (!x[u]) continue;
      require(M.act[u].rows == n, "SingularInput", "probe needs the full algebra action");
      X = X + scaled(M.act[u], x[u]);
      cx = f->add(cx, f->mul(x[u], S.chi_value(u)));
    }
    KMatrix N = X - scaled(KMatrix::identity(f, n), cx);
    require(matrix_power(N, p).is_zero(), "InvariantViolation", "x^p - chi(x)^p does not vanish on M");
    bool free = n % p == 0 && rank(N) == n / p * (p - 1);
    if (!free && !res.obstruction) {
      res.obstruction = true;
      res.witness = x;
      res.witness_desc = desc;
    }
    return !free;
  };
  int nr = S.R.num_roots();
  for (int a = 0; a < nr; ++a) {
    std::vector<elem> x(S.cb.dim(), 0);
    x[a] = 1;
    if (check(x, "x[" + S.R.root(a).str() + "]")) return res;
  }
  std::mt19937 rng(seed);
  const auto& W = S.R.weyl_group();
  for (int t = 0; t < trials; ++t) {
    const WeylElement& w = W[std::uniform_int_distribution<std::size_t>(0, W.size() - 1)(rng)];
    BorelDescriptor bd = borel_descriptor(S.R, w);
    std::vector<elem> x(S.cb.dim(), 0);
    for (int b : bd.positive_part) x[b] = random_elem(f, rng);
    auto xp = p_power_map(S.cb, f, x);
    if (std::any_of(xp.begin(), xp.end(), [](elem v) { return v != 0; })) {
      ++res.rejected;
      continue;
    }
    if (std::all_of(x.begin(), x.end(), [](elem v) { return v == 0; })) continue;
    if (check(x, "random #" + std::to_string(t))) return res;
  }
  return res;
}

// ---- presentations and Ext^1 ----

Presentation presentation(const KModule& M) {
  const SettingPtr& S = M.S;
  FieldRef f = S->f;
  std::size_t n = M.dim();
  Presentation pr;
  EchelonBasis span(f, n);
  std::vector<std::size_t> gens;
  for (std::size_t i = 0; i < n && span.size() < n; ++i) {
    auto e = unit_vec(n, i);
    if (span.contains(e)) continue;
    gens.push_back(i);
    KMatrix T = spin(M, {e});
    for (std::size_t c = 0; c < T.cols; ++c) span.add(T.column(c));
  }
  require(!gens.empty(), "SingularInput", "presentation of the zero module");
  std::vector<KModule> Ps;
  KMatrix pi;
  for (std::size_t i : gens) {
    pr.tops.push_back(M.weights[i]);
    Ps.push_back(torus_projective(S, M.weights[i]));
    KMatrix X = map_from_generator(Ps.back(), M, unit_vec(n, i));
    pi = pi.cols == 0 ? X : hconcat(pi, X);
  }
  pr.P = direct_sum(Ps);
  pr.pi = pi;
  require(rank(pi) == n, "InvariantViolation", "presentation is not onto");
  std::vector<std::vector<elem>> cols;
  for (const auto& k : sorted_keys(pr.P)) {
    auto G = key_indices(pr.P, k);
    KMatrix sub(f, n, G.size());
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < G.size(); ++j) sub(i, j) = pi(i, G[j]);
    KMatrix ns = nullspace(sub);
    for (std::size_t c = 0; c < ns.cols; ++c) {
      std::vector<elem> v(pr.P.dim(), 0);
      for (std::size_t j = 0; j < G.size(); ++j) v[G[j]] = ns(j, c);
      cols.push_back(v);
    }
  }
  pr.omega = matrix_from_columns(f, pr.P.dim(), cols);
  return pr;
}

namespace {
KMatrix flatten(const std::vector<KMatrix>& ms, FieldRef f) {
  if (ms.empty()) return KMatrix(f, 0, 0);
  std::size_t len = ms[0].a.size();
  KMatrix out(f, len, ms.size());
  for (std::size_t c = 0; c < ms.size(); ++c)
    for (std::size_t i = 0; i < len; ++i) out(i, c) = ms[c].a[i];
  return out;
}
}  // namespace

int ext1(const KModule& M, const KModule& N) {
  const SettingPtr& S = M.S;
  FieldRef f = S->f;
  Presentation pr = presentation(M);
  if (pr.omega.cols == 0 || N.dim() == 0) return 0;
  KModule Om = submodule(pr.P, pr.omega);
  auto H = hom_space(Om, N);
  std::vector<KMatrix> restr;
  std::size_t off = 0;
  for (const auto& nu : pr.tops) {
    KModule Pi = torus_projective(S, nu);
    for (std::size_t z : key_indices(N, S->key(nu))) {
      KMatrix X = map_from_generator(Pi, N, unit_vec(N.dim(), z));
      KMatrix full(f, N.dim(), pr.P.dim());
      for (std::size_t i = 0; i < N.dim(); ++i)
        for (std::size_t j = 0; j < Pi.dim(); ++j) full(i, off + j) = X(i, j);
      restr.push_back(full * pr.omega);
    }
    off += Pi.dim();
  }
  std::size_t h = H.size();
  std::size_t r = restr.empty() ? 0 : rank(flatten(restr, f));
  std::vector<KMatrix> all = H;
  all.insert(all.end(), restr.begin(), restr.end());
  require(all.empty() || rank(flatten(all, f)) == h, "InvariantViolation", "restricted maps outside Hom(Omega, N)");
  return static_cast<int>(h - r);
}

KModule random_extension(const KModule& top, const KModule& sub, unsigned seed) {
  FieldRef f = top.S->f;
  Presentation pr = presentation(top);
  std::size_t w = pr.omega.cols;
  KMatrix F(f, sub.dim(), w);
  if (w > 0) {
    KModule Om = submodule(pr.P, pr.omega);
    auto H = hom_space(Om, sub);
    std::mt19937 rng(seed);
    for (const auto& X : H) F = F + scaled(X, random_elem(f, rng));
  }
  KModule D = direct_sum({sub, pr.P});
  std::vector<std::vector<elem>> cols;
  for (std::size_t j = 0; j < w; ++j) {
    std::vector<elem> v(D.dim(), 0);
    for (std::size_t i = 0; i < sub.dim(); ++i) v[i] = F(i, j);
    for (std::size_t i = 0; i < pr.P.dim(); ++i) v[sub.dim() + i] = f->neg(pr.omega(i, j));
    cols.push_back(v);
  }
  KModule E = w ? quotient(D, matrix_from_columns(f, D.dim(), cols)) : D;
  E.name = "ext(" + top.name + "," + sub.name + ";" + std::to_string(seed) + ")";
  return E;
}

// ---- caches and the exact projectivity test ----

const KModule& RepCache::head(const Weight& mu) {
  Weight lab = S_->L.label(mu);
  auto it = heads_.find(lab);
  if (it == heads_.end()) it = heads_.emplace(lab, simple_head(S_, mu)).first;
  return it->second;
}

const ProjectiveCover& RepCache::cover(const Weight& mu) {
  Weight lab = S_->L.label(mu);
  auto it = covers_.find(lab);
  if (it == covers_.end())
    it = covers_.emplace(lab, std::make_unique<ProjectiveCover>(projective_cover(S_, mu, seed_))).first;
  return *it->second;
}

const std::vector<SimpleFactor>& RepCache::verma_factors(const Weight& mu) {
  auto it = vf_.find(mu);
  if (it == vf_.end())
    it = vf_.emplace(mu, composition_series(induce_verma(S_, mu, S_->R.weyl_group()[0]), seed_)).first;
  return it->second;
}

std::map<Weight, int> head_multiplicities(const KModule& M, RepCache& cache, unsigned seed) {
  std::map<Weight, Weight> reps;
  for (const auto& x : composition_series(M, seed)) reps.emplace(x.label, x.weight);
  std::map<Weight, int> out;
  for (const auto& [lab, w] : reps) {
    const KModule& L = cache.head(w);
    int m = static_cast<int>(hom_space(M, L).size());
    if (m) out[lab] = m;
  }
  return out;
}

bool is_projective_exact(const KModule& M, RepCache& cache, unsigned seed) {
  std::size_t total = 0;
  for (const auto& [lab, m] : head_multiplicities(M, cache, seed)) total += m * cache.cover(lab).Q.dim();
  return total == M.dim();
}

}  // namespace vwb
