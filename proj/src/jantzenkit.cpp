#include "vwb/jantzenkit.hpp"

#include <algorithm>
#include <map>
#include <random>

#include "vwb/errors.hpp"

namespace vwb {

namespace {

std::map<Key, std::vector<std::size_t>> key_blocks(const Setting& S, const std::vector<Weight>& w) {
  std::map<Key, std::vector<std::size_t>> out;
  for (std::size_t i = 0; i < w.size(); ++i) out[S.key(w[i])].push_back(i);
  return out;
}

Character span_character(const std::vector<Key>& keys, const std::vector<int>& a, int j) {
  Character ch;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] >= j) ch[keys[i]] += 1;
  return ch;
}

Character operator+(Character a, const Character& b) {
  for (const auto& [k, m] : b) a[k] += m;
  return a;
}

Character normalized(Character a) {
  for (auto it = a.begin(); it != a.end();) it = it->second == 0 ? a.erase(it) : std::next(it);
  return a;
}

std::vector<Layer> layers_from(const Setting& S, const KeySmith& ks, std::size_t n) {
  std::vector<Layer> out;
  int top = 0;
  for (int e : ks.exponents) top = std::max(top, e);
  for (int j = 0; j <= top + 1; ++j) {
    Layer L;
    L.j = j;
    std::vector<std::vector<elem>> cols;
    for (std::size_t i = 0; i < ks.exponents.size(); ++i)
      if (ks.exponents[i] >= j) cols.push_back(ks.source_basis.column(i));
    L.basis = matrix_from_columns(S.f, n, cols);
    L.dim = cols.size();
    L.ch = span_character(ks.keys, ks.exponents, j);
    out.push_back(std::move(L));
  }
  return out;
}

}  // namespace

KeySmith key_smith(const AModule& M, const AModule& N, const PolyMatrix& X, int prec) {
  const Setting& S = *M.S;
  FieldRef f = S.f;
  require(X.rows == N.dim() && X.cols == M.dim(), "SingularInput", "map has the wrong shape");
  auto bm = key_blocks(S, M.weights), bn = key_blocks(S, N.weights);
  for (std::size_t i = 0; i < X.rows; ++i)
    for (std::size_t j = 0; j < X.cols; ++j)
      require(X(i, j).is_zero() || N.key(i) == M.key(j), "SingularInput", "map does not preserve keys");
  KeySmith out;
  std::vector<std::vector<elem>> src, tgt;
  for (const auto& [k, cols] : bm) {
    auto it = bn.find(k);
    std::vector<std::size_t> rows = it == bn.end() ? std::vector<std::size_t>{} : it->second;
    SeriesMatrix B(f, rows.size(), cols.size(), prec);
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < cols.size(); ++j) B(i, j) = Series::from_poly(X(rows[i], cols[j]), prec);
    SmithForm sf = smith_form(B);
    KMatrix V = sf.V.mod_t(), Ui = sf.Uinv.mod_t();
    for (std::size_t c = 0; c < cols.size(); ++c) {
      int e = c < sf.exponents.size() ? sf.exponents[c] : prec;
      require(e < prec, "TruncationExceeded", "Smith pivot beyond precision for key " + k.str());
      out.exponents.push_back(e);
      out.keys.push_back(k);
      std::vector<elem> v(M.dim(), 0), w(N.dim(), 0);
      for (std::size_t j = 0; j < cols.size(); ++j) v[cols[j]] = V(j, c);
      if (c < rows.size())
        for (std::size_t i = 0; i < rows.size(); ++i) w[rows[i]] = Ui(i, c);
      src.push_back(v);
      tgt.push_back(w);
    }
  }
  out.source_basis = matrix_from_columns(f, M.dim(), src);
  out.target_basis = matrix_from_columns(f, N.dim(), tgt);
  return out;
}

JantzenReport jantzen_filtration(const ChainData& C) {
  const Setting& S = *C.S;
  JantzenReport r;
  r.lambda = C.lambda;
  r.levi = S.D.I;
  r.p = S.p;
  r.N = n_of_lambda(S.R, S.D, C.lambda, S.p);
  const AModule& Z = C.Z.front();
  const AModule& Zw = C.Z.back();
  int prec = r.N + 2;
  KeySmith ks = key_smith(Zw, Z, C.varpip, prec);
  KeySmith ksp = key_smith(Z, Zw, C.varpi, prec);
  r.exponents = ks.exponents;
  r.exponents_prime = ksp.exponents;
  std::sort(r.exponents.begin(), r.exponents.end());
  std::sort(r.exponents_prime.begin(), r.exponents_prime.end());
  r.twisted_layers = layers_from(S, ks, Zw.dim());
  r.layers = layers_from(S, ksp, Z.dim());
  r.full = character(Z);
  KModule zk = specialize(Z), zwk = specialize(Zw);
  r.layers_are_submodules = true;
  for (const auto& L : r.layers) r.layers_are_submodules = r.layers_are_submodules && is_stable(zk, L.basis);
  for (const auto& L : r.twisted_layers)
    r.layers_are_submodules = r.layers_are_submodules && is_stable(zwk, L.basis);
  r.length = 0;
  for (const auto& L : r.layers)
    if (L.j >= 1 && L.dim > 0) r.length = L.j;
  return r;
}

JantzenReport jantzen_filtration(const SettingPtr& S, const Weight& lambda) {
  return jantzen_filtration(build_chain(S, lambda));
}

int duality_check(const JantzenReport& r) {
  auto layer_ch = [](const std::vector<Layer>& ls, int j) {
    for (const auto& L : ls)
      if (L.j == j) return L.ch;
    return Character{};
  };
  for (int j = 1; j <= r.N; ++j) {
    Character s = layer_ch(r.twisted_layers, j) + layer_ch(r.layers, r.N - j + 1);
    if (normalized(s) != normalized(r.full)) return j;
  }
  return 0;
}

std::optional<KMatrix> find_isomorphism(const KModule& M, const KModule& N, unsigned seed) {
  if (M.dim() != N.dim()) return std::nullopt;
  if (M.dim() == 0) return KMatrix(M.S->f, 0, 0);
  auto H = hom_space(M, N);
  if (H.empty()) return std::nullopt;
  for (const auto& X : H)
    if (rank(X) == M.dim()) return X;
  FieldRef f = M.S->f;
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> d(0, static_cast<int>(f->order()) - 1);
  for (int tries = 0; tries < 64; ++tries) {
    KMatrix X(f, N.dim(), M.dim());
    for (const auto& h : H) X = X + scaled(h, static_cast<elem>(d(rng)));
    if (rank(X) == M.dim()) return X;
  }
  return std::nullopt;
}

SumFormula verma_sum_formula(const ChainData& C, const JantzenReport& r) {
  const Setting& S = *C.S;
  SumFormula out;
  for (const auto& L : r.layers)
    if (L.j >= 1) out.lhs = out.lhs + L.ch;
  out.ker_coker_iso = true;
  out.torsion_ok = true;
  for (int i = 0; i < C.N; ++i) {
    KModule Zi = specialize(C.Z[i]), Zn = specialize(C.Z[i + 1]);
    KMatrix ph = specialize(C.phi[i]);
    // coker character: per key, dim minus rank of the block
    Character ck = character(Zn);
    auto bi = key_blocks(S, Zi.weights), bn = key_blocks(S, Zn.weights);
    for (const auto& [k, rows] : bn) {
      auto it = bi.find(k);
      if (it == bi.end()) continue;
      KMatrix B(S.f, rows.size(), it->second.size());
      for (std::size_t a = 0; a < rows.size(); ++a)
        for (std::size_t b = 0; b < it->second.size(); ++b) B(a, b) = ph(rows[a], it->second[b]);
      ck[k] -= static_cast<int>(rank(B));
    }
    ck = normalized(ck);
    out.cokernels.push_back(ck);
    out.rhs = out.rhs + ck;
    // ker φ̄_i ≅ coker φ̄_i as modules
    KModule ker = submodule(Zi, nullspace(ph));
    KMatrix im = column_space(ph);
    KModule cok = quotient(Zn, im);
    if (!find_isomorphism(ker, cok)) {
      out.ker_coker_iso = false;
      if (out.failure.empty()) out.failure = "ker/coker of phi_" + std::to_string(i + 1);
    }
    // t C_i = 0: elementary divisors of φ_i are at most t
    KeySmith ks = key_smith(C.Z[i], C.Z[i + 1], C.phi[i], 3);
    for (int e : ks.exponents) out.torsion_ok = out.torsion_ok && e <= 1;
  }
  out.lhs = normalized(out.lhs);
  out.rhs = normalized(out.rhs);
  out.equal = out.lhs == out.rhs;
  if (!out.equal && out.failure.empty()) out.failure = "sum formula characters differ";
  return out;
}

JantzenReport jantzen_report(const SettingPtr& S, const Weight& lambda) {
  ChainData C = build_chain(S, lambda);
  JantzenReport r = jantzen_filtration(C);
  int j = duality_check(r);
  r.duality = j == 0;
  if (j) r.failure = "duality fails at j=" + std::to_string(j);
  SumFormula sf = verma_sum_formula(C, r);
  r.sum_formula = sf.equal;
  r.ker_coker = sf.ker_coker_iso;
  if (r.failure.empty()) r.failure = sf.failure;
  return r;
}

}  // namespace vwb
