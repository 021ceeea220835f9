#include "vwb/chevalley.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>

#include "vwb/errors.hpp"

namespace vwb {

namespace {

IntMatrix zeros(int n) { return IntMatrix(n, std::vector<int>(n, 0)); }

IntMatrix unit(int n, int i, int j) {
  IntMatrix m = zeros(n);
  m[i][j] = 1;
  return m;
}

IntMatrix madd(const IntMatrix& a, const IntMatrix& b, int s = 1) {
  IntMatrix m = a;
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) m[i][j] += s * b[i][j];
  return m;
}

IntMatrix mtranspose(const IntMatrix& a) {
  IntMatrix m = zeros(static_cast<int>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a.size(); ++j) m[j][i] = a[i][j];
  return m;
}

IntMatrix commutator(const IntMatrix& a, const IntMatrix& b) { return madd(matmul(a, b), matmul(b, a), -1); }

IntMatrix diag(std::vector<int> d) {
  IntMatrix m = zeros(static_cast<int>(d.size()));
  for (std::size_t i = 0; i < d.size(); ++i) m[i][i] = d[i];
  return m;
}

// positive root vectors, keyed by simple-root coordinates, plus the h_i
struct Realization {
  std::map<std::vector<int>, IntMatrix> pos;
  std::vector<IntMatrix> h;
};

Realization realization(RootType t) {
  Realization r;
  switch (t) {
    case RootType::A1:
      r.pos[{1}] = unit(2, 0, 1);
      r.h = {diag({1, -1})};
      break;
    case RootType::A1xA1:
      r.pos[{1, 0}] = unit(4, 0, 1);
      r.pos[{0, 1}] = unit(4, 2, 3);
      r.h = {diag({1, -1, 0, 0}), diag({0, 0, 1, -1})};
      break;
    case RootType::A2:
      r.pos[{1, 0}] = unit(3, 0, 1);
      r.pos[{0, 1}] = unit(3, 1, 2);
      r.pos[{1, 1}] = unit(3, 0, 2);
      r.h = {diag({1, -1, 0}), diag({0, 1, -1})};
      break;
    case RootType::B2:
      // sp4 preserving the form with partner pairs (1,3), (2,4); α1 = 2ε2, α2 = ε1-ε2
      r.pos[{1, 0}] = unit(4, 1, 3);
      r.pos[{0, 1}] = madd(unit(4, 0, 1), unit(4, 3, 2), -1);
      r.pos[{1, 1}] = madd(unit(4, 0, 3), unit(4, 1, 2));
      r.pos[{1, 2}] = unit(4, 0, 2);
      r.h = {diag({0, 1, 0, -1}), diag({1, -1, -1, 1})};
      break;
  }
  return r;
}

}  // namespace

ChevalleyBasis ChevalleyBasis::build(const RootSystem& R) {
  ChevalleyBasis cb;
  cb.R_ = R;
  cb.nroots_ = R.num_roots();
  cb.rank_ = R.rank();
  Realization real = realization(R.type());
  cb.mats_.resize(cb.dim());
  for (int a = 0; a < cb.nroots_; ++a) {
    if (R.is_positive(a)) {
      auto it = real.pos.find(R.root_coords(a));
      require(it != real.pos.end(), "UnsupportedType", "missing root vector");
      cb.mats_[a] = it->second;
      cb.mats_[R.negative(a)] = mtranspose(it->second);
    }
  }
  for (int i = 0; i < cb.rank_; ++i) cb.mats_[cb.nroots_ + i] = real.h[i];

  // decompose brackets of the realization into the basis
  int d = cb.dim();
  cb.table_.assign(d * d, std::vector<int>(d, 0));
  auto hcomb = [&](const std::vector<int>& k) {
    IntMatrix m = zeros(static_cast<int>(real.h[0].size()));
    for (int i = 0; i < cb.rank_; ++i) m = madd(m, real.h[i], k[i]);
    return m;
  };
  for (int u = 0; u < d; ++u)
    for (int v = 0; v < d; ++v) {
      IntMatrix br = commutator(cb.mats_[u], cb.mats_[v]);
      std::vector<int>& out = cb.table_[u * d + v];
      IntMatrix expect = zeros(static_cast<int>(br.size()));
      bool ur = u < cb.nroots_, vr = v < cb.nroots_;
      if (ur && vr) {
        if (v == R.negative(u)) {
          const auto& k = R.coroot_coords(u);
          for (int i = 0; i < cb.rank_; ++i) out[cb.nroots_ + i] = k[i];
          expect = hcomb(k);
        } else if (auto c = R.find_root(R.root(u) + R.root(v))) {
          // ratio against the target root vector
          const IntMatrix& xc = cb.mats_[*c];
          int n = 0;
          for (std::size_t i = 0; i < br.size() && n == 0; ++i)
            for (std::size_t j = 0; j < br.size(); ++j)
              if (xc[i][j] != 0) {
                n = br[i][j] / xc[i][j];
                break;
              }
          out[*c] = n;
          expect = madd(expect, xc, n);
        }
      } else if (ur && !vr) {
        int n = -R.root(u)[v - cb.nroots_];
        out[u] = n;
        expect = madd(expect, cb.mats_[u], n);
      } else if (!ur && vr) {
        int n = R.root(v)[u - cb.nroots_];
        out[v] = n;
        expect = madd(expect, cb.mats_[v], n);
      }
      require(br == expect, "UnsupportedType", "realization does not match the root data");
    }

  // self-check: antisymmetry, Jacobi, N range
  for (int u = 0; u < d; ++u)
    for (int v = 0; v < d; ++v) {
      for (int w = 0; w < d; ++w)
        require(cb.table_[u * d + v][w] == -cb.table_[v * d + u][w], "UnsupportedType", "antisymmetry");
      for (int w = 0; w < d; ++w) {
        std::vector<int> s(d, 0);
        auto acc = [&](int a, int b, int c) {
          // [a,[b,c]]
          const auto& bc = cb.table_[b * d + c];
          for (int x = 0; x < d; ++x)
            if (bc[x])
              for (int y = 0; y < d; ++y) s[y] += bc[x] * cb.table_[a * d + x][y];
        };
        acc(u, v, w);
        acc(v, w, u);
        acc(w, u, v);
        for (int y = 0; y < d; ++y) require(s[y] == 0, "UnsupportedType", "Jacobi identity fails");
      }
    }
  for (int a = 0; a < cb.nroots_; ++a)
    for (int b = 0; b < cb.nroots_; ++b) {
      int n = cb.N(a, b);
      bool is_root = b != R.negative(a) && R.find_root(R.root(a) + R.root(b)).has_value();
      require(is_root ? (n != 0 && std::abs(n) <= 2) : n == 0, "UnsupportedType", "structure constant range");
    }
  return cb;
}

int ChevalleyBasis::N(int a, int b) const {
  if (b == R_.negative(a)) return 0;
  auto c = R_.find_root(R_.root(a) + R_.root(b));
  if (!c) return 0;
  return bracket(a, b)[*c];
}

IntMatrix ChevalleyBasis::ad(int u) const {
  int d = dim();
  IntMatrix m = zeros(d);
  for (int v = 0; v < d; ++v)
    for (int w = 0; w < d; ++w) m[w][v] = bracket(u, v)[w];
  return m;
}

bool PChar::vanishes_on(const std::vector<int>& basis_indices) const {
  for (int u : basis_indices)
    if (values[u] != 0) return false;
  return true;
}

PChar standard_levi_pchar(const ChevalleyBasis& cb, const LeviDatum& D) {
  PChar chi;
  chi.values.assign(cb.dim(), 0);
  for (int i : D.I) chi.values[cb.roots().negative(cb.roots().simple(i))] = 1;
  return chi;
}

KMatrix ad_matrix(const ChevalleyBasis& cb, FieldRef f, const std::vector<elem>& x) {
  int d = cb.dim();
  KMatrix m(f, d, d);
  for (int u = 0; u < d; ++u) {
    if (x[u] == 0) continue;
    for (int v = 0; v < d; ++v)
      for (int w = 0; w < d; ++w) {
        int c = cb.bracket(u, v)[w];
        if (c) m(w, v) = f->add(m(w, v), f->mul(x[u], f->from_int(c)));
      }
  }
  return m;
}

std::vector<elem> p_power_map(const ChevalleyBasis& cb, FieldRef f, const std::vector<elem>& x) {
  int d = cb.dim();
  KMatrix target = matrix_power(ad_matrix(cb, f, x), f->characteristic());
  // ad is injective (trivial centre at good p): solve Σ y_u ad(b_u) = target
  KMatrix sys(f, d * d, d);
  for (int u = 0; u < d; ++u) {
    std::vector<elem> e(d, 0);
    e[u] = 1;
    KMatrix a = ad_matrix(cb, f, e);
    for (std::size_t k = 0; k < a.a.size(); ++k) sys(k, u) = a.a[k];
  }
  KMatrix rhs(f, d * d, 1);
  for (std::size_t k = 0; k < target.a.size(); ++k) rhs(k, 0) = target.a[k];
  require(rank(sys) == static_cast<std::size_t>(d), "SingularInput", "adjoint representation not faithful");
  auto sol = solve(sys, rhs);
  require(sol.has_value(), "SingularInput", "p-th power outside ad(g)");
  return sol->column(0);
}

std::vector<int> TauMap::apply(const ChevalleyBasis& cb, int u) const {
  std::vector<int> v(cb.dim(), 0);
  if (cb.is_root_index(u)) {
    v[image[u]] = sign[u];
  } else {
    int i = u - cb.num_roots();
    for (int j = 0; j < cb.roots().rank(); ++j) v[cb.h_index(j)] = h_image[i][j];
  }
  return v;
}

TauMap tau_map(const ChevalleyBasis& cb, const LeviDatum& D, const PChar& chi) {
  const RootSystem& R = cb.roots();
  int nr = cb.num_roots(), d = cb.dim();
  TauMap tau;
  tau.image.resize(nr);
  for (int a = 0; a < nr; ++a) tau.image[a] = R.negative(R.act_on_root(D.wI, a));
  tau.h_image.assign(R.rank(), std::vector<int>(R.rank(), 0));
  for (int i = 0; i < R.rank(); ++i) tau.h_image[i] = R.coroot_coords(R.negative(R.act_on_root(D.wI, R.simple(i))));

  auto vec_apply = [&](const std::vector<int>& x) {
    std::vector<int> y(d, 0);
    for (int u = 0; u < d; ++u)
      if (x[u]) {
        auto t = tau.apply(cb, u);
        for (int w = 0; w < d; ++w) y[w] += x[u] * t[w];
      }
    return y;
  };
  auto bracket_vec = [&](const std::vector<int>& x, const std::vector<int>& y) {
    std::vector<int> z(d, 0);
    for (int u = 0; u < d; ++u)
      if (x[u])
        for (int v = 0; v < d; ++v)
          if (y[v])
            for (int w = 0; w < d; ++w) z[w] += x[u] * y[v] * cb.bracket(u, v)[w];
    return z;
  };

  for (long mask = 0; mask < (1L << nr); ++mask) {
    tau.sign.assign(nr, 1);
    for (int a = 0; a < nr; ++a)
      if (mask & (1L << a)) tau.sign[a] = -1;
    bool ok = true;
    for (int u = 0; u < d && ok; ++u) {
      std::vector<int> e(d, 0);
      e[u] = 1;
      if (vec_apply(vec_apply(e)) != e) ok = false;
      // χ∘τ = -χ
      auto tu = tau.apply(cb, u);
      int val = 0;
      for (int w = 0; w < d; ++w) val += tu[w] * chi.values[w];
      if (val != -chi.values[u]) ok = false;
    }
    for (int u = 0; u < d && ok; ++u)
      for (int v = u + 1; v < d && ok; ++v) {
        std::vector<int> eu(d, 0), ev(d, 0);
        eu[u] = 1;
        ev[v] = 1;
        if (vec_apply(bracket_vec(eu, ev)) != bracket_vec(tau.apply(cb, u), tau.apply(cb, v))) ok = false;
      }
    if (ok) return tau;
  }
  throw Error("UnsupportedType", "no sign choice makes tau an involutive automorphism");
}

BorelDescriptor borel_descriptor(const RootSystem& R, const WeylElement& w) {
  BorelDescriptor b;
  b.w = w;
  for (int a = 0; a < R.num_roots(); ++a) {
    int wa = R.act_on_root(w, a);
    (R.is_positive(a) ? b.positive_part : b.negative_part).push_back(wa);
  }
  std::sort(b.negative_part.begin(), b.negative_part.end());
  std::sort(b.positive_part.begin(), b.positive_part.end());
  return b;
}

}  // namespace vwb
