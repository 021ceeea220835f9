#include "vwb/linalg.hpp"

#include <algorithm>

#include "vwb/errors.hpp"

namespace vwb {

// ---------- KMatrix ----------

KMatrix KMatrix::identity(FieldRef f, std::size_t n) {
  KMatrix m(f, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

bool KMatrix::is_zero() const {
  return std::all_of(a.begin(), a.end(), [](elem x) { return x == 0; });
}

std::vector<elem> KMatrix::column(std::size_t j) const {
  std::vector<elem> v(rows);
  for (std::size_t i = 0; i < rows; ++i) v[i] = (*this)(i, j);
  return v;
}

void KMatrix::set_column(std::size_t j, const std::vector<elem>& v) {
  for (std::size_t i = 0; i < rows; ++i) (*this)(i, j) = v[i];
}

KMatrix operator*(const KMatrix& x, const KMatrix& y) {
  require(x.cols == y.rows, "SingularInput", "matrix shape mismatch in product");
  FieldRef f = x.f ? x.f : y.f;
  KMatrix r(f, x.rows, y.cols);
  for (std::size_t i = 0; i < x.rows; ++i)
    for (std::size_t k = 0; k < x.cols; ++k) {
      elem c = x(i, k);
      if (!c) continue;
      const elem* yr = &y.a[k * y.cols];
      elem* rr = &r.a[i * r.cols];
      for (std::size_t j = 0; j < y.cols; ++j)
        if (yr[j]) rr[j] = f->add(rr[j], f->mul(c, yr[j]));
    }
  return r;
}

KMatrix operator+(const KMatrix& x, const KMatrix& y) {
  require(x.rows == y.rows && x.cols == y.cols, "SingularInput", "matrix shape mismatch in sum");
  KMatrix r = x;
  for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] = x.f->add(x.a[i], y.a[i]);
  return r;
}

KMatrix operator-(const KMatrix& x, const KMatrix& y) {
  require(x.rows == y.rows && x.cols == y.cols, "SingularInput", "matrix shape mismatch in difference");
  KMatrix r = x;
  for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] = x.f->sub(x.a[i], y.a[i]);
  return r;
}

KMatrix scaled(const KMatrix& x, elem s) {
  KMatrix r = x;
  for (auto& v : r.a) v = x.f->mul(v, s);
  return r;
}

KMatrix transpose(const KMatrix& x) {
  KMatrix r(x.f, x.cols, x.rows);
  for (std::size_t i = 0; i < x.rows; ++i)
    for (std::size_t j = 0; j < x.cols; ++j) r(j, i) = x(i, j);
  return r;
}

std::vector<elem> matvec(const KMatrix& x, const std::vector<elem>& v) {
  std::vector<elem> r(x.rows, 0);
  for (std::size_t i = 0; i < x.rows; ++i) {
    elem s = 0;
    const elem* xr = &x.a[i * x.cols];
    for (std::size_t j = 0; j < x.cols; ++j)
      if (xr[j] && v[j]) s = x.f->add(s, x.f->mul(xr[j], v[j]));
    r[i] = s;
  }
  return r;
}

KMatrix column_block(const KMatrix& x, std::size_t c0, std::size_t n) {
  KMatrix r(x.f, x.rows, n);
  for (std::size_t i = 0; i < x.rows; ++i)
    for (std::size_t j = 0; j < n; ++j) r(i, j) = x(i, c0 + j);
  return r;
}

KMatrix hconcat(const KMatrix& x, const KMatrix& y) {
  require(x.rows == y.rows, "SingularInput", "hconcat row mismatch");
  KMatrix r(x.f ? x.f : y.f, x.rows, x.cols + y.cols);
  for (std::size_t i = 0; i < x.rows; ++i) {
    for (std::size_t j = 0; j < x.cols; ++j) r(i, j) = x(i, j);
    for (std::size_t j = 0; j < y.cols; ++j) r(i, x.cols + j) = y(i, j);
  }
  return r;
}

KMatrix matrix_from_columns(FieldRef f, std::size_t rows, const std::vector<std::vector<elem>>& cols) {
  KMatrix r(f, rows, cols.size());
  for (std::size_t j = 0; j < cols.size(); ++j) r.set_column(j, cols[j]);
  return r;
}

namespace {

// In-place reduced row echelon form; returns pivot columns.
std::vector<std::size_t> rref(KMatrix& m, std::size_t ncols_to_pivot) {
  FieldRef f = m.f;
  std::vector<std::size_t> piv;
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols_to_pivot && r < m.rows; ++c) {
    std::size_t s = r;
    while (s < m.rows && m(s, c) == 0) ++s;
    if (s == m.rows) continue;
    if (s != r)
      for (std::size_t j = 0; j < m.cols; ++j) std::swap(m(s, j), m(r, j));
    elem iv = f->inv(m(r, c));
    for (std::size_t j = c; j < m.cols; ++j) m(r, j) = f->mul(m(r, j), iv);
    for (std::size_t i = 0; i < m.rows; ++i) {
      if (i == r || m(i, c) == 0) continue;
      elem q = m(i, c);
      for (std::size_t j = c; j < m.cols; ++j)
        if (m(r, j)) m(i, j) = f->sub(m(i, j), f->mul(q, m(r, j)));
    }
    piv.push_back(c);
    ++r;
  }
  return piv;
}

}  // namespace

std::size_t rank(KMatrix x) {
  if (x.rows == 0 || x.cols == 0) return 0;
  // row echelon only, no back substitution
  FieldRef f = x.f;
  std::size_t r = 0;
  for (std::size_t c = 0; c < x.cols && r < x.rows; ++c) {
    std::size_t s = r;
    while (s < x.rows && x(s, c) == 0) ++s;
    if (s == x.rows) continue;
    if (s != r)
      for (std::size_t j = c; j < x.cols; ++j) std::swap(x(s, j), x(r, j));
    elem iv = f->inv(x(r, c));
    for (std::size_t i = r + 1; i < x.rows; ++i) {
      if (x(i, c) == 0) continue;
      elem q = f->mul(x(i, c), iv);
      for (std::size_t j = c; j < x.cols; ++j)
        if (x(r, j)) x(i, j) = f->sub(x(i, j), f->mul(q, x(r, j)));
    }
    ++r;
  }
  return r;
}

KMatrix nullspace(const KMatrix& x) {
  KMatrix m = x;
  std::vector<std::size_t> piv = (m.rows ? rref(m, m.cols) : std::vector<std::size_t>{});
  std::vector<bool> is_piv(x.cols, false);
  for (auto c : piv) is_piv[c] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < x.cols; ++c)
    if (!is_piv[c]) free_cols.push_back(c);
  KMatrix n(x.f, x.cols, free_cols.size());
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    std::size_t fc = free_cols[k];
    n(fc, k) = 1;
    for (std::size_t r = 0; r < piv.size(); ++r) n(piv[r], k) = x.f->neg(m(r, fc));
  }
  return n;
}

std::optional<KMatrix> solve(const KMatrix& A, const KMatrix& B) {
  require(A.rows == B.rows, "SingularInput", "solve shape mismatch");
  KMatrix m = hconcat(A, B);
  std::vector<std::size_t> piv = rref(m, A.cols);
  for (std::size_t r = piv.size(); r < m.rows; ++r)
    for (std::size_t j = A.cols; j < m.cols; ++j)
      if (m(r, j)) return std::nullopt;
  KMatrix X(A.f ? A.f : B.f, A.cols, B.cols);
  for (std::size_t r = 0; r < piv.size(); ++r)
    for (std::size_t j = 0; j < B.cols; ++j) X(piv[r], j) = m(r, A.cols + j);
  return X;
}

KMatrix inverse(const KMatrix& A) {
  require(A.rows == A.cols, "SingularInput", "inverse of non-square matrix");
  KMatrix m = hconcat(A, KMatrix::identity(A.f, A.rows));
  std::vector<std::size_t> piv = rref(m, A.cols);
  if (piv.size() != A.rows) throw Error("SingularInput", "matrix is not invertible");
  return column_block(m, A.cols, A.rows);
}

KMatrix matrix_power(const KMatrix& A, long long e) {
  KMatrix r = KMatrix::identity(A.f, A.rows), b = A;
  while (e) {
    if (e & 1) r = r * b;
    e >>= 1;
    if (e) b = b * b;
  }
  return r;
}

KMatrix column_space(const KMatrix& x) {
  KMatrix m = x;
  std::vector<std::size_t> piv = (m.rows ? rref(m, m.cols) : std::vector<std::size_t>{});
  KMatrix r(x.f, x.rows, piv.size());
  for (std::size_t k = 0; k < piv.size(); ++k) r.set_column(k, x.column(piv[k]));
  return r;
}

int EchelonBasis::reduce(std::vector<elem>& v) const {
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    elem c = v[piv_[k]];
    if (!c) continue;
    const auto& row = rows_[k];
    for (std::size_t j = 0; j < n_; ++j)
      if (row[j]) v[j] = f_->sub(v[j], f_->mul(c, row[j]));
  }
  for (std::size_t j = 0; j < n_; ++j)
    if (v[j]) return static_cast<int>(j);
  return -1;
}

bool EchelonBasis::add(std::vector<elem> v) {
  std::vector<elem> orig = v;
  int p = reduce(v);
  if (p < 0) return false;
  elem iv = f_->inv(v[p]);
  for (auto& x : v) x = f_->mul(x, iv);
  rows_.push_back(std::move(v));
  piv_.push_back(p);
  gens_.push_back(std::move(orig));
  return true;
}

// ---------- PolyMatrix ----------

PolyMatrix PolyMatrix::identity(FieldRef f, std::size_t n) {
  PolyMatrix m(f, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Poly(f, 1);
  return m;
}

PolyMatrix PolyMatrix::from_k(const KMatrix& k) {
  PolyMatrix m(k.f, k.rows, k.cols);
  for (std::size_t i = 0; i < k.a.size(); ++i) m.a[i] = Poly(k.f, k.a[i]);
  return m;
}

bool PolyMatrix::is_zero() const {
  return std::all_of(a.begin(), a.end(), [](const Poly& x) { return x.is_zero(); });
}

int PolyMatrix::max_degree() const {
  int d = -1;
  for (const auto& x : a) d = std::max(d, x.degree());
  return d;
}

std::vector<Poly> PolyMatrix::column(std::size_t j) const {
  std::vector<Poly> v(rows);
  for (std::size_t i = 0; i < rows; ++i) v[i] = (*this)(i, j);
  return v;
}

PolyMatrix operator*(const PolyMatrix& x, const PolyMatrix& y) {
  require(x.cols == y.rows, "SingularInput", "matrix shape mismatch in product");
  FieldRef f = x.f ? x.f : y.f;
  PolyMatrix r(f, x.rows, y.cols);
  for (std::size_t i = 0; i < x.rows; ++i)
    for (std::size_t k = 0; k < x.cols; ++k) {
      const Poly& c = x(i, k);
      if (c.is_zero()) continue;
      for (std::size_t j = 0; j < y.cols; ++j) {
        const Poly& d = y(k, j);
        if (!d.is_zero()) r(i, j) += c * d;
      }
    }
  return r;
}

PolyMatrix operator+(const PolyMatrix& x, const PolyMatrix& y) {
  require(x.rows == y.rows && x.cols == y.cols, "SingularInput", "matrix shape mismatch in sum");
  PolyMatrix r = x;
  for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] += y.a[i];
  return r;
}

PolyMatrix operator-(const PolyMatrix& x, const PolyMatrix& y) {
  require(x.rows == y.rows && x.cols == y.cols, "SingularInput", "matrix shape mismatch in difference");
  PolyMatrix r = x;
  for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] -= y.a[i];
  return r;
}

PolyMatrix scaled(const PolyMatrix& x, const Poly& s) {
  PolyMatrix r = x;
  for (auto& v : r.a) v = v * s;
  return r;
}

PolyMatrix transpose(const PolyMatrix& x) {
  PolyMatrix r(x.f, x.cols, x.rows);
  for (std::size_t i = 0; i < x.rows; ++i)
    for (std::size_t j = 0; j < x.cols; ++j) r(j, i) = x(i, j);
  return r;
}

std::vector<Poly> matvec(const PolyMatrix& x, const std::vector<Poly>& v) {
  std::vector<Poly> r(x.rows, Poly(x.f));
  for (std::size_t i = 0; i < x.rows; ++i)
    for (std::size_t j = 0; j < x.cols; ++j)
      if (!x(i, j).is_zero() && !v[j].is_zero()) r[i] += x(i, j) * v[j];
  return r;
}

KMatrix specialize(const PolyMatrix& x) {
  KMatrix r(x.f, x.rows, x.cols);
  for (std::size_t i = 0; i < x.a.size(); ++i) r.a[i] = x.a[i].constant();
  return r;
}

KMatrix specialize_vectors(FieldRef f, const std::vector<std::vector<Poly>>& vs) {
  std::size_t n = vs.empty() ? 0 : vs[0].size();
  KMatrix r(f, n, vs.size());
  for (std::size_t j = 0; j < vs.size(); ++j)
    for (std::size_t i = 0; i < n; ++i) r(i, j) = vs[j][i].constant();
  return r;
}

namespace {

struct RatRref {
  std::vector<std::vector<RatFunc>> m;
  std::vector<std::size_t> piv;
};

RatRref rat_rref(const PolyMatrix& S) {
  RatRref out;
  out.m.assign(S.rows, std::vector<RatFunc>(S.cols));
  for (std::size_t i = 0; i < S.rows; ++i)
    for (std::size_t j = 0; j < S.cols; ++j) out.m[i][j] = RatFunc(S(i, j).field() ? S(i, j) : Poly(S.f));
  auto& m = out.m;
  std::size_t r = 0;
  for (std::size_t c = 0; c < S.cols && r < S.rows; ++c) {
    // prefer a constant pivot to keep degrees low
    std::size_t s = S.rows;
    for (std::size_t i = r; i < S.rows; ++i) {
      if (m[i][c].is_zero()) continue;
      if (s == S.rows) s = i;
      if (m[i][c].num().degree() == 0 && m[i][c].den().degree() == 0) {
        s = i;
        break;
      }
    }
    if (s == S.rows) continue;
    std::swap(m[s], m[r]);
    RatFunc iv = RatFunc(Poly(S.f, 1)) / m[r][c];
    for (std::size_t j = c; j < S.cols; ++j)
      if (!m[r][j].is_zero()) m[r][j] = m[r][j] * iv;
    for (std::size_t i = 0; i < S.rows; ++i) {
      if (i == r || m[i][c].is_zero()) continue;
      RatFunc q = m[i][c];
      for (std::size_t j = c; j < S.cols; ++j)
        if (!m[r][j].is_zero()) m[i][j] = m[i][j] - q * m[r][j];
    }
    out.piv.push_back(c);
    ++r;
  }
  return out;
}

Poly lcm(const Poly& a, const Poly& b) {
  Poly g = gcd(a, b);
  Poly q, r;
  (a * b).divmod(g, q, r);
  return q.monic();
}

}  // namespace

std::vector<std::vector<Poly>> kernel_fraction(const PolyMatrix& S) {
  std::vector<std::vector<Poly>> out;
  if (S.rows == 0) {
    for (std::size_t c = 0; c < S.cols; ++c) {
      std::vector<Poly> v(S.cols, Poly(S.f));
      v[c] = Poly(S.f, 1);
      out.push_back(v);
    }
    return out;
  }
  RatRref R = rat_rref(S);
  std::vector<bool> is_piv(S.cols, false);
  for (auto c : R.piv) is_piv[c] = true;
  for (std::size_t fc = 0; fc < S.cols; ++fc) {
    if (is_piv[fc]) continue;
    std::vector<RatFunc> v(S.cols, RatFunc(Poly(S.f)));
    v[fc] = RatFunc(Poly(S.f, 1));
    for (std::size_t r = 0; r < R.piv.size(); ++r) v[R.piv[r]] = -R.m[r][fc];
    Poly d(S.f, 1);
    for (auto& x : v)
      if (!x.is_zero()) d = lcm(d, x.den());
    std::vector<Poly> pv(S.cols, Poly(S.f));
    for (std::size_t i = 0; i < S.cols; ++i) {
      if (v[i].is_zero()) continue;
      Poly q, rr;
      d.divmod(v[i].den(), q, rr);
      pv[i] = v[i].num() * q;
    }
    out.push_back(std::move(pv));
  }
  return out;
}

std::size_t rank_fraction(const PolyMatrix& S) {
  if (S.rows == 0 || S.cols == 0) return 0;
  return rat_rref(S).piv.size();
}

std::vector<std::vector<Poly>> saturate(FieldRef f, std::vector<std::vector<Poly>> b) {
  if (b.empty()) return b;
  std::size_t n = b[0].size();
  for (int guard = 0; guard < 100000; ++guard) {
    KMatrix red = specialize_vectors(f, b);
    KMatrix ns = nullspace(red);
    if (ns.cols == 0) return b;
    std::vector<elem> c = ns.column(0);
    std::size_t j0 = 0;
    for (std::size_t j = 0; j < c.size(); ++j)
      if (c[j]) j0 = j;
    std::vector<Poly> comb(n, Poly(f));
    for (std::size_t j = 0; j < b.size(); ++j)
      if (c[j])
        for (std::size_t i = 0; i < n; ++i) comb[i] += b[j][i].scaled(c[j]);
    for (auto& x : comb) x = x.shift_down(1);
    b[j0] = std::move(comb);
  }
  throw Error("SingularInput", "saturation did not terminate");
}

std::vector<std::vector<Poly>> kernel_lattice(const PolyMatrix& S) { return saturate(S.f, kernel_fraction(S)); }

// ---------- SeriesMatrix ----------

SeriesMatrix SeriesMatrix::identity(FieldRef f, std::size_t n, int M) {
  SeriesMatrix m(f, n, n, M);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Series::constant(f, 1, M);
  return m;
}

SeriesMatrix SeriesMatrix::from_poly(const PolyMatrix& p, int M) {
  SeriesMatrix m(p.f, p.rows, p.cols, M);
  for (std::size_t i = 0; i < p.a.size(); ++i) m.a[i] = Series::from_poly(p.a[i].field() ? p.a[i] : Poly(p.f), M);
  return m;
}

int SeriesMatrix::valuation() const {
  int v = prec;
  for (const auto& x : a) v = std::min(v, x.valuation());
  return v;
}

int SeriesMatrix::min_prec() const {
  int v = prec;
  for (const auto& x : a) v = std::min(v, x.prec());
  return v;
}

KMatrix SeriesMatrix::mod_t() const {
  KMatrix r(f, rows, cols);
  for (std::size_t i = 0; i < a.size(); ++i) {
    require(a[i].prec() > 0, "TruncationExceeded", "entry has no known coefficients");
    r.a[i] = a[i].coeff(0);
  }
  return r;
}

SeriesMatrix operator*(const SeriesMatrix& x, const SeriesMatrix& y) {
  require(x.cols == y.rows, "SingularInput", "matrix shape mismatch in product");
  FieldRef f = x.f ? x.f : y.f;
  SeriesMatrix r(f, x.rows, y.cols, std::min(x.prec, y.prec));
  for (std::size_t i = 0; i < x.rows; ++i)
    for (std::size_t j = 0; j < y.cols; ++j) {
      Series s(f, r.prec);
      for (std::size_t k = 0; k < x.cols; ++k) {
        const Series& u = x(i, k);
        const Series& v = y(k, j);
        if (u.is_zero() && u.prec() >= r.prec) continue;
        if (v.is_zero() && v.prec() >= r.prec) continue;
        s = s + u * v;
      }
      r(i, j) = s;
    }
  return r;
}

SeriesMatrix operator+(const SeriesMatrix& x, const SeriesMatrix& y) {
  SeriesMatrix r = x;
  r.prec = std::min(x.prec, y.prec);
  for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] = x.a[i] + y.a[i];
  return r;
}

SeriesMatrix operator-(const SeriesMatrix& x, const SeriesMatrix& y) {
  SeriesMatrix r = x;
  r.prec = std::min(x.prec, y.prec);
  for (std::size_t i = 0; i < r.a.size(); ++i) r.a[i] = x.a[i] - y.a[i];
  return r;
}

SeriesMatrix scaled(const SeriesMatrix& x, elem s) {
  SeriesMatrix r = x;
  for (auto& v : r.a) v = v.scaled(s);
  return r;
}

SeriesMatrix transpose(const SeriesMatrix& x) {
  SeriesMatrix r(x.f, x.cols, x.rows, x.prec);
  for (std::size_t i = 0; i < x.rows; ++i)
    for (std::size_t j = 0; j < x.cols; ++j) r(j, i) = x(i, j);
  return r;
}

SmithForm smith_form(const SeriesMatrix& A0) {
  FieldRef f = A0.f;
  int M = A0.prec;
  SeriesMatrix A = A0;
  std::size_t R = A.rows, C = A.cols;
  SmithForm out;
  out.U = SeriesMatrix::identity(f, R, M);
  out.Uinv = out.U;
  out.V = SeriesMatrix::identity(f, C, M);
  out.Vinv = out.V;
  auto& U = out.U;
  auto& Ui = out.Uinv;
  auto& V = out.V;
  auto& Vi = out.Vinv;
  std::size_t n = std::min(R, C);
  for (std::size_t k = 0; k < n; ++k) {
    int best = M;
    std::size_t bi = k, bj = k;
    for (std::size_t i = k; i < R; ++i)
      for (std::size_t j = k; j < C; ++j) {
        int v = A(i, j).valuation();
        if (v < A(i, j).prec() && v < best) {
          best = v;
          bi = i;
          bj = j;
        }
      }
    if (best >= M) {
      for (std::size_t r = k; r < n; ++r) out.exponents.push_back(M);
      return out;
    }
    if (bi != k) {
      for (std::size_t j = 0; j < C; ++j) std::swap(A(bi, j), A(k, j));
      for (std::size_t j = 0; j < R; ++j) std::swap(U(bi, j), U(k, j));
      for (std::size_t i = 0; i < R; ++i) std::swap(Ui(i, bi), Ui(i, k));
    }
    if (bj != k) {
      for (std::size_t i = 0; i < R; ++i) std::swap(A(i, bj), A(i, k));
      for (std::size_t i = 0; i < C; ++i) std::swap(V(i, bj), V(i, k));
      for (std::size_t j = 0; j < C; ++j) std::swap(Vi(bj, j), Vi(k, j));
    }
    // normalise pivot to t^best
    Series u = A(k, k).shift_down(best);
    Series ui = u.inverse();
    for (std::size_t j = 0; j < C; ++j) A(k, j) = A(k, j) * ui;
    for (std::size_t j = 0; j < R; ++j) U(k, j) = U(k, j) * ui;
    for (std::size_t i = 0; i < R; ++i) Ui(i, k) = Ui(i, k) * u;
    // clear column k
    for (std::size_t i = 0; i < R; ++i) {
      if (i == k) continue;
      if (A(i, k).valuation() >= A(i, k).prec()) continue;
      Series q = A(i, k).shift_down(best);
      for (std::size_t j = 0; j < C; ++j) A(i, j) = A(i, j) - q * A(k, j);
      for (std::size_t j = 0; j < R; ++j) U(i, j) = U(i, j) - q * U(k, j);
      for (std::size_t r = 0; r < R; ++r) Ui(r, k) = Ui(r, k) + Ui(r, i) * q;
    }
    // clear row k
    for (std::size_t j = 0; j < C; ++j) {
      if (j == k) continue;
      if (A(k, j).valuation() >= A(k, j).prec()) continue;
      Series q = A(k, j).shift_down(best);
      for (std::size_t i = 0; i < R; ++i) A(i, j) = A(i, j) - A(i, k) * q;
      for (std::size_t i = 0; i < C; ++i) V(i, j) = V(i, j) - V(i, k) * q;
      for (std::size_t c = 0; c < C; ++c) Vi(k, c) = Vi(k, c) + q * Vi(j, c);
    }
    out.exponents.push_back(best);
  }
  return out;
}

int det_valuation(const SeriesMatrix& A) {
  require(A.rows == A.cols, "SingularInput", "determinant of non-square matrix");
  SmithForm s = smith_form(A);
  int total = 0;
  for (int e : s.exponents) {
    if (e >= A.prec) throw Error("TruncationExceeded", "determinant valuation not visible at this precision");
    total += e;
  }
  return total;
}

}  // namespace vwb
