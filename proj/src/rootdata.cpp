#include "vwb/rootdata.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <numeric>

#include "vwb/errors.hpp"

namespace vwb {

// ---------- Weight ----------

Weight Weight::operator+(const Weight& o) const {
  Weight r = *this;
  for (std::size_t i = 0; i < c.size(); ++i) r.c[i] += o.c[i];
  return r;
}

Weight Weight::operator-(const Weight& o) const {
  Weight r = *this;
  for (std::size_t i = 0; i < c.size(); ++i) r.c[i] -= o.c[i];
  return r;
}

Weight Weight::operator-() const {
  Weight r = *this;
  for (auto& x : r.c) x = -x;
  return r;
}

Weight Weight::operator*(int s) const {
  Weight r = *this;
  for (auto& x : r.c) x *= s;
  return r;
}

Weight Weight::mod(int p) const {
  Weight r = *this;
  for (auto& x : r.c) x = ((x % p) + p) % p;
  return r;
}

std::string Weight::str() const {
  std::string s = "(";
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(c[i]);
  }
  return s + ")";
}

Weight act(const IntMatrix& m, const Weight& v) {
  Weight r = Weight::zero(static_cast<int>(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < v.size(); ++j) r.c[i] += m[i][j] * v.c[j];
  return r;
}

IntMatrix matmul(const IntMatrix& a, const IntMatrix& b) {
  std::size_t n = a.size(), k = b.size(), m = b.empty() ? 0 : b[0].size();
  IntMatrix r(n, std::vector<int>(m, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l)
      for (std::size_t j = 0; j < m; ++j) r[i][j] += a[i][l] * b[l][j];
  return r;
}

IntMatrix identity_matrix(int n) {
  IntMatrix r(n, std::vector<int>(n, 0));
  for (int i = 0; i < n; ++i) r[i][i] = 1;
  return r;
}

// ---------- Lattice ----------

namespace {
int floordiv(int a, int b) {
  int q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}
}  // namespace

Lattice::Lattice(int n, const std::vector<Weight>& gens) : n_(n) {
  std::vector<Weight> rows;
  for (const auto& g : gens)
    if (std::any_of(g.c.begin(), g.c.end(), [](int x) { return x != 0; })) rows.push_back(g);
  for (int c = 0; c < n && !rows.empty(); ++c) {
    // Euclid on column c among remaining rows
    while (true) {
      std::size_t best = rows.size();
      for (std::size_t i = 0; i < rows.size(); ++i)
        if (rows[i][c] != 0 && (best == rows.size() || std::abs(rows[i][c]) < std::abs(rows[best][c]))) best = i;
      if (best == rows.size()) break;
      bool others = false;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i == best || rows[i][c] == 0) continue;
        int q = rows[i][c] / rows[best][c];
        rows[i] -= rows[best] * q;
        if (rows[i][c] != 0) others = true;
      }
      if (others) continue;
      Weight r = rows[best];
      if (r[c] < 0) r = -r;
      rows.erase(rows.begin() + best);
      rows_.push_back(r);
      piv_.push_back(c);
      rows.erase(std::remove_if(rows.begin(), rows.end(),
                                [](const Weight& w) {
                                  return std::all_of(w.c.begin(), w.c.end(), [](int x) { return x == 0; });
                                }),
                 rows.end());
      break;
    }
  }
}

Weight Lattice::reduce(Weight v) const {
  for (std::size_t k = 0; k < rows_.size(); ++k) {
    int q = floordiv(v[piv_[k]], rows_[k][piv_[k]]);
    if (q) v -= rows_[k] * q;
  }
  return v;
}

bool Lattice::contains(const Weight& v) const {
  Weight r = reduce(v);
  return std::all_of(r.c.begin(), r.c.end(), [](int x) { return x == 0; });
}

// ---------- RootSystem ----------

RootSystem RootSystem::build(const std::string& label) {
  RootSystem R;
  R.label_ = label;
  if (label == "A1") {
    R.type_ = RootType::A1;
    R.cartan_ = {{2}};
  } else if (label == "A1xA1") {
    R.type_ = RootType::A1xA1;
    R.cartan_ = {{2, 0}, {0, 2}};
  } else if (label == "A2") {
    R.type_ = RootType::A2;
    R.cartan_ = {{2, -1}, {-1, 2}};
  } else if (label == "B2") {
    // alpha_1 long, alpha_2 short
    R.type_ = RootType::B2;
    R.cartan_ = {{2, -1}, {-2, 2}};
  } else {
    throw Error("UnsupportedType", "unsupported root system '" + label + "'");
  }
  int n = static_cast<int>(R.cartan_.size());
  R.rank_ = n;
  R.det_ = (n == 1) ? R.cartan_[0][0] : R.cartan_[0][0] * R.cartan_[1][1] - R.cartan_[0][1] * R.cartan_[1][0];

  // closure of (root coords, coroot coords) under simple reflections
  using Pair = std::pair<std::vector<int>, std::vector<int>>;
  std::set<Pair> seen;
  std::deque<Pair> todo;
  for (int i = 0; i < n; ++i) {
    std::vector<int> e(n, 0);
    e[i] = 1;
    todo.push_back({e, e});
  }
  while (!todo.empty()) {
    Pair cur = todo.front();
    todo.pop_front();
    if (!seen.insert(cur).second) continue;
    for (int j = 0; j < n; ++j) {
      auto [m, k] = cur;
      int a = 0, b = 0;  // <α, α_j∨>, <α_j, β∨>
      for (int i = 0; i < n; ++i) {
        a += m[i] * R.cartan_[j][i];
        b += k[i] * R.cartan_[i][j];
      }
      m[j] -= a;
      k[j] -= b;
      todo.push_back({m, k});
    }
  }
  std::vector<Pair> all(seen.begin(), seen.end());
  auto height = [](const std::vector<int>& m) { return std::accumulate(m.begin(), m.end(), 0); };
  std::sort(all.begin(), all.end(), [&](const Pair& x, const Pair& y) {
    int hx = height(x.first), hy = height(y.first);
    if (hx != hy) return hx < hy;
    return x.first < y.first;
  });
  for (const auto& [m, k] : all) {
    R.rcoords_.push_back(m);
    R.ccoords_.push_back(k);
    R.roots_.push_back(R.from_root_coords(m));
  }
  int nr = static_cast<int>(R.roots_.size());
  for (int a = 0; a < nr; ++a) R.index_[R.roots_[a]] = a;
  R.neg_.resize(nr);
  for (int a = 0; a < nr; ++a) R.neg_[a] = R.index_.at(-R.roots_[a]);
  R.simple_.resize(n);
  for (int i = 0; i < n; ++i) {
    std::vector<int> e(n, 0);
    e[i] = 1;
    R.simple_[i] = R.index_.at(R.from_root_coords(e));
  }
  for (int a = 0; a < nr; ++a)
    if (R.height(a) > 0) R.positive_.push_back(a);
  R.rho_ = Weight(std::vector<int>(n, 1));

  // Weyl group by BFS over words (shortlex)
  std::map<IntMatrix, std::size_t> found;
  WeylElement e{{}, identity_matrix(n)};
  R.weyl_.push_back(e);
  found[e.matrix] = 0;
  for (std::size_t head = 0; head < R.weyl_.size(); ++head) {
    for (int i = 0; i < n; ++i) {
      WeylElement w = R.weyl_[head];
      WeylElement s = R.reflection(i);
      WeylElement ws{w.word, matmul(w.matrix, s.matrix)};
      ws.word.push_back(i);
      if (found.count(ws.matrix)) continue;
      found[ws.matrix] = R.weyl_.size();
      R.weyl_.push_back(ws);
    }
  }
  R.w0_ = R.weyl_.size() - 1;
  return R;
}

int RootSystem::height(int a) const { return std::accumulate(rcoords_[a].begin(), rcoords_[a].end(), 0); }

std::optional<int> RootSystem::find_root(const Weight& w) const {
  auto it = index_.find(w);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

int RootSystem::pairing(const Weight& lambda, int a) const {
  int s = 0;
  for (int i = 0; i < rank_; ++i) s += ccoords_[a][i] * lambda[i];
  return s;
}

bool RootSystem::is_long(int a) const {
  if (type_ != RootType::B2) return true;
  // in B2 the long roots are ±α_1, ±(α_1+2α_2)
  return pairing(root(a), a) == 2 && (std::abs(rcoords_[a][0]) == 1 && std::abs(rcoords_[a][1]) != 1);
}

std::optional<std::vector<int>> RootSystem::to_root_coords(const Weight& w) const {
  // solve cartan · m = w
  if (rank_ == 1) {
    if (w[0] % 2) return std::nullopt;
    return std::vector<int>{w[0] / 2};
  }
  const auto& C = cartan_;
  int n0 = C[1][1] * w[0] - C[0][1] * w[1];
  int n1 = -C[1][0] * w[0] + C[0][0] * w[1];
  if (n0 % det_ || n1 % det_) return std::nullopt;
  return std::vector<int>{n0 / det_, n1 / det_};
}

Weight RootSystem::from_root_coords(const std::vector<int>& m) const {
  Weight w = Weight::zero(rank_);
  for (int i = 0; i < rank_; ++i)
    for (int j = 0; j < rank_; ++j) w[i] += cartan_[i][j] * m[j];
  return w;
}

WeylElement RootSystem::reflection(int i) const {
  IntMatrix m = identity_matrix(rank_);
  // s_i(λ) = λ - λ_i α_i ; α_i = column i of the Cartan matrix
  for (int k = 0; k < rank_; ++k) m[k][i] -= cartan_[k][i];
  return WeylElement{{i}, m};
}

WeylElement RootSystem::from_word(const std::vector<int>& word) const {
  WeylElement w{{}, identity_matrix(rank_)};
  for (int i : word) {
    w.matrix = matmul(w.matrix, reflection(i).matrix);
    w.word.push_back(i);
  }
  return w;
}

WeylElement RootSystem::compose(const WeylElement& a, const WeylElement& b) const {
  WeylElement r{a.word, matmul(a.matrix, b.matrix)};
  r.word.insert(r.word.end(), b.word.begin(), b.word.end());
  // shorten to the shortlex representative
  for (const auto& w : weyl_)
    if (w.matrix == r.matrix) return w;
  return r;
}

WeylElement RootSystem::inverse(const WeylElement& a) const {
  std::vector<int> word(a.word.rbegin(), a.word.rend());
  return compose(from_word(word), WeylElement{{}, identity_matrix(rank_)});
}

int RootSystem::act_on_root(const WeylElement& w, int a) const { return index_.at(act(w.matrix, roots_[a])); }

Weight RootSystem::dot(const WeylElement& w, const Weight& lambda) const {
  return act(w.matrix, lambda + rho_) - rho_;
}

Weight RootSystem::reflect(int a, const Weight& mu) const { return mu - roots_[a] * pairing(mu, a); }

bool good_prime_check(const std::string& type_label, int p) {
  bool prime = p >= 2;
  for (int d = 2; d * d <= p; ++d)
    if (p % d == 0) prime = false;
  if (!prime) return false;
  if (type_label == "A1" || type_label == "A1xA1") return p != 2;
  if (type_label == "A2") return p != 3;
  if (type_label == "B2") return p > 2;
  return false;
}

Weight affine_reflection(const RootSystem& R, int a, int r, int p, const Weight& mu, bool dotted) {
  Weight m = dotted ? mu + R.rho() : mu;
  Weight out = m - R.root(a) * (R.pairing(m, a) - r * p);
  return dotted ? out - R.rho() : out;
}

Weight twist_weight(const RootSystem& R, const Weight& lambda, const WeylElement& w, int p) {
  return lambda + (act(w.matrix, R.rho()) - R.rho()) * (p - 1);
}

// ---------- LeviDatum ----------

bool LeviDatum::in_levi_roots(int a) const { return std::find(RI.begin(), RI.end(), a) != RI.end(); }
bool LeviDatum::in_I(int i) const { return std::find(I.begin(), I.end(), i) != I.end(); }

LeviDatum levi_datum(const RootSystem& R, std::vector<int> I) {
  std::sort(I.begin(), I.end());
  I.erase(std::unique(I.begin(), I.end()), I.end());
  for (int i : I) require(i >= 0 && i < R.rank(), "UnsupportedType", "Levi index out of range");
  LeviDatum D;
  D.I = I;
  for (int a = 0; a < R.num_roots(); ++a) {
    bool inside = true;
    for (int i = 0; i < R.rank(); ++i)
      if (R.root_coords(a)[i] != 0 && !D.in_I(i)) inside = false;
    if (inside) {
      D.RI.push_back(a);
      if (R.is_positive(a)) D.RI_plus.push_back(a);
    }
  }
  // W_I: elements whose shortlex word uses only letters of I
  for (const auto& w : R.weyl_group()) {
    bool ok = std::all_of(w.word.begin(), w.word.end(), [&](int i) { return D.in_I(i); });
    if (ok) D.WI.push_back(w);
  }
  D.wI = D.WI.back();
  for (const auto& w : D.WI)
    if (w.length() > D.wI.length()) D.wI = w;
  D.w0 = R.longest();
  D.wsup = R.compose(D.wI, D.w0);
  // greedy left descent: w^{-1}(α_i) < 0 means s_i can be stripped on the left
  WeylElement rest = D.wsup;
  while (rest.length() > 0) {
    WeylElement inv = R.inverse(rest);
    int found = -1;
    for (int i = 0; i < R.rank() && found < 0; ++i)
      if (!R.is_positive(R.act_on_root(inv, R.simple(i)))) found = i;
    require(found >= 0, "UnsupportedType", "descent search failed");
    D.reduced_expr.push_back(found);
    rest = R.compose(R.reflection(found), rest);
  }
  D.N = static_cast<int>(D.reduced_expr.size());
  for (int i = 0; i <= D.N; ++i) {
    std::vector<int> prefix(D.reduced_expr.begin(), D.reduced_expr.begin() + i);
    D.chain.push_back(R.from_word(prefix));
  }
  for (int i = 0; i < D.N; ++i) D.beta.push_back(R.act_on_root(D.chain[i], R.simple(D.reduced_expr[i])));
  return D;
}

bool in_WI_min(const RootSystem& R, const LeviDatum& D, const WeylElement& w) {
  WeylElement inv = R.inverse(w);
  for (int i : D.I)
    if (!R.is_positive(R.act_on_root(inv, R.simple(i)))) return false;
  return true;
}

int n_of_lambda(const RootSystem& R, const LeviDatum& D, const Weight& lambda, int p) {
  int n = 0;
  for (int a : R.positive_roots()) {
    if (D.in_levi_roots(a)) continue;
    if (((R.pairing(lambda + R.rho(), a) % p) + p) % p != 0) ++n;
  }
  return n;
}

std::vector<int> nonsingular_roots(const RootSystem& R, const Weight& lambda, int p) {
  std::vector<int> out;
  for (int a : R.positive_roots())
    if (((R.pairing(lambda + R.rho(), a) % p) + p) % p != 0) out.push_back(a);
  return out;
}

// ---------- Linkage ----------

Linkage::Linkage(const RootSystem& R, const LeviDatum& D, int p) : R_(R), D_(D), p_(p) {
  std::vector<Weight> zi, pzri;
  for (int i : D.I) {
    zi.push_back(R.root(R.simple(i)));
    pzri.push_back(R.root(R.simple(i)) * p);
  }
  zi_ = Lattice(R.rank(), zi);
  pzri_ = Lattice(R.rank(), pzri);
}

std::set<Weight> Linkage::orbit_in_box(const Weight& lambda, int box) const {
  auto inside = [&](const Weight& w) {
    return std::all_of(w.c.begin(), w.c.end(), [&](int x) { return std::abs(x) <= box; });
  };
  std::set<Weight> orb;
  std::deque<Weight> todo{lambda};
  if (!inside(lambda)) return orb;
  while (!todo.empty()) {
    Weight mu = todo.front();
    todo.pop_front();
    if (!orb.insert(mu).second) continue;
    for (int a : D_.RI_plus) {
      int s = R_.pairing(mu + R_.rho(), a);
      // the image is μ - kα with k = s - rp; bound |k| by the box size
      int lim = 4 * box + 4 * p_;
      for (int r = (s - lim) / p_ - 1; r <= (s + lim) / p_ + 1; ++r) {
        Weight nu = affine_reflection(R_, a, r, p_, mu, true);
        if (inside(nu) && !orb.count(nu)) todo.push_back(nu);
      }
    }
  }
  return orb;
}

Weight Linkage::label(const Weight& lambda) const {
  std::optional<Weight> best;
  for (const auto& w : D_.WI) {
    Weight r = pzri_.reduce(R_.dot(w, lambda));
    if (!best || r < *best) best = r;
  }
  return *best;
}

bool Linkage::grade_leq(const Weight& mu, const Weight& lambda) const {
  auto m = R_.to_root_coords(lambda - mu);
  if (!m) return false;
  for (int i = 0; i < R_.rank(); ++i)
    if (!D_.in_I(i) && (*m)[i] < 0) return false;
  return true;
}

int Linkage::residue_orbit_size(const Weight& mu) const {
  std::set<Weight> orb;
  for (const auto& w : D_.WI) orb.insert(R_.dot(w, mu).mod(p_));
  return static_cast<int>(orb.size());
}

}  // namespace vwb
