#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "vwb/poly.hpp"

namespace vwb {

// Dense matrix over F_q.
struct KMatrix {
  FieldRef f = nullptr;
  std::size_t rows = 0, cols = 0;
  std::vector<elem> a;

  KMatrix() = default;
  KMatrix(FieldRef field, std::size_t r, std::size_t c) : f(field), rows(r), cols(c), a(r * c, 0) {}
  static KMatrix identity(FieldRef f, std::size_t n);
  elem& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  elem operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
  bool is_zero() const;
  bool operator==(const KMatrix& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
  bool operator!=(const KMatrix& o) const { return !(*this == o); }
  std::vector<elem> column(std::size_t j) const;
  void set_column(std::size_t j, const std::vector<elem>& v);
};

KMatrix operator*(const KMatrix& x, const KMatrix& y);
KMatrix operator+(const KMatrix& x, const KMatrix& y);
KMatrix operator-(const KMatrix& x, const KMatrix& y);
KMatrix scaled(const KMatrix& x, elem s);
KMatrix transpose(const KMatrix& x);
std::vector<elem> matvec(const KMatrix& x, const std::vector<elem>& v);
// columns [c0, c0+n)
KMatrix column_block(const KMatrix& x, std::size_t c0, std::size_t n);
KMatrix hconcat(const KMatrix& x, const KMatrix& y);
KMatrix matrix_from_columns(FieldRef f, std::size_t rows, const std::vector<std::vector<elem>>& cols);

std::size_t rank(KMatrix x);
// Right kernel; columns form a basis.
KMatrix nullspace(const KMatrix& x);
// A X = B, or nullopt when inconsistent.
std::optional<KMatrix> solve(const KMatrix& A, const KMatrix& B);
KMatrix inverse(const KMatrix& A);
KMatrix matrix_power(const KMatrix& A, long long e);
// Basis (as columns) of the column space, chosen among pivot columns.
KMatrix column_space(const KMatrix& x);

// Incremental row-echelon basis of a subspace of F_q^n.
class EchelonBasis {
 public:
  EchelonBasis(FieldRef f, std::size_t n) : f_(f), n_(n) {}
  // Reduce v against the basis in place; returns pivot index or -1 if v reduced to 0.
  int reduce(std::vector<elem>& v) const;
  bool contains(std::vector<elem> v) const { return reduce(v) < 0; }
  // Adds v if independent; returns true when the span grew.
  bool add(std::vector<elem> v);
  std::size_t size() const { return rows_.size(); }
  std::size_t ambient() const { return n_; }
  // Original (unreduced) vectors added, in order.
  const std::vector<std::vector<elem>>& generators() const { return gens_; }

 private:
  FieldRef f_;
  std::size_t n_;
  std::vector<std::vector<elem>> rows_;
  std::vector<int> piv_;
  std::vector<std::vector<elem>> gens_;
};

// Dense matrix over F_q[t].
struct PolyMatrix {
  FieldRef f = nullptr;
  std::size_t rows = 0, cols = 0;
  std::vector<Poly> a;

  PolyMatrix() = default;
  PolyMatrix(FieldRef field, std::size_t r, std::size_t c) : f(field), rows(r), cols(c), a(r * c, Poly(field)) {}
  static PolyMatrix identity(FieldRef f, std::size_t n);
  static PolyMatrix from_k(const KMatrix& m);
  Poly& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  const Poly& operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
  bool is_zero() const;
  bool operator==(const PolyMatrix& o) const { return rows == o.rows && cols == o.cols && a == o.a; }
  int max_degree() const;
  std::vector<Poly> column(std::size_t j) const;
};

PolyMatrix operator*(const PolyMatrix& x, const PolyMatrix& y);
PolyMatrix operator+(const PolyMatrix& x, const PolyMatrix& y);
PolyMatrix operator-(const PolyMatrix& x, const PolyMatrix& y);
PolyMatrix scaled(const PolyMatrix& x, const Poly& s);
PolyMatrix transpose(const PolyMatrix& x);
std::vector<Poly> matvec(const PolyMatrix& x, const std::vector<Poly>& v);
KMatrix specialize(const PolyMatrix& x);
KMatrix specialize_vectors(FieldRef f, const std::vector<std::vector<Poly>>& vs);

// Basis of the kernel over F_q(t), with denominators cleared.
std::vector<std::vector<Poly>> kernel_fraction(const PolyMatrix& S);
// Replace a basis of a sublattice of A^n (A = F_q[t] localized at t) by a
// basis of its saturation; reduction mod t of the result is independent.
std::vector<std::vector<Poly>> saturate(FieldRef f, std::vector<std::vector<Poly>> basis);
// Saturated A-basis of ker S.
std::vector<std::vector<Poly>> kernel_lattice(const PolyMatrix& S);
std::size_t rank_fraction(const PolyMatrix& S);

// Matrix over A/t^M with per-entry precision.
struct SeriesMatrix {
  FieldRef f = nullptr;
  std::size_t rows = 0, cols = 0;
  int prec = 0;
  std::vector<Series> a;

  SeriesMatrix() = default;
  SeriesMatrix(FieldRef field, std::size_t r, std::size_t c, int M)
      : f(field), rows(r), cols(c), prec(M), a(r * c, Series(field, M)) {}
  static SeriesMatrix identity(FieldRef f, std::size_t n, int M);
  static SeriesMatrix from_poly(const PolyMatrix& m, int M);
  Series& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  const Series& operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
  // minimum valuation over entries (prec if zero)
  int valuation() const;
  int min_prec() const;
  KMatrix mod_t() const;
};

SeriesMatrix operator*(const SeriesMatrix& x, const SeriesMatrix& y);
SeriesMatrix operator+(const SeriesMatrix& x, const SeriesMatrix& y);
SeriesMatrix operator-(const SeriesMatrix& x, const SeriesMatrix& y);
SeriesMatrix scaled(const SeriesMatrix& x, elem s);
SeriesMatrix transpose(const SeriesMatrix& x);

// U * A * V = D with D diagonal, D_ii = t^{exponents[i]} (exponent = prec for
// a zero pivot, i.e. not determined at this precision).
struct SmithForm {
  std::vector<int> exponents;
  SeriesMatrix U, V, Uinv, Vinv;
};
SmithForm smith_form(const SeriesMatrix& A);
// Sum of elementary divisor exponents of a square matrix; throws
// TruncationExceeded when a pivot is not visible at this precision.
int det_valuation(const SeriesMatrix& A);

}  // namespace vwb
