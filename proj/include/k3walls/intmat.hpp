#pragma once

#include <array>

#include "ints.hpp"

namespace k3walls {

inline Mat identity_mat(size_t n) {
  Mat I(n, Vec(n, 0));
  for (size_t i = 0; i < n; ++i) I[i][i] = 1;
  return I;
}

inline Mat transpose(const Mat& A) {
  if (A.empty()) return {};
  Mat T(A[0].size(), Vec(A.size()));
  for (size_t i = 0; i < A.size(); ++i)
    for (size_t j = 0; j < A[i].size(); ++j) T[j][i] = A[i][j];
  return T;
}

inline Mat mat_mul(const Mat& A, const Mat& B) {
  size_t m = A.size(), k = B.size(), n = B.empty() ? 0 : B[0].size();
  Mat C(m, Vec(n, 0));
  for (size_t i = 0; i < m; ++i)
    for (size_t l = 0; l < k; ++l) {
      if (A[i][l] == 0) continue;
      for (size_t j = 0; j < n; ++j) C[i][j] += A[i][l] * B[l][j];
    }
  return C;
}

inline Vec mat_vec(const Mat& A, const Vec& x) {
  Vec y(A.size(), 0);
  for (size_t i = 0; i < A.size(); ++i)
    for (size_t j = 0; j < x.size(); ++j) y[i] += A[i][j] * x[j];
  return y;
}

inline Int dot(const Vec& a, const Vec& b) {
  Int s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

// Fraction-free determinant (Bareiss).
inline Int det_mat(Mat A) {
  size_t n = A.size();
  if (n == 0) return 1;
  Int prev = 1;
  int sign = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (A[k][k] == 0) {
      size_t p = k + 1;
      while (p < n && A[p][k] == 0) ++p;
      if (p == n) return 0;
      std::swap(A[k], A[p]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i)
      for (size_t j = k + 1; j < n; ++j)
        A[i][j] = (A[k][k] * A[i][j] - A[i][k] * A[k][j]) / prev;
    prev = A[k][k];
  }
  return sign > 0 ? A[n - 1][n - 1] : Int(-A[n - 1][n - 1]);
}

// Basis of the saturated integer kernel {x in Z^n : A x = 0}, returned as rows.
// Column reduction by unimodular operations; the trailing transform columns
// span the kernel as a direct summand, so no extra saturation step is needed.
inline Mat kernel_basis(const Mat& A) {
  size_t m = A.size();
  size_t n = m ? A[0].size() : 0;
  if (n == 0) return {};
  Mat B = A;
  Mat U = identity_mat(n);  // columns tracked: B = A * U throughout
  auto col_sub = [&](size_t j, const Int& q, size_t j0) {
    for (size_t r = 0; r < m; ++r) B[r][j] -= q * B[r][j0];
    for (size_t r = 0; r < n; ++r) U[r][j] -= q * U[r][j0];
  };
  auto col_swap = [&](size_t j, size_t j0) {
    for (size_t r = 0; r < m; ++r) std::swap(B[r][j], B[r][j0]);
    for (size_t r = 0; r < n; ++r) std::swap(U[r][j], U[r][j0]);
  };
  size_t c = 0;
  for (size_t r = 0; r < m && c < n; ++r) {
    for (;;) {
      size_t j0 = n;
      for (size_t j = c; j < n; ++j)
        if (B[r][j] != 0 && (j0 == n || abs_int(B[r][j]) < abs_int(B[r][j0])))
          j0 = j;
      if (j0 == n) break;
      bool lone = true;
      for (size_t j = c; j < n; ++j) {
        if (j == j0 || B[r][j] == 0) continue;
        col_sub(j, floor_div(B[r][j], B[r][j0]), j0);
        if (B[r][j] != 0) lone = false;
      }
      if (lone) {
        col_swap(c, j0);
        ++c;
        break;
      }
    }
  }
  Mat K;
  for (size_t j = c; j < n; ++j) {
    Vec k(n);
    for (size_t r = 0; r < n; ++r) k[r] = U[r][j];
    K.push_back(k);
  }
  return K;
}

// Row Hermite normal form: positive pivots, entries above each pivot reduced
// into [0, pivot).  Zero rows dropped.  Canonical for a given row span.
inline Mat row_hnf(Mat A) {
  size_t m = A.size();
  size_t n = m ? A[0].size() : 0;
  size_t r = 0;
  for (size_t col = 0; col < n && r < m; ++col) {
    for (;;) {
      size_t p = m;
      for (size_t i = r; i < m; ++i)
        if (A[i][col] != 0 && (p == m || abs_int(A[i][col]) < abs_int(A[p][col])))
          p = i;
      if (p == m) break;
      std::swap(A[r], A[p]);
      bool lone = true;
      for (size_t i = r + 1; i < m; ++i) {
        if (A[i][col] == 0) continue;
        Int q = floor_div(A[i][col], A[r][col]);
        for (size_t j = 0; j < n; ++j) A[i][j] -= q * A[r][j];
        if (A[i][col] != 0) lone = false;
      }
      if (lone) {
        if (A[r][col] < 0)
          for (size_t j = 0; j < n; ++j) A[r][j] = -A[r][j];
        for (size_t i = 0; i < r; ++i) {
          Int q = floor_div(A[i][col], A[r][col]);
          if (q != 0)
            for (size_t j = 0; j < n; ++j) A[i][j] -= q * A[r][j];
        }
        ++r;
        break;
      }
    }
  }
  A.resize(r);
  return A;
}

// Saturation of the subgroup spanned by the rows: Z^n intersect Q-span(rows).
inline Mat saturate_rows(const Mat& A, size_t n_cols) {
  Mat gen = A;
  if (gen.empty()) gen.push_back(Vec(n_cols, 0));
  Mat K = kernel_basis(gen);
  if (K.empty()) K.push_back(Vec(n_cols, 0));
  return row_hnf(kernel_basis(K));
}

// Rational Gaussian elimination: solve A x = b (A m-by-n, rows).
// Returns false if inconsistent; x is one solution (free vars set to 0).
inline bool solve_rational(const Mat& A, const Vec& b, RatVec& x) {
  size_t m = A.size();
  size_t n = m ? A[0].size() : 0;
  std::vector<RatVec> M(m, RatVec(n + 1));
  for (size_t i = 0; i < m; ++i) {
    for (size_t j = 0; j < n; ++j) M[i][j] = Rat(A[i][j]);
    M[i][n] = Rat(b[i]);
  }
  std::vector<size_t> pivot_col;
  size_t r = 0;
  for (size_t col = 0; col < n && r < m; ++col) {
    size_t p = r;
    while (p < m && M[p][col] == 0) ++p;
    if (p == m) continue;
    std::swap(M[r], M[p]);
    Rat inv = M[r][col];
    for (size_t j = col; j <= n; ++j) M[r][j] /= inv;
    for (size_t i = 0; i < m; ++i) {
      if (i == r || M[i][col] == 0) continue;
      Rat f = M[i][col];
      for (size_t j = col; j <= n; ++j) M[i][j] -= f * M[r][j];
    }
    pivot_col.push_back(col);
    ++r;
  }
  for (size_t i = r; i < m; ++i)
    if (M[i][n] != 0) return false;
  x.assign(n, Rat(0));
  for (size_t i = 0; i < r; ++i) x[pivot_col[i]] = M[i][n];
  return true;
}

// Coordinates of t in the Q-span of basis rows; false if t is outside.
inline bool coords_in_basis(const Mat& basis_rows, const Vec& t, RatVec& coords) {
  // Solve (basis^T) c = t.
  return solve_rational(transpose(basis_rows), t, coords);
}

inline bool rat_vec_integral(const RatVec& x, Vec* out = nullptr) {
  Vec r(x.size());
  for (size_t i = 0; i < x.size(); ++i) {
    if (boost::multiprecision::denominator(x[i]) != 1) return false;
    r[i] = boost::multiprecision::numerator(x[i]);
  }
  if (out) *out = r;
  return true;
}

// Inertia (n_plus, n_minus, n_zero) of a symmetric integer matrix, by exact
// rational congruence diagonalization.
inline std::array<int, 3> signature_of_gram(const Mat& G) {
  size_t n = G.size();
  std::vector<RatVec> S(n, RatVec(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) S[i][j] = Rat(G[i][j]);
  auto add_rc = [&](size_t dst, size_t src, const Rat& f) {
    for (size_t j = 0; j < n; ++j) S[dst][j] += f * S[src][j];
    for (size_t i = 0; i < n; ++i) S[i][dst] += f * S[i][src];
  };
  auto swap_rc = [&](size_t a, size_t b) {
    std::swap(S[a], S[b]);
    for (size_t i = 0; i < n; ++i) std::swap(S[i][a], S[i][b]);
  };
  int np = 0, nm = 0, nz = 0;
  for (size_t k = 0; k < n; ++k) {
    if (S[k][k] == 0) {
      size_t jdiag = n, joff = n;
      for (size_t j = k + 1; j < n; ++j) {
        if (S[j][j] != 0 && jdiag == n) jdiag = j;
        if (S[k][j] != 0 && joff == n) joff = j;
      }
      if (jdiag != n)
        swap_rc(k, jdiag);
      else if (joff != n)
        add_rc(k, joff, Rat(1));  // S[k][k] becomes 2*S[k][joff] != 0
      else {
        ++nz;
        continue;
      }
    }
    Rat p = S[k][k];
    for (size_t j = k + 1; j < n; ++j) {
      if (S[k][j] == 0) continue;
      add_rc(j, k, -S[k][j] / p);
    }
    if (p > 0)
      ++np;
    else
      ++nm;
  }
  return {np, nm, nz};
}

}  // namespace k3walls
