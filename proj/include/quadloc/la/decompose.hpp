#pragma once

#include <array>
#include <cassert>
#include <cmath>

#include "quadloc/la/matrix.hpp"

namespace quadloc::la {

// Pivots whose magnitude falls below this are treated as exact zeros; hitting
// one before the requested rank is reached raises RankDeficientError.
inline constexpr double kPivotTol = 1e-10;

// Factors of S = P * L * D * U * P^T where L is unit lower n x r, U unit upper
// r x n, D the diagonal d, and P the permutation with column a equal to the
// canonical basis vector e_{perm[a]}.  Row a of L (and column a of U) therefore
// corresponds to original index perm[a].
template <int N>
struct LduFactors {
  std::array<int, N> perm{};
  int n = 0;
  int rank = 0;
  Mat<N, N> L{0, 0};
  Mat<N, N> U{0, 0};
  Mat<N, 1> d{0, 1};
  long iterations = 0;  // pivot-scan loop trips, always n*r - r*(r-1)/2
};

template <int N>
struct LdltFactors {
  std::array<int, N> perm{};
  int n = 0;
  int rank = 0;
  Mat<N, N> L{0, 0};
  Mat<N, 1> d{0, 1};
  long iterations = 0;
};

// Thin factors of X = P * L * D * Q with X m x n, L unit lower m x r, D the
// positive diagonal d, and Q r x n with orthonormal rows (Q * Q^T = I_r).
template <int MR, int MC>
struct ThinLdq {
  std::array<int, MR> perm{};
  int m = 0;
  int n = 0;
  int rank = 0;
  Mat<MR, MR> L{0, 0};
  Mat<MR, 1> d{0, 1};
  Mat<MR, MC> Q{0, 0};
  long iterations = 0;
};

namespace detail {

// Shared elimination core.  Runs `rank` steps of outer-product elimination on
// a working copy of S, picking at each step the unused index whose Schur
// complement diagonal has the largest magnitude (ties keep the lowest original
// index).  Entries are accumulated against original indices; callers remap
// rows/columns through the final permutation.  The scan loop body is the unit
// of work counted by `iterations`: step k visits the n - k unused indices, so
// the total is always n*rank - rank*(rank-1)/2 regardless of the data.
template <int N>
struct EliminationResult {
  std::array<int, N> perm{};
  Mat<N, N> Lo{0, 0};  // n x rank, rows by original index
  Mat<N, N> Uo{0, 0};  // rank x n, columns by original index
  Mat<N, 1> d{0, 1};
  long iterations = 0;
};

template <int N, bool Symmetric>
EliminationResult<N> eliminate(const Mat<N, N>& S, int rank, double tol) {
  const int n = S.rows();
  assert(S.cols() == n);
  assert(rank >= 0 && rank <= n);

  EliminationResult<N> r;
  r.Lo.resize(n, rank);
  r.Uo.resize(rank, n);
  r.d.resize(rank, 1);

  Mat<N, N> W = S;
  std::array<bool, N> used{};
  int picked = 0;

  for (int k = 0; k < rank; ++k) {
    int best = -1;
    double best_mag = -1.0;
    for (int i = 0; i < n; ++i) {
      if (used[i]) continue;
      ++r.iterations;
      const double mag = std::abs(W(i, i));
      if (mag > best_mag) {
        best_mag = mag;
        best = i;
      }
    }
    if (best < 0 || best_mag < tol)
      throw RankDeficientError("pivot " + std::to_string(k) + " below tolerance");

    const int p = best;
    used[p] = true;
    r.perm[picked++] = p;
    const double dk = W(p, p);
    r.d[k] = dk;
    r.Lo(p, k) = 1.0;
    r.Uo(k, p) = 1.0;

    for (int i = 0; i < n; ++i) {
      if (used[i]) continue;
      r.Lo(i, k) = W(i, p) / dk;
      r.Uo(k, i) = Symmetric ? r.Lo(i, k) : W(p, i) / dk;
    }
    for (int i = 0; i < n; ++i) {
      if (used[i]) continue;
      for (int j = 0; j < n; ++j) {
        if (used[j]) continue;
        W(i, j) -= r.Lo(i, k) * dk * r.Uo(k, j);
      }
    }
  }

  // Unpicked indices extend the permutation in ascending order.
  for (int i = 0; i < n; ++i)
    if (!used[i]) r.perm[picked++] = i;
  return r;
}

}  // namespace detail

// Pivoted LDU with a known target rank.  For rank < n the trailing rows of L
// (and columns of U) hold the extension blocks that reproduce the off-pivot
// rows and columns of S exactly.
template <int N>
LduFactors<N> ldu_decompose(const Mat<N, N>& S, int rank, double tol = kPivotTol) {
  const int n = S.rows();
  auto e = detail::eliminate<N, false>(S, rank, tol);

  LduFactors<N> f;
  f.perm = e.perm;
  f.n = n;
  f.rank = rank;
  f.d = e.d;
  f.iterations = e.iterations;
  f.L.resize(n, rank);
  f.U.resize(rank, n);
  for (int a = 0; a < n; ++a)
    for (int k = 0; k < rank; ++k) {
      f.L(a, k) = e.Lo(e.perm[a], k);
      f.U(k, a) = e.Uo(k, e.perm[a]);
    }
  return f;
}

// Symmetric variant: S = P * L * D * L^T * P^T, same pivoting and counting.
template <int N>
LdltFactors<N> ldlt_decompose(const Mat<N, N>& S, int rank, double tol = kPivotTol) {
  const int n = S.rows();
  auto e = detail::eliminate<N, true>(S, rank, tol);

  LdltFactors<N> f;
  f.perm = e.perm;
  f.n = n;
  f.rank = rank;
  f.d = e.d;
  f.iterations = e.iterations;
  f.L.resize(n, rank);
  for (int a = 0; a < n; ++a)
    for (int k = 0; k < rank; ++k) f.L(a, k) = e.Lo(e.perm[a], k);
  return f;
}

// Thin LDQ of a wide matrix X (m <= n) with known rank.  The symmetric
// elimination runs on the Gram matrix X * X^T; D is the square root of its
// pivot diagonal and Q = D^-1 * L_r^-1 * (P^T X)_{1:r} comes out with exactly
// orthonormal rows in exact arithmetic.
template <int MR, int MC>
ThinLdq<MR, MC> ldq_decompose(const Mat<MR, MC>& X, int rank, double tol = kPivotTol) {
  const int m = X.rows();
  const int n = X.cols();
  assert(rank >= 0 && rank <= m);

  Mat<MR, MR> S(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      double s = 0.0;
      for (int k = 0; k < n; ++k) s += X(i, k) * X(j, k);
      S(i, j) = s;
    }

  auto lt = ldlt_decompose<MR>(S, rank, tol);

  ThinLdq<MR, MC> f;
  f.perm = lt.perm;
  f.m = m;
  f.n = n;
  f.rank = rank;
  f.iterations = lt.iterations;
  f.L = lt.L;
  f.d.resize(rank, 1);
  for (int k = 0; k < rank; ++k) f.d[k] = std::sqrt(lt.d[k]);

  // Forward-substitute L_r * Z = (P^T X)_{1:r}, then scale rows by 1/D.
  f.Q.resize(rank, n);
  for (int k = 0; k < rank; ++k) {
    for (int j = 0; j < n; ++j) {
      double z = X(f.perm[k], j);
      for (int i = 0; i < k; ++i) z -= f.L(k, i) * f.Q(i, j) * f.d[i];
      f.Q(k, j) = z / f.d[k];
    }
  }

  // The Gram pass squares the input's conditioning, so one re-orthogonalization
  // sweep restores Q to working precision.  Every correction and rescale is
  // folded into L and D, keeping the factor product unchanged: subtracting
  // c * Q_i from Q_k moves d_k * c / d_i onto column i for every L row that
  // carries Q_k, and a row rescale trades between Q_k and d_k.
  for (int k = 0; k < rank; ++k) {
    for (int i = 0; i < k; ++i) {
      double c = 0.0;
      for (int j = 0; j < n; ++j) c += f.Q(k, j) * f.Q(i, j);
      if (c == 0.0) continue;
      for (int j = 0; j < n; ++j) f.Q(k, j) -= c * f.Q(i, j);
      const double alpha = f.d[k] * c / f.d[i];
      for (int a = k; a < m; ++a) f.L(a, i) += f.L(a, k) * alpha;
    }
    double s = 0.0;
    for (int j = 0; j < n; ++j) s += f.Q(k, j) * f.Q(k, j);
    const double nrm = std::sqrt(s);
    if (nrm > 0.0 && nrm != 1.0) {
      for (int j = 0; j < n; ++j) f.Q(k, j) /= nrm;
      f.d[k] *= nrm;
    }
  }
  return f;
}

// Exact inverse of a unit lower-triangular matrix by forward substitution.
template <int N>
Mat<N, N> invert_unit_lower(const Mat<N, N>& L) {
  const int n = L.rows();
  Mat<N, N> X = Mat<N, N>::identity(n);
  for (int b = 0; b < n; ++b)
    for (int k = b + 1; k < n; ++k) {
      double s = 0.0;
      for (int j = b; j < k; ++j) s += L(k, j) * X(j, b);
      X(k, b) = -s;
    }
  return X;
}

// Exact inverse of a unit upper-triangular matrix by back substitution.
template <int N>
Mat<N, N> invert_unit_upper(const Mat<N, N>& U) {
  const int n = U.rows();
  Mat<N, N> X = Mat<N, N>::identity(n);
  for (int b = n - 1; b >= 0; --b)
    for (int k = b - 1; k >= 0; --k) {
      double s = 0.0;
      for (int j = k + 1; j <= b; ++j) s += U(k, j) * X(j, b);
      X(k, b) = -s;
    }
  return X;
}

// Inverse of a full-rank square matrix assembled as P * U^-1 * D^-1 * L^-1 * P^T.
template <int N>
Mat<N, N> inverse_via_ldu(const Mat<N, N>& S, double tol = kPivotTol) {
  const int n = S.rows();
  LduFactors<N> f;
  try {
    f = ldu_decompose<N>(S, n, tol);
  } catch (const RankDeficientError&) {
    throw SingularMatrixError("inverse requested for a rank-deficient matrix");
  }
  const Mat<N, N> Li = invert_unit_lower<N>(f.L);
  const Mat<N, N> Ui = invert_unit_upper<N>(f.U);
  Mat<N, N> out(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      double s = 0.0;
      for (int k = 0; k < n; ++k) s += Ui(a, k) / f.d[k] * Li(k, b);
      out(f.perm[a], f.perm[b]) = s;
    }
  return out;
}

// Dense permutation matrix with column a equal to e_{perm[a]}; test helper and
// reconstruction building block.
template <int N>
Mat<N, N> perm_matrix(const std::array<int, N>& perm, int n) {
  Mat<N, N> P(n, n);
  for (int a = 0; a < n; ++a) P(perm[a], a) = 1.0;
  return P;
}

template <int N>
Mat<N, N> ldu_reconstruct(const LduFactors<N>& f) {
  Mat<N, N> out(f.n, f.n);
  for (int a = 0; a < f.n; ++a)
    for (int b = 0; b < f.n; ++b) {
      double s = 0.0;
      for (int k = 0; k < f.rank; ++k) s += f.L(a, k) * f.d[k] * f.U(k, b);
      out(f.perm[a], f.perm[b]) = s;
    }
  return out;
}

template <int MR, int MC>
Mat<MR, MC> ldq_reconstruct(const ThinLdq<MR, MC>& f) {
  Mat<MR, MC> out(f.m, f.n);
  for (int a = 0; a < f.m; ++a)
    for (int j = 0; j < f.n; ++j) {
      double s = 0.0;
      for (int k = 0; k < f.rank; ++k) s += f.L(a, k) * f.d[k] * f.Q(k, j);
      out(f.perm[a], j) = s;
    }
  return out;
}

}  // namespace quadloc::la
