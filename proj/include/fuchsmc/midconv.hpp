#pragma once

#include <string>
#include <vector>

#include "fuchsmc/fuchsian.hpp"

namespace fuchsmc {

// ---------------------------------------------------------- small elimination
// Row reduction over an arbitrary field scalar.  Exact scalars use the exact
// zero test; floating scalars a magnitude threshold relative to the largest
// entry seen.
template <typename S>
struct Eliminator {
  double tol;
  explicit Eliminator(double tol_ = 1e-10) : tol(tol_) {}

  bool is_zero(const S& v, double scale = 1.0) const {
    if constexpr (std::is_same_v<S, GaussRat>) {
      (void)scale;
      return v.is_zero();
    } else {
      return scalar_mag(v) <= tol * std::max(1.0, scale);
    }
  }

  // Reduces rows in place; returns pivot column indices.
  std::vector<int> rref(std::vector<std::vector<S>>& rows) const {
    std::vector<int> pivots;
    size_t nr = rows.size();
    if (nr == 0) return pivots;
    size_t nc = rows[0].size();
    double scale = 1.0;
    for (auto& r : rows)
      for (auto& v : r) scale = std::max(scale, scalar_mag(v));
    size_t rr = 0;
    for (size_t c = 0; c < nc && rr < nr; ++c) {
      size_t piv = nr;
      double best = -1.0;
      for (size_t i = rr; i < nr; ++i) {
        if (is_zero(rows[i][c], scale)) continue;
        double m = scalar_mag(rows[i][c]);
        if constexpr (std::is_same_v<S, GaussRat>) {
          piv = i;
          break;
        } else if (m > best) {
          best = m;
          piv = i;
        }
      }
      if (piv == nr) continue;
      std::swap(rows[rr], rows[piv]);
      S pv = rows[rr][c];
      for (size_t j = 0; j < nc; ++j) rows[rr][j] /= pv;
      for (size_t i = 0; i < nr; ++i) {
        if (i == rr) continue;
        if (is_zero(rows[i][c], scale)) continue;
        S f = rows[i][c];
        for (size_t j = 0; j < nc; ++j) rows[i][j] -= f * rows[rr][j];
      }
      pivots.push_back(int(c));
      ++rr;
    }
    return pivots;
  }

  // Kernel basis of the linear map given by `rows` (each row one equation).
  std::vector<std::vector<S>> kernel(std::vector<std::vector<S>> rows) const {
    size_t nc = rows.empty() ? 0 : rows[0].size();
    auto pivots = rref(rows);
    std::vector<bool> is_piv(nc, false);
    for (int c : pivots) is_piv[c] = true;
    std::vector<std::vector<S>> out;
    for (size_t fc = 0; fc < nc; ++fc) {
      if (is_piv[fc]) continue;
      std::vector<S> v(nc, S(0));
      v[fc] = S(1);
      for (size_t pi = 0; pi < pivots.size(); ++pi)
        v[pivots[pi]] = -rows[pi][fc];
      out.push_back(std::move(v));
    }
    return out;
  }

  // Determinant via elimination (exact for exact scalars).
  template <int N>
  S det(Eigen::Matrix<S, N, N> M) const {
    double scale = 1.0;
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) scale = std::max(scale, scalar_mag(M(i, j)));
    S out(1);
    for (int c = 0; c < N; ++c) {
      int piv = -1;
      double best = -1.0;
      for (int i = c; i < N; ++i) {
        if (is_zero(M(i, c), scale)) continue;
        double m = scalar_mag(M(i, c));
        if constexpr (std::is_same_v<S, GaussRat>) {
          piv = i;
          break;
        } else if (m > best) {
          best = m;
          piv = i;
        }
      }
      if (piv < 0) return S(0);
      if (piv != c) {
        M.row(piv).swap(M.row(c));
        out = -out;
      }
      out *= M(c, c);
      for (int i = c + 1; i < N; ++i) {
        if (is_zero(M(i, c), scale)) continue;
        S f = M(i, c) / M(c, c);
        for (int j = c; j < N; ++j) M(i, j) -= f * M(c, j);
      }
    }
    return out;
  }

  // Inverse of a square matrix via Gauss-Jordan.
  template <int N>
  Eigen::Matrix<S, N, N> inverse(const Eigen::Matrix<S, N, N>& M) const {
    std::vector<std::vector<S>> rows(N, std::vector<S>(2 * N, S(0)));
    for (int i = 0; i < N; ++i) {
      for (int j = 0; j < N; ++j) rows[i][j] = M(i, j);
      rows[i][N + i] = S(1);
    }
    auto piv = rref(rows);
    require(int(piv.size()) == N && piv[N - 1] == N - 1, "SINGULAR",
            "matrix not invertible");
    Eigen::Matrix<S, N, N> out;
    for (int i = 0; i < N; ++i)
      for (int j = 0; j < N; ++j) out(i, j) = rows[i][N + j];
    return out;
  }
};

// ---------------------------------------------------------------- convolution
template <typename S>
struct ConvolutionTupleT {
  Eigen::Matrix<S, 6, 6> B0, B1, Bt;
  S nu;
};

template <typename S>
ConvolutionTupleT<S> convolution_matrices(const Eigen::Matrix<S, 2, 2>& A0,
                                          const Eigen::Matrix<S, 2, 2>& A1,
                                          const Eigen::Matrix<S, 2, 2>& At,
                                          const S& nu) {
  ConvolutionTupleT<S> out;
  out.nu = nu;
  out.B0.setZero();
  out.B1.setZero();
  out.Bt.setZero();
  const Eigen::Matrix<S, 2, 2>* blocks[3] = {&A0, &A1, &At};
  for (int br = 0; br < 3; ++br) {
    auto& B = (br == 0) ? out.B0 : (br == 1) ? out.B1 : out.Bt;
    for (int bc = 0; bc < 3; ++bc)
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
          B(2 * br + i, 2 * bc + j) = (*blocks[bc])(i, j);
    B(2 * br, 2 * br) += nu;
    B(2 * br + 1, 2 * br + 1) += nu;
  }
  return out;
}

template <typename S>
struct SubspaceBasisT {
  std::vector<Eigen::Matrix<S, 6, 1>> L;  // ordered L0, L1, Lt generators
  std::vector<Eigen::Matrix<S, 6, 1>> K;
  bool degenerate = false;  // some Ker(A_i) not one-dimensional
};

template <typename S>
SubspaceBasisT<S> kernel_spaces(const FuchsianSystemT<S>& sys, const S& nu,
                                double tol = 1e-10) {
  Eliminator<S> el(tol);
  SubspaceBasisT<S> out;
  const Eigen::Matrix<S, 2, 2>* As[3] = {&sys.A0, &sys.A1, &sys.At};
  for (int b = 0; b < 3; ++b) {
    std::vector<std::vector<S>> rows(2, std::vector<S>(2));
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) rows[i][j] = (*As[b])(i, j);
    auto kb = el.kernel(rows);
    if (kb.size() != 1) out.degenerate = true;
    for (auto& v : kb) {
      Eigen::Matrix<S, 6, 1> w;
      w.setZero();
      w(2 * b) = v[0];
      w(2 * b + 1) = v[1];
      out.L.push_back(w);
    }
  }
  auto conv = convolution_matrices<S>(sys.A0, sys.A1, sys.At, nu);
  std::vector<std::vector<S>> rows(18, std::vector<S>(6));
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) {
      rows[i][j] = conv.B0(i, j);
      rows[6 + i][j] = conv.B1(i, j);
      rows[12 + i][j] = conv.Bt(i, j);
    }
  for (auto& v : el.kernel(rows)) {
    Eigen::Matrix<S, 6, 1> w;
    for (int i = 0; i < 6; ++i) w(i) = v[i];
    out.K.push_back(w);
  }
  return out;
}

// Result of the quotient construction.  The reduced tuple is expressed in a
// deterministic frame: for nu = kappa1 the frame is the one in which the
// reduced system coincides entrywise with the s2-transformed construction
// (recorded in `frame`); otherwise the pivot-completion frame.
template <typename S>
struct ReducedTupleT {
  Eigen::Matrix<S, 2, 2> A0, A1, At;
  Eigen::Matrix<S, 6, 6> basis;          // columns: span(K+L) then completion
  Eigen::Matrix<S, 2, 2> pivot_to_frame; // change of basis applied after the quotient
  std::string frame;
  int span_dim = 0;
};

template <typename S>
Eigen::Matrix<S, 6, 6> s_matrix(const FuchsianSystemT<S>& sys);

template <typename S>
ReducedTupleT<S> middle_convolution(const FuchsianSystemT<S>& sys, const S& nu,
                                    double tol = 1e-10) {
  Eliminator<S> el(tol);
  auto sub = kernel_spaces(sys, nu, tol);
  std::vector<Eigen::Matrix<S, 6, 1>> span;
  for (auto& v : sub.K) span.push_back(v);
  for (auto& v : sub.L) span.push_back(v);

  // pivot columns of the span (row reduce the transposed stack)
  std::vector<std::vector<S>> rows;
  for (auto& v : span) {
    std::vector<S> r(6);
    for (int i = 0; i < 6; ++i) r[i] = v(i);
    rows.push_back(std::move(r));
  }
  auto pivots = el.rref(rows);
  int dim = int(pivots.size());
  require(dim == 4, "QUOTIENT_DIM",
          "dim(K+L) = " + std::to_string(dim) + ", quotient is not 2-dimensional");

  // independent span vectors: re-select greedily in the given order
  std::vector<Eigen::Matrix<S, 6, 1>> indep;
  {
    std::vector<std::vector<S>> acc;
    for (auto& v : span) {
      auto test = acc;
      std::vector<S> r(6);
      for (int i = 0; i < 6; ++i) r[i] = v(i);
      test.push_back(r);
      auto tcopy = test;
      if (int(el.rref(tcopy).size()) > int(acc.size())) {
        acc = test;
        indep.push_back(v);
      }
      if (int(indep.size()) == dim) break;
    }
  }
  std::vector<bool> is_piv(6, false);
  for (int c : pivots) is_piv[c] = true;

  Eigen::Matrix<S, 6, 6> V;
  V.setZero();
  for (int c = 0; c < dim; ++c)
    for (int i = 0; i < 6; ++i) V(i, c) = indep[c](i);
  int col = dim;
  std::vector<int> completion;
  for (int i = 0; i < 6; ++i)
    if (!is_piv[i]) {
      V(i, col) = S(1);
      completion.push_back(i);
      ++col;
    }
  auto Vinv = el.inverse<6>(V);

  auto conv = convolution_matrices<S>(sys.A0, sys.A1, sys.At, nu);
  auto induced = [&](const Eigen::Matrix<S, 6, 6>& B) {
    Eigen::Matrix<S, 2, 2> T;
    for (int c = 0; c < 2; ++c) {
      Eigen::Matrix<S, 6, 1> im = B * V.col(4 + c);
      Eigen::Matrix<S, 6, 1> co = Vinv * im;
      T(0, c) = co(4);
      T(1, c) = co(5);
    }
    return T;
  };

  ReducedTupleT<S> out;
  out.basis = V;
  out.span_dim = dim;
  Eigen::Matrix<S, 2, 2> T0 = induced(conv.B0), T1 = induced(conv.B1),
                         Tt = induced(conv.Bt);

  bool at_kappa1 = el.is_zero(nu - sys.params.kappa1());
  if (at_kappa1) {
    // express in the frame of the first two columns of the reduction matrix,
    // where the tuple matches the transformed construction entrywise
    Eigen::Matrix<S, 6, 6> Sm = s_matrix(sys);
    Eigen::Matrix<S, 2, 2> G;
    for (int c = 0; c < 2; ++c) {
      Eigen::Matrix<S, 6, 1> co = Vinv * Sm.col(c);
      G(0, c) = co(4);
      G(1, c) = co(5);
    }
    auto Ginv = el.inverse<2>(G);
    out.A0 = Ginv * T0 * G;
    out.A1 = Ginv * T1 * G;
    out.At = Ginv * Tt * G;
    out.pivot_to_frame = G;
    out.frame = "reduction-matrix frame (columns 1,2)";
  } else {
    out.A0 = T0;
    out.A1 = T1;
    out.At = Tt;
    out.pivot_to_frame.setIdentity();
    out.frame = "pivot-completion frame";
  }
  return out;
}

// The explicit 6x6 reduction matrix.  Columns 3..6 span K + L; columns 1,2
// complete the basis.  Column 1 follows the closed-form direction
// (s31, s51); its scale is normalized so that det S equals
// k lambda (lambda-1)(lambda-t) mu / (t (1-t) theta_inf), which is exactly the
// normalization under which conjugation reproduces the s2-transformed tuple
// in the top-left block.
template <typename S>
Eigen::Matrix<S, 6, 6> s_matrix(const FuchsianSystemT<S>& sys) {
  const auto& p = sys.params;
  S t = sys.t, lam = sys.lambda, mu = sys.mu, k = sys.k;
  S k2 = p.kappa2();
  S u0 = sys.u0, u1 = sys.u1, ut = sys.ut;
  S w0 = sys.w0, w1 = sys.w1, wt = sys.wt;
  S d0 = u0 + p.th0, d1 = u1 + p.th1, dt = ut + p.tht;
  require(!scalar_is_zero(k2), "S_DEGENERATE", "kappa2 vanishes");
  require(!scalar_is_zero(p.thinf), "S_DEGENERATE", "theta_inf vanishes");
  require(!scalar_is_zero(d0) && !scalar_is_zero(d1) && !scalar_is_zero(dt),
          "S_DEGENERATE", "u_i + theta_i vanishes");

  S s31 = t * (t - S(1)) * mu * w0 * w1 * ut / (k * k * k2 * wt * d0 * d1);
  S s51 = t * (S(1) - t) * mu * w0 * wt * u1 / (k * k * k2 * wt * d0 * dt);
  S s32 = (w0 / d0 - w1 / d1) / p.thinf;
  S s52 = (w0 / d0 - wt / dt) / p.thinf;

  // det of the matrix below with unscaled column 1:
  //   -(d0 d1 dt)(s31 s52 - s32 s51) up to the permutation sign; computed
  //   directly, then column 1 is rescaled to meet the det identity.
  Eigen::Matrix<S, 6, 6> M;
  M.setZero();
  M(0, 2) = S(1);  M(0, 3) = w0;
  M(1, 3) = d0;
  M(2, 0) = s31;   M(2, 1) = s32;  M(2, 2) = S(1);  M(2, 4) = w1;
  M(3, 4) = d1;
  M(4, 0) = s51;   M(4, 1) = s52;  M(4, 2) = S(1);  M(4, 5) = wt;
  M(5, 5) = dt;

  Eliminator<S> el;
  S detM = el.template det<6>(M);
  S det_target = k * lam * (lam - S(1)) * (lam - t) * mu / (t * (S(1) - t) * p.thinf);
  require(!scalar_is_zero(detM), "S_SINGULAR", "reduction matrix is singular");
  S rescale = det_target / detM;
  M(2, 0) *= rescale;
  M(4, 0) *= rescale;
  return M;
}

}  // namespace fuchsmc
