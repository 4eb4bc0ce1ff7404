#pragma once

#include "sjk/domains.hpp"
#include "sjk/linalg.hpp"

namespace sjk {

struct MetricParams {
  int n = 1;
  double k = 1.0;
  double mu = 1.0;

  /// Throws InvalidInput unless n >= 1, k > 0, mu > 0.
  void validate() const;
  /// True when 2k is not a positive integer (outside the representation range).
  bool weight_warning() const;
};

struct AuxMatrices {
  CMat N;   // 1 - W Wbar
  CMat M;   // N^{-1}
  CMat X;   // Wbar M, symmetric
  CVec eta; // M (z + W zbar)
  CVec S;   // S_n = sum_q eta_q Nbar_qn
  double metric_alpha = 0.0;  // eta^T Nbar conj(eta)
  double theta = 0.0;         // 1/mu + 2 alpha / k
};

AuxMatrices aux_matrices(const MetricParams& params, const JacobiBallPoint& pt);

inline double f_pair(int p, int q) { return p == q ? 0.5 : 1.0; }
inline double e_pair(int p, int q) { return p == q ? 1.0 : 0.5; }

struct MetricEval {
  CMat h1, h2, h3, h4;
  CMat h;  // assembled d x d
};

struct MetricInverse {
  CMat i1, i2, i3, i4;
  CMat h_inv;
};

struct Determinant {
  double value = 0.0;        // det of the assembled matrix
  double closed_form = 0.0;  // constant_C (k/2)^m mu^n det N^{-(n+2)}
  double constant_C = 0.0;   // 2^{n(n-1)/2}
};

struct CurvatureData {
  CMat ric;
  double scalar_curvature = 0.0;
  CMat qk_lu;
};

struct BallMetricPair {
  CMat hk;     // m x m
  CMat k_inv;  // m x m, its inverse on ordered pairs
};

CMat assemble_blocks(const CMat& b1, const CMat& b2, const CMat& b3, const CMat& b4);

double kahler_potential(const MetricParams& params, const JacobiBallPoint& pt);
MetricEval metric_blocks(const MetricParams& params, const JacobiBallPoint& pt);
MetricInverse metric_inverse(const MetricParams& params, const JacobiBallPoint& pt);
Determinant metric_det(const MetricParams& params, const JacobiBallPoint& pt);
/// ln det of the assembled metric via Cholesky.
double log_metric_det(const MetricParams& params, const JacobiBallPoint& pt);

/// The Siegel-ball block h^k(W) and its inverse k_inv(W).
BallMetricPair ball_metric_pair(const CMat& W);
CMat ball_hk(const CMat& M);

CurvatureData curvature(const MetricParams& params, const JacobiBallPoint& pt);
double scalar_curvature_closed_form(const MetricParams& params);

double ds2_upper(const CMat& V, const CMat& dV);
double ds2_ball(const CMat& W, const CMat& dW);
double ds2_jacobi_ball(const MetricParams& params, const JacobiBallPoint& pt, const TangentVector& v);
/// Re(v^T h conj(v)) for a flattened tangent.
double quadratic_form(const CMat& h, const CVec& v);

}  // namespace sjk
