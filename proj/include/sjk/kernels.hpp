#pragma once

#include "sjk/domains.hpp"
#include "sjk/linalg.hpp"
#include "sjk/metric.hpp"

namespace sjk {

struct KernelEval {
  cplx F;      // two-point exponent
  cplx log_K;  // branch-tracked log of K
  cplx K;
  CMat U;      // (1 - W Vbar)^{-1}
};

struct NormalizedKernels {
  cplx log_kappa;
  cplx kappa;
  double berezin = 0.0;
  double diastasis = 0.0;
};

struct VolumeData {
  double Q_ball = 0.0;
  double Q_jacobi = 0.0;
};

/// Log of det(1 - W Vbar), continued along t -> det(1 - t W Vbar) from t = 0.
cplx tracked_log_det_1m(const CMat& W, const CMat& Vbar);

/// K((x,V),(y,W)), antilinear in the first argument.
KernelEval two_point_kernel(const MetricParams& params, const JacobiBallPoint& first, const JacobiBallPoint& second);
NormalizedKernels normalized_kernels(const MetricParams& params, const JacobiBallPoint& first,
                                     const JacobiBallPoint& second);
double epsilon_function(const MetricParams& params, const JacobiBallPoint& pt);

VolumeData volume_densities(const CMat& W);
double normalization_constant(const MetricParams& params);

struct ParsevalOptions {
  double tol = 1e-6;      // absolute tolerance on the radial integral
  int max_depth = 40;     // bisection depth limit
  int angular_nodes = 32; // trapezoid nodes in the angle
};

struct ParsevalResult {
  double value = 0.0;
  double error_estimate = 0.0;
  long evaluations = 0;
};

/// Lambda_1 * integral over C x D_1 of Q K^{-1}, for n = 1.
ParsevalResult parseval_check_n1(double k, double mu, const ParsevalOptions& opts = {});

/// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int order, RVec& nodes, RVec& weights);

}  // namespace sjk
