#include "sjk/kernels.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <string>

#include <Eigen/Cholesky>

#include "sjk/error.hpp"

namespace sjk {

namespace {

constexpr double kPi = std::numbers::pi;

cplx det_1m(const CMat& W, const CMat& Vbar, double t) {
  const auto n = W.rows();
  return (CMat(CMat::Identity(n, n) - t * W * Vbar)).partialPivLu().determinant();
}

// Arg increment of det along [t0, t1], subdividing until every step stays
// under pi/2.
double tracked_arg(const CMat& W, const CMat& Vbar, double t0, cplx d0, double t1, cplx d1, int depth) {
  if (std::abs(d1) < 1e-300 || std::abs(d0) < 1e-300)
    throw Error(ErrorKind::BranchAmbiguity, "det(1 - t W Vbar) vanishes on the tracked path");
  const double step = std::arg(d1 / d0);
  if (std::abs(step) < 0.5 * kPi) return step;
  if (depth > 40) throw Error(ErrorKind::BranchAmbiguity, "arg of det(1 - t W Vbar) could not be resolved");
  const double tm = 0.5 * (t0 + t1);
  const cplx dm = det_1m(W, Vbar, tm);
  return tracked_arg(W, Vbar, t0, d0, tm, dm, depth + 1) + tracked_arg(W, Vbar, tm, dm, t1, d1, depth + 1);
}

double spd_logdet(const CMat& A) {
  Eigen::LLT<CMat> llt(A);
  if (llt.info() != Eigen::Success) throw Error(ErrorKind::NotInBall, "1 - W Wbar is not positive definite");
  double s = 0.0;
  for (Eigen::Index i = 0; i < A.rows(); ++i) s += std::log(llt.matrixLLT()(i, i).real());
  return 2.0 * s;
}

}  // namespace

cplx tracked_log_det_1m(const CMat& W, const CMat& Vbar) {
  constexpr int segments = 8;
  double arg = 0.0;
  cplx prev = 1.0;
  for (int s = 1; s <= segments; ++s) {
    const double t0 = double(s - 1) / segments, t1 = double(s) / segments;
    const cplx cur = det_1m(W, Vbar, t1);
    arg += tracked_arg(W, Vbar, t0, prev, t1, cur, 0);
    prev = cur;
  }
  return {std::log(std::abs(prev)), arg};
}

KernelEval two_point_kernel(const MetricParams& params, const JacobiBallPoint& first, const JacobiBallPoint& second) {
  params.validate();
  const int n = params.n;
  if (first.n() != n || second.n() != n || first.z.size() != n || second.z.size() != n)
    throw Error(ErrorKind::DimensionMismatch, "kernel arguments must have dimension n");
  validate_ball_point(first.W);
  validate_ball_point(second.W);
  const CVec& x = first.z;
  const CVec& y = second.z;
  const CMat Vb = first.W.conjugate();
  const CMat& W = second.W;
  KernelEval e;
  e.U = inverse(CMat(CMat::Identity(n, n) - W * Vb), "1 - W Vbar");
  const CVec xb = x.conjugate();
  const cplx twoF = 2.0 * (xb.transpose() * e.U * y).value() + (y.transpose() * Vb * e.U * y).value() +
                    (xb.transpose() * e.U * W * xb).value();
  e.F = 0.5 * twoF;
  e.log_K = -0.5 * params.k * tracked_log_det_1m(W, Vb) + params.mu * e.F;
  e.K = std::exp(e.log_K);
  return e;
}

NormalizedKernels normalized_kernels(const MetricParams& params, const JacobiBallPoint& first,
                                     const JacobiBallPoint& second) {
  const cplx l12 = two_point_kernel(params, first, second).log_K;
  const double l11 = two_point_kernel(params, first, first).log_K.real();
  const double l22 = two_point_kernel(params, second, second).log_K.real();
  NormalizedKernels r;
  r.log_kappa = l12 - 0.5 * (l11 + l22);
  r.kappa = std::exp(r.log_kappa);
  r.diastasis = -2.0 * r.log_kappa.real();
  r.berezin = std::exp(-r.diastasis);
  return r;
}

double epsilon_function(const MetricParams& params, const JacobiBallPoint& pt) {
  const double lk = two_point_kernel(params, pt, pt).log_K.real();
  return std::exp(lk - kahler_potential(params, pt));
}

VolumeData volume_densities(const CMat& W) {
  validate_ball_point(W);
  const int n = static_cast<int>(W.rows());
  const double ld = spd_logdet(CMat::Identity(n, n) - W * W.conjugate());
  return {std::exp(-(n + 1) * ld), std::exp(-(n + 2) * ld)};
}

double normalization_constant(const MetricParams& params) {
  params.validate();
  const int n = params.n;
  const double k = params.k;
  if (!(k - 3.0 > 0.0))
    throw Error(ErrorKind::GammaPoleError, "factor k - 3 = " + std::to_string(k - 3.0) + " is not positive");
  double lam = std::pow(params.mu, n) * (k - 3.0) / (2.0 * std::pow(kPi, n * (n + 3) / 2.0));
  for (int i = 1; i <= n - 1; ++i) {
    const double a = k + i - 2.0;
    const double b = k + 2.0 * (i - n - 1);
    if (!(a > 0.0)) throw Error(ErrorKind::GammaPoleError, "Gamma argument " + std::to_string(a) + " <= 0");
    if (!(b > 0.0)) throw Error(ErrorKind::GammaPoleError, "Gamma argument " + std::to_string(b) + " <= 0");
    lam *= ((k - 3.0) / 2.0 - n + i) * std::exp(std::lgamma(a) - std::lgamma(b));
  }
  return lam;
}

void gauss_legendre(int order, RVec& nodes, RVec& weights) {
  nodes.resize(order);
  weights.resize(order);
  for (int i = 0; i < order; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (order + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= order; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = order * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    nodes(i) = x;
    weights(i) = 2.0 / ((1.0 - x * x) * dp * dp);
  }
}

ParsevalResult parseval_check_n1(double k, double mu, const ParsevalOptions& opts) {
  const MetricParams params{1, k, mu};
  const double lambda = normalization_constant(params);

  ParsevalResult res;
  // Gaussian z-integral: exp(-mu F) with F a real quadratic form in (Re z, Im z),
  // recovered by polarization of the diagonal exponent.
  auto z_integral = [&](const cplx& w) {
    auto Fq = [&](cplx z) {
      const JacobiBallPoint pt{CVec::Constant(1, z), CMat::Constant(1, 1, w)};
      return two_point_kernel(params, pt, pt).F.real();
    };
    const double a11 = Fq(1.0), a22 = Fq(I), a12 = 0.5 * (Fq(cplx(1.0, 1.0)) - a11 - a22);
    const double det = a11 * a22 - a12 * a12;
    if (!(det > 0.0)) throw Error(ErrorKind::NotConverged, "z-integral diverges: quadratic form not positive");
    return kPi / (mu * std::sqrt(det));
  };

  auto radial_integrand = [&](double s, double phi) {
    ++res.evaluations;
    const cplx w = std::polar(std::sqrt(s), phi);
    const CMat W = CMat::Constant(1, 1, w);
    const double Q = volume_densities(W).Q_jacobi;
    const double Kinv_det = std::pow(1.0 - s, 0.5 * k);  // det(M)^{-k/2}
    return 0.5 * Q * Kinv_det * z_integral(w);           // d^2 w = ds dphi / 2
  };

  RVec xs, ws;
  gauss_legendre(10, xs, ws);
  auto gl = [&](const std::function<double(double)>& f, double a, double b) {
    double s = 0.0;
    for (int i = 0; i < xs.size(); ++i) s += ws(i) * f(0.5 * (b - a) * xs(i) + 0.5 * (a + b));
    return 0.5 * (b - a) * s;
  };

  double total = 0.0, err = 0.0;
  const int na = opts.angular_nodes;
  for (int j = 0; j < na; ++j) {
    const double phi = 2.0 * kPi * j / na;
    const std::function<double(double)> f = [&](double s) { return radial_integrand(s, phi); };
    std::function<double(double, double, double, double, int)> adapt = [&](double a, double b, double whole,
                                                                          double tol, int depth) -> double {
      const double m = 0.5 * (a + b);
      const double left = gl(f, a, m), right = gl(f, m, b);
      const double diff = std::abs(left + right - whole);
      if (diff <= tol) {
        err += diff;
        return left + right;
      }
      if (depth >= opts.max_depth)
        throw Error(ErrorKind::NotConverged, "radial quadrature did not reach tolerance " + std::to_string(opts.tol));
      return adapt(a, m, left, tol / std::sqrt(2.0), depth + 1) + adapt(m, b, right, tol / std::sqrt(2.0), depth + 1);
    };
    total += adapt(0.0, 1.0, gl(f, 0.0, 1.0), opts.tol, 0) * (2.0 * kPi / na);
  }
  res.value = lambda * total;
  res.error_estimate = lambda * err * (2.0 * kPi / na);
  return res;
}

}  // namespace sjk
