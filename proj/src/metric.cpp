#include "sjk/metric.hpp"

#include <cmath>
#include <string>

#include <Eigen/Cholesky>

#include "sjk/error.hpp"

namespace sjk {

void MetricParams::validate() const {
  if (n < 1) throw Error(ErrorKind::InvalidInput, "n must be >= 1");
  if (!(k > 0.0)) throw Error(ErrorKind::InvalidInput, "k must be > 0");
  if (!(mu > 0.0)) throw Error(ErrorKind::InvalidInput, "mu must be > 0");
}

bool MetricParams::weight_warning() const {
  const double twok = 2.0 * k;
  return !(twok >= 1.0 && std::abs(twok - std::round(twok)) < 1e-12);
}

namespace {

void check_point(const MetricParams& params, const JacobiBallPoint& pt) {
  params.validate();
  if (pt.n() != params.n || pt.z.size() != params.n)
    throw Error(ErrorKind::DimensionMismatch, "point dimension differs from n = " + std::to_string(params.n));
}

// ln det of a Hermitian positive-definite matrix.
double hermitian_logdet(const CMat& A, const char* what) {
  Eigen::LLT<CMat> llt(A);
  if (llt.info() != Eigen::Success)
    throw Error(ErrorKind::NotInBall, std::string(what) + " is not positive definite");
  double s = 0.0;
  for (Eigen::Index i = 0; i < A.rows(); ++i) s += std::log(llt.matrixLLT()(i, i).real());
  return 2.0 * s;
}

}  // namespace

AuxMatrices aux_matrices(const MetricParams& params, const JacobiBallPoint& pt) {
  check_point(params, pt);
  const int n = params.n;
  AuxMatrices a;
  a.N = CMat::Identity(n, n) - pt.W * pt.W.conjugate();
  a.M = inverse(a.N, "1 - W Wbar");
  a.X = pt.W.conjugate() * a.M;
  a.eta = a.M * (pt.z + pt.W * pt.z.conjugate());
  a.S = a.N.conjugate().transpose() * a.eta;
  a.metric_alpha = (a.eta.transpose() * a.N.conjugate() * a.eta.conjugate()).value().real();
  a.theta = 1.0 / params.mu + 2.0 * a.metric_alpha / params.k;
  return a;
}

CMat assemble_blocks(const CMat& b1, const CMat& b2, const CMat& b3, const CMat& b4) {
  const auto n = b1.rows(), m = b4.rows();
  CMat h(n + m, n + m);
  h.topLeftCorner(n, n) = b1;
  h.topRightCorner(n, m) = b2;
  h.bottomLeftCorner(m, n) = b3;
  h.bottomRightCorner(m, m) = b4;
  return h;
}

double kahler_potential(const MetricParams& params, const JacobiBallPoint& pt) {
  check_point(params, pt);
  const int n = params.n;
  const CMat N = CMat::Identity(n, n) - pt.W * pt.W.conjugate();
  const CMat M = inverse(N, "1 - W Wbar");
  const CVec& z = pt.z;
  const CVec zb = z.conjugate();
  const cplx F = (zb.transpose() * M * z).value() + 0.5 * (z.transpose() * pt.W.conjugate() * M * z).value() +
                 0.5 * (zb.transpose() * M * pt.W * zb).value();
  return -0.5 * params.k * hermitian_logdet(N, "1 - W Wbar") + params.mu * F.real();
}

CMat ball_hk(const CMat& M) {
  const PairIndex pi(static_cast<int>(M.rows()));
  const int m = pi.size();
  CMat hk(m, m);
  for (int a = 0; a < m; ++a) {
    const auto [p, q] = pi.pairs()[a];
    for (int b = 0; b < m; ++b) {
      const auto [r, s] = pi.pairs()[b];
      cplx v = 0.0;
      if (p != q) v += 2.0 * M(r, p) * M(s, q);
      if (r != s) v += 2.0 * M(r, q) * M(s, p);
      if (p == q && r == s) v += M(r, p) * M(r, p);
      hk(a, b) = v;
    }
  }
  return hk;
}

BallMetricPair ball_metric_pair(const CMat& W) {
  validate_ball_point(W);
  const int n = static_cast<int>(W.rows());
  const PairIndex pi(n);
  const int m = pi.size();
  const CMat N = CMat::Identity(n, n) - W * W.conjugate();
  const CMat Nb = N.conjugate();
  BallMetricPair out;
  out.hk = ball_hk(inverse(N, "1 - W Wbar"));
  out.k_inv.resize(m, m);
  for (int a = 0; a < m; ++a) {
    const auto [r, s] = pi.pairs()[a];
    for (int b = 0; b < m; ++b) {
      const auto [u, v] = pi.pairs()[b];
      out.k_inv(a, b) = 0.5 * (Nb(s, v) * Nb(r, u) + Nb(r, v) * Nb(s, u));
    }
  }
  return out;
}

MetricEval metric_blocks(const MetricParams& params, const JacobiBallPoint& pt) {
  const AuxMatrices a = aux_matrices(params, pt);
  const int n = params.n;
  const PairIndex pi(n);
  const int m = pi.size();
  const double k = params.k, mu = params.mu;
  const CMat Mb = a.M.conjugate();
  const CVec& eta = a.eta;

  MetricEval e;
  e.h1 = mu * Mb;
  e.h2.resize(n, m);
  for (int j = 0; j < m; ++j) {
    const auto [p, q] = pi.pairs()[j];
    for (int i = 0; i < n; ++i) e.h2(i, j) = mu * (eta(q) * Mb(i, p) + eta(p) * Mb(i, q)) * f_pair(p, q);
  }
  e.h3 = e.h2.adjoint();

  const CMat hk = ball_hk(a.M);
  e.h4.resize(m, m);
  for (int x = 0; x < m; ++x) {
    const auto [p, q] = pi.pairs()[x];
    for (int y = 0; y < m; ++y) {
      const auto [r, s] = pi.pairs()[y];
      const cplx hmu = (std::conj(eta(p)) * (eta(s) * Mb(q, r) + eta(r) * Mb(q, s)) +
                        std::conj(eta(q)) * (eta(s) * Mb(p, r) + eta(r) * Mb(p, s))) *
                       f_pair(p, q) * f_pair(r, s);
      e.h4(x, y) = 0.5 * k * hk(x, y) + mu * hmu;
    }
  }
  e.h = assemble_blocks(e.h1, e.h2, e.h3, e.h4);
  return e;
}

MetricInverse metric_inverse(const MetricParams& params, const JacobiBallPoint& pt) {
  const AuxMatrices a = aux_matrices(params, pt);
  const int n = params.n;
  const PairIndex pi(n);
  const int m = pi.size();
  const double k = params.k, mu = params.mu;
  const CMat Nb = a.N.conjugate();
  const CVec& S = a.S;

  MetricInverse r;
  r.i1 = Nb / mu + (a.metric_alpha * Nb + S.conjugate() * S.transpose()) / k;
  r.i2.resize(n, m);
  r.i3.resize(m, n);
  for (int j = 0; j < m; ++j) {
    const auto [p, q] = pi.pairs()[j];
    for (int i = 0; i < n; ++i) {
      r.i2(i, j) = -(S(q) * Nb(i, p) + S(p) * Nb(i, q)) / k;
      r.i3(j, i) = -(std::conj(S(q)) * Nb(p, i) + std::conj(S(p)) * Nb(q, i)) / k;
    }
  }
  r.i4.resize(m, m);
  for (int x = 0; x < m; ++x) {
    const auto [p, q] = pi.pairs()[x];
    for (int y = 0; y < m; ++y) {
      const auto [u, v] = pi.pairs()[y];
      r.i4(x, y) = (Nb(q, v) * Nb(p, u) + Nb(p, v) * Nb(q, u)) / k;
    }
  }
  r.h_inv = assemble_blocks(r.i1, r.i2, r.i3, r.i4);
  return r;
}

double log_metric_det(const MetricParams& params, const JacobiBallPoint& pt) {
  return hermitian_logdet(metric_blocks(params, pt).h, "metric matrix");
}

Determinant metric_det(const MetricParams& params, const JacobiBallPoint& pt) {
  const int n = params.n;
  const double m = n * (n + 1) / 2.0;
  Determinant d;
  d.value = std::exp(log_metric_det(params, pt));
  d.constant_C = std::pow(2.0, n * (n - 1) / 2.0);
  const double logdetN = hermitian_logdet(CMat::Identity(n, n) - pt.W * pt.W.conjugate(), "1 - W Wbar");
  d.closed_form = d.constant_C * std::pow(0.5 * params.k, m) * std::pow(params.mu, n) * std::exp(-(n + 2) * logdetN);
  return d;
}

double scalar_curvature_closed_form(const MetricParams& params) {
  const double n = params.n;
  return -(2.0 / params.k) * n * (n + 1) * (n + 2) / 2.0;
}

CurvatureData curvature(const MetricParams& params, const JacobiBallPoint& pt) {
  const AuxMatrices a = aux_matrices(params, pt);
  const int n = params.n;
  const PairIndex pi(n);
  const int d = pi.d(), m = pi.size();
  CurvatureData c;
  c.ric = CMat::Zero(d, d);
  c.ric.bottomRightCorner(m, m) = -(n + 2.0) * ball_hk(a.M);
  c.scalar_curvature = scalar_curvature_closed_form(params);
  c.qk_lu = ((n + 1.0) * (n + 2.0) / 2.0) * metric_blocks(params, pt).h - c.ric;
  return c;
}

double ds2_upper(const CMat& V, const CMat& dV) {
  validate_upper_point(V);
  if (dV.rows() != V.rows() || dV.cols() != V.cols()) throw Error(ErrorKind::DimensionMismatch, "dV shape");
  const CMat Rinv = inverse(CMat(V.imag().cast<cplx>()), "Im V");
  return (Rinv * dV * Rinv * dV.conjugate()).trace().real();
}

double ds2_ball(const CMat& W, const CMat& dW) {
  validate_ball_point(W);
  if (dW.rows() != W.rows() || dW.cols() != W.cols()) throw Error(ErrorKind::DimensionMismatch, "dW shape");
  const int n = static_cast<int>(W.rows());
  const CMat M = inverse(CMat(CMat::Identity(n, n) - W * W.conjugate()), "1 - W Wbar");
  return 4.0 * (M * dW * M.conjugate() * dW.conjugate()).trace().real();
}

double ds2_jacobi_ball(const MetricParams& params, const JacobiBallPoint& pt, const TangentVector& v) {
  const AuxMatrices a = aux_matrices(params, pt);
  if (v.dz.size() != params.n || v.dW.rows() != params.n || v.dW.cols() != params.n)
    throw Error(ErrorKind::DimensionMismatch, "tangent dimension differs from n");
  const CMat B = a.M * v.dW;
  const CVec A = v.dz + v.dW * a.eta.conjugate();
  const double wpart = (B * a.M.conjugate() * v.dW.conjugate()).trace().real();
  const double zpart = (A.transpose() * a.M.conjugate() * A.conjugate()).value().real();
  return 0.5 * params.k * wpart + params.mu * zpart;
}

double quadratic_form(const CMat& h, const CVec& v) {
  return (v.transpose() * h * v.conjugate()).value().real();
}

}  // namespace sjk
