#include "sjk/domains.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include "sjk/error.hpp"

namespace sjk {

JacobiBallPoint JacobiBallPoint::origin(int n) {
  return {CVec::Zero(n), CMat::Zero(n, n)};
}

PairIndex::PairIndex(int n) : n_(n) {
  if (n < 1) throw Error(ErrorKind::InvalidInput, "dimension n must be >= 1");
  pairs_.reserve(static_cast<std::size_t>(n * (n + 1) / 2));
  for (int p = 0; p < n; ++p)
    for (int q = p; q < n; ++q) pairs_.emplace_back(p, q);
}

int PairIndex::flatten(int p, int q) const {
  if (p > q) std::swap(p, q);
  if (p < 0 || q >= n_) throw Error(ErrorKind::IndexOutOfRange, "pair index outside 0..n-1");
  // rows 0..p-1 contribute n, n-1, ..., n-p+1 entries
  return p * n_ - p * (p - 1) / 2 + (q - p);
}

std::pair<int, int> PairIndex::unflatten(int i) const {
  if (i < 0 || i >= size()) throw Error(ErrorKind::IndexOutOfRange, "flat pair index out of range");
  return pairs_[static_cast<std::size_t>(i)];
}

CVec flatten_sym(const CMat& W) {
  const PairIndex pi(static_cast<int>(W.rows()));
  CVec v(pi.size());
  for (int i = 0; i < pi.size(); ++i) {
    const auto [p, q] = pi.pairs()[i];
    v(i) = W(p, q);
  }
  return v;
}

CMat unflatten_sym(const CVec& v, int n) {
  const PairIndex pi(n);
  if (v.size() != pi.size()) throw Error(ErrorKind::DimensionMismatch, "pair vector has wrong length");
  CMat W(n, n);
  for (int i = 0; i < pi.size(); ++i) {
    const auto [p, q] = pi.pairs()[i];
    W(p, q) = v(i);
    W(q, p) = v(i);
  }
  return W;
}

CVec flatten(const JacobiBallPoint& pt) {
  const int n = pt.n();
  if (pt.z.size() != n) throw Error(ErrorKind::DimensionMismatch, "z and W sizes disagree");
  CVec w = flatten_sym(pt.W);
  CVec v(n + w.size());
  v << pt.z, w;
  return v;
}

JacobiBallPoint unflatten_jacobi(const CVec& v, int n) {
  const PairIndex pi(n);
  if (v.size() != pi.d()) throw Error(ErrorKind::DimensionMismatch, "flat point has wrong length");
  return {v.head(n), unflatten_sym(v.tail(pi.size()), n)};
}

CVec flatten_tangent(const TangentVector& t) {
  return flatten(JacobiBallPoint{t.dz, t.dW});
}

BallDiagnostics ball_diagnostics(const CMat& W) {
  BallDiagnostics d;
  d.symmetry_defect = max_abs(W - W.transpose());
  const int n = static_cast<int>(W.rows());
  d.min_eig_N = min_hermitian_eigenvalue(CMat::Identity(n, n) - W * W.conjugate());
  return d;
}

BallDiagnostics validate_ball_point(const CMat& W, double tol) {
  if (W.rows() != W.cols() || W.rows() == 0)
    throw Error(ErrorKind::DimensionMismatch, "W must be a non-empty square matrix");
  const BallDiagnostics d = ball_diagnostics(W);
  if (d.symmetry_defect > tol)
    throw Error(ErrorKind::NonSymmetric, "max|W - W^T| = " + std::to_string(d.symmetry_defect));
  if (!(d.min_eig_N > tol))
    throw Error(ErrorKind::NotInBall, "lambda_min(1 - W Wbar) = " + std::to_string(d.min_eig_N));
  return d;
}

bool in_ball(const CMat& W, double tol) {
  const BallDiagnostics d = ball_diagnostics(W);
  return d.symmetry_defect <= tol && d.min_eig_N > tol;
}

UpperDiagnostics validate_upper_point(const CMat& V, double tol) {
  if (V.rows() != V.cols() || V.rows() == 0)
    throw Error(ErrorKind::DimensionMismatch, "V must be a non-empty square matrix");
  UpperDiagnostics d;
  d.symmetry_defect = max_abs(V - V.transpose());
  d.min_eig_R = min_symmetric_eigenvalue(V.imag());
  if (d.symmetry_defect > tol)
    throw Error(ErrorKind::NonSymmetric, "max|V - V^T| = " + std::to_string(d.symmetry_defect));
  if (!(d.min_eig_R > tol))
    throw Error(ErrorKind::NotInUpper, "lambda_min(Im V) = " + std::to_string(d.min_eig_R));
  return d;
}

bool in_upper(const CMat& V, double tol) {
  return max_abs(V - V.transpose()) <= tol && min_symmetric_eigenvalue(V.imag()) > tol;
}

int delta_symbol(int i, int j, int p, int q, int n) {
  for (int x : {i, j, p, q})
    if (x < 1 || x > n) throw Error(ErrorKind::IndexOutOfRange, "delta_symbol index outside 1..n");
  auto d = [](int a, int b) { return a == b ? 1 : 0; };
  return d(i, p) * d(j, q) + d(i, q) * d(j, p) - d(i, j) * d(p, q) * d(i, p);
}

Domain parse_domain(const std::string& s) {
  if (s == "ball") return Domain::ball;
  if (s == "jacobi_ball") return Domain::jacobi_ball;
  if (s == "upper") return Domain::upper;
  if (s == "jacobi_upper") return Domain::jacobi_upper;
  throw Error(ErrorKind::InvalidInput, "unknown domain '" + s + "'");
}

const char* to_string(Domain d) {
  switch (d) {
    case Domain::ball: return "ball";
    case Domain::jacobi_ball: return "jacobi_ball";
    case Domain::upper: return "upper";
    case Domain::jacobi_upper: return "jacobi_upper";
  }
  return "?";
}

namespace {

CMat complex_gaussian_matrix(int n, Rng& rng, double sigma) {
  std::normal_distribution<double> g(0.0, sigma);
  CMat A(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double re = g(rng);
      const double im = g(rng);
      A(i, j) = cplx(re, im);
    }
  return A;
}

}  // namespace

CVec sample_complex_gaussian(int n, Rng& rng) {
  std::normal_distribution<double> g(0.0, std::sqrt(0.5));
  CVec z(n);
  for (int i = 0; i < n; ++i) {
    const double re = g(rng);
    const double im = g(rng);
    z(i) = cplx(re, im);
  }
  return z;
}

CMat sample_ball_W(int n, Rng& rng, double radius) {
  if (n < 1) throw Error(ErrorKind::InvalidInput, "n must be >= 1");
  if (!(radius >= 0.0 && radius < 1.0)) throw Error(ErrorKind::InvalidInput, "radius must lie in [0,1)");
  if (radius == 0.0) return CMat::Zero(n, n);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    const CMat A = complex_gaussian_matrix(n, rng, std::sqrt(0.5));
    const CMat S = A + A.transpose();
    const double nrm = Eigen::JacobiSVD<CMat>(S).singularValues()(0);
    if (nrm == 0.0) continue;
    CMat W = (radius / (2.0 * nrm)) * S;
    W = 0.5 * (W + W.transpose()).eval();
    if (ball_diagnostics(W).min_eig_N > 1e-3) return W;
  }
  throw Error(ErrorKind::RejectionLimit, "no interior sample after 1000 tries");
}

JacobiBallPoint sample_jacobi_ball(int n, Rng& rng, double radius) {
  CMat W = sample_ball_W(n, rng, radius);
  CVec z = sample_complex_gaussian(n, rng);
  return {std::move(z), std::move(W)};
}

JacobiUpperPoint sample_jacobi_upper(int n, Rng& rng, double radius) {
  const JacobiBallPoint b = sample_jacobi_ball(n, rng, radius);
  const CMat one = CMat::Identity(n, n);
  const CMat inv1mW = inverse(one - b.W, "1 - W");
  CMat V = I * inv1mW * (one + b.W);
  V = 0.5 * (V + V.transpose()).eval();
  return {inv1mW * b.z, std::move(V)};
}

AnyPoint sample_point(Domain domain, int n, Rng& rng, double radius) {
  switch (domain) {
    case Domain::ball: return SiegelBallPoint{sample_ball_W(n, rng, radius)};
    case Domain::jacobi_ball: return sample_jacobi_ball(n, rng, radius);
    case Domain::upper: return SiegelUpperPoint{sample_jacobi_upper(n, rng, radius).V};
    case Domain::jacobi_upper: return sample_jacobi_upper(n, rng, radius);
  }
  throw Error(ErrorKind::InvalidInput, "unknown domain");
}

CMat sample_near_boundary_W(int n, Rng& rng, double margin) {
  if (!(margin > 0.0 && margin < 1.0)) throw Error(ErrorKind::InvalidInput, "margin must lie in (0,1)");
  const CMat A = complex_gaussian_matrix(n, rng, 1.0);
  Eigen::HouseholderQR<CMat> qr(A);
  CMat U = qr.householderQ() * CMat::Identity(n, n);
  const double smax = std::sqrt(1.0 - margin);
  std::uniform_real_distribution<double> unif(0.0, smax);
  Eigen::VectorXd s(n);
  s(0) = smax;
  for (int i = 1; i < n; ++i) s(i) = unif(rng);
  CMat W = U * s.cast<cplx>().asDiagonal() * U.transpose();
  return 0.5 * (W + W.transpose());
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace sjk
