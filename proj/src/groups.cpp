#include "sjk/groups.hpp"

#include <algorithm>
#include <string>

#include <unsupported/Eigen/MatrixFunctions>

#include "sjk/error.hpp"

namespace sjk {

namespace {

void require_same_n(int a, int b, const char* what) {
  if (a != b) throw Error(ErrorKind::DimensionMismatch, std::string(what) + ": dimensions differ");
}

}  // namespace

// ---- SymplecticC ----------------------------------------------------------

SymplecticC SymplecticC::identity(int n) { return {CMat::Identity(n, n), CMat::Zero(n, n)}; }

double SymplecticC::defect() const {
  const int n = this->n();
  const CMat one = CMat::Identity(n, n);
  double e = max_abs(p * p.adjoint() - q * q.adjoint() - one);
  e = std::max(e, max_abs(p * q.transpose() - q * p.transpose()));
  e = std::max(e, max_abs(p.adjoint() * p - q.transpose() * q.conjugate() - one));
  e = std::max(e, max_abs(p.transpose() * q.conjugate() - q.adjoint() * p));
  return e;
}

SymplecticC SymplecticC::make(CMat p, CMat q, double tol) {
  if (p.rows() != p.cols() || q.rows() != q.cols() || p.rows() != q.rows())
    throw Error(ErrorKind::DimensionMismatch, "p and q must be square of equal size");
  SymplecticC g{std::move(p), std::move(q)};
  const double e = g.defect();
  if (!(e <= tol)) throw Error(ErrorKind::InvalidInput, "(p,q) violate the symplectic relations by " + std::to_string(e));
  return g;
}

SymplecticC SymplecticC::inverse() const { return {p.adjoint(), -q.transpose()}; }

CVec SymplecticC::times(const CVec& alpha) const { return p * alpha + q * alpha.conjugate(); }

SymplecticC operator*(const SymplecticC& a, const SymplecticC& b) {
  require_same_n(a.n(), b.n(), "SymplecticC product");
  return {a.p * b.p + a.q * b.q.conjugate(), a.p * b.q + a.q * b.p.conjugate()};
}

// ---- SymplecticR ----------------------------------------------------------

RMat symplectic_J(int n) {
  RMat J = RMat::Zero(2 * n, 2 * n);
  J.topRightCorner(n, n) = RMat::Identity(n, n);
  J.bottomLeftCorner(n, n) = -RMat::Identity(n, n);
  return J;
}

SymplecticR SymplecticR::identity(int n) {
  return {RMat::Identity(n, n), RMat::Zero(n, n), RMat::Zero(n, n), RMat::Identity(n, n)};
}

SymplecticR SymplecticR::from_block(const RMat& g) {
  const int n = static_cast<int>(g.rows() / 2);
  if (g.rows() != 2 * n || g.cols() != 2 * n) throw Error(ErrorKind::DimensionMismatch, "symplectic block must be 2n x 2n");
  return {g.topLeftCorner(n, n), g.topRightCorner(n, n), g.bottomLeftCorner(n, n), g.bottomRightCorner(n, n)};
}

RMat SymplecticR::block() const {
  const int n = this->n();
  RMat g(2 * n, 2 * n);
  g << a, b, c, d;
  return g;
}

double SymplecticR::defect() const {
  const RMat g = block();
  const RMat J = symplectic_J(n());
  return max_abs(RMat(g.transpose() * J * g - J));
}

SymplecticR SymplecticR::make(RMat a, RMat b, RMat c, RMat d, double tol) {
  const auto n = a.rows();
  for (const RMat* m : {&a, &b, &c, &d})
    if (m->rows() != n || m->cols() != n) throw Error(ErrorKind::DimensionMismatch, "a,b,c,d must be n x n");
  SymplecticR g{std::move(a), std::move(b), std::move(c), std::move(d)};
  const double e = g.defect();
  if (!(e <= tol)) throw Error(ErrorKind::InvalidInput, "g violates g^T J g = J by " + std::to_string(e));
  return g;
}

SymplecticR SymplecticR::inverse() const {
  return {d.transpose(), -b.transpose(), -c.transpose(), a.transpose()};
}

SymplecticR operator*(const SymplecticR& x, const SymplecticR& y) {
  require_same_n(x.n(), y.n(), "SymplecticR product");
  return SymplecticR::from_block(x.block() * y.block());
}

// ---- Jacobi elements -------------------------------------------------------

JacobiElementC JacobiElementC::identity(int n) { return {SymplecticC::identity(n), CVec::Zero(n), 0.0}; }

JacobiElementC JacobiElementC::inverse() const { return {g.inverse(), -g.times(alpha), -t}; }

JacobiElementR JacobiElementR::identity(int n) { return {SymplecticR::identity(n), RVec::Zero(2 * n), 0.0}; }

JacobiElementR JacobiElementR::inverse() const {
  const SymplecticR gi = g.inverse();
  const RVec X = -(lambda_mu.transpose() * gi.block()).transpose();
  return {gi, X, -k_center};
}

JacobiElementC compose_jacobi_c(const JacobiElementC& h1, const JacobiElementC& h2) {
  require_same_n(h1.n(), h2.n(), "compose_jacobi_c");
  const CVec a1 = h2.g.inverse().times(h1.alpha);
  const double t = h1.t + h2.t + (a1.transpose() * h2.alpha.conjugate()).value().imag();
  return {h1.g * h2.g, a1 + h2.alpha, t};
}

JacobiElementR compose_jacobi_r(const JacobiElementR& h1, const JacobiElementR& h2) {
  require_same_n(h1.n(), h2.n(), "compose_jacobi_r");
  const RMat g2 = h2.g.block();
  const RVec Xg = (h1.lambda_mu.transpose() * g2).transpose();
  const double k = h1.k_center + h2.k_center + Xg.dot(symplectic_J(h1.n()) * h2.lambda_mu);
  return {h1.g * h2.g, Xg + h2.lambda_mu, k};
}

// ---- Cayley ------------------------------------------------------------------

SymplecticC cayley_conjugate(const SymplecticR& g) {
  const CMat a = g.a.cast<cplx>(), b = g.b.cast<cplx>(), c = g.c.cast<cplx>(), d = g.d.cast<cplx>();
  SymplecticC out{0.5 * (a + d + I * (b - c)), 0.5 * (a - d - I * (b + c))};
  const double e = out.defect();
  if (!(e <= 1e-8)) throw Error(ErrorKind::InvalidInput, "Cayley image violates symplectic relations by " + std::to_string(e));
  return out;
}

SymplecticR cayley_conjugate_inverse(const SymplecticC& g) {
  const CMat s = g.p + g.q, t = g.p - g.q;
  SymplecticR out{s.real(), t.imag(), -s.imag(), t.real()};
  const double e = out.defect();
  if (!(e <= 1e-8)) throw Error(ErrorKind::InvalidInput, "real form violates g^T J g = J by " + std::to_string(e));
  return out;
}

// ---- actions -------------------------------------------------------------------

CMat act_siegel_ball(const SymplecticC& g, const CMat& W) {
  require_same_n(g.n(), static_cast<int>(W.rows()), "act_ball");
  const CMat den = g.q.conjugate() * W + g.p.conjugate();
  // X B^{-1} = (B^{-T} X^T)^T
  CMat W1 = solve(CMat(den.transpose()), CMat((g.p * W + g.q).transpose()), "qbar W + pbar").transpose();
  W1 = 0.5 * (W1 + W1.transpose()).eval();
  validate_ball_point(W1, 0.0);
  return W1;
}

JacobiBallPoint act_ball(const JacobiElementC& h, const JacobiBallPoint& pt) {
  require_same_n(h.n(), pt.n(), "act_ball");
  const CMat& W = pt.W;
  const CMat A = W * h.g.q.adjoint() + h.g.p.adjoint();
  CVec z1 = solve(A, CVec(pt.z + h.alpha - W * h.alpha.conjugate()), "W q* + p*");
  return {std::move(z1), act_siegel_ball(h.g, W)};
}

CMat act_siegel_upper(const SymplecticR& g, const CMat& V) {
  require_same_n(g.n(), static_cast<int>(V.rows()), "act_upper");
  const CMat a = g.a.cast<cplx>(), b = g.b.cast<cplx>(), c = g.c.cast<cplx>(), d = g.d.cast<cplx>();
  const CMat den = c * V + d;
  CMat V1 = solve(CMat(den.transpose()), CMat((a * V + b).transpose()), "c V + d").transpose();
  V1 = 0.5 * (V1 + V1.transpose()).eval();
  validate_upper_point(V1, 0.0);
  return V1;
}

JacobiUpperPoint act_upper(const JacobiElementR& h, const JacobiUpperPoint& pt) {
  const int n = pt.n();
  require_same_n(h.n(), n, "act_upper");
  const CMat& V = pt.V;
  const CVec ln = h.lambda_mu.head(n).cast<cplx>();
  const CVec lm = h.lambda_mu.tail(n).cast<cplx>();
  const CMat den = V * h.g.c.transpose().cast<cplx>() + h.g.d.transpose().cast<cplx>();
  CVec u1 = solve(den, CVec(pt.u + V * ln + lm), "V c^T + d^T");
  return {std::move(u1), act_siegel_upper(h.g, V)};
}

JacobiBallPoint partial_cayley(const JacobiUpperPoint& pt) {
  const int n = pt.n();
  const CMat one = CMat::Identity(n, n);
  const CMat Vp = pt.V + I * one;
  const CMat Vp_inv = inverse(Vp, "V + i");
  CMat W = (pt.V - I * one) * Vp_inv;
  W = 0.5 * (W + W.transpose()).eval();
  CVec z = 2.0 * I * (Vp_inv * pt.u);
  return {std::move(z), std::move(W)};
}

JacobiUpperPoint partial_cayley_inverse(const JacobiBallPoint& pt) {
  const int n = pt.n();
  const CMat one = CMat::Identity(n, n);
  const CMat inv1mW = inverse(one - pt.W, "1 - W");
  CMat V = I * inv1mW * (one + pt.W);
  V = 0.5 * (V + V.transpose()).eval();
  return {inv1mW * pt.z, std::move(V)};
}

JacobiElementC theta(const JacobiElementR& h) {
  const int n = h.n();
  const CVec alpha = h.lambda_mu.tail(n).cast<cplx>() + I * h.lambda_mu.head(n).cast<cplx>();
  return {cayley_conjugate(h.g), alpha, h.k_center};
}

FcPoint fc_transform(const JacobiBallPoint& pt) {
  const int n = pt.n();
  const CMat M = inverse(CMat(CMat::Identity(n, n) - pt.W * pt.W.conjugate()), "1 - W Wbar");
  return {M * (pt.z + pt.W * pt.z.conjugate()), pt.W};
}

JacobiBallPoint fc_transform_inverse(const FcPoint& fc) {
  return {fc.eta - fc.W * fc.eta.conjugate(), fc.W};
}

TangentVector act_ball_differential(const JacobiElementC& h, const JacobiBallPoint& pt, const TangentVector& v) {
  require_same_n(h.n(), pt.n(), "act_ball_differential");
  const CMat& W = pt.W;
  const CMat A = W * h.g.q.adjoint() + h.g.p.adjoint();
  const CMat B = h.g.q.conjugate() * W + h.g.p.conjugate();
  const JacobiBallPoint img = act_ball(h, pt);
  const CMat Ainv = inverse(A, "W q* + p*");
  CMat dW1 = Ainv * v.dW * inverse(B, "qbar W + pbar");
  dW1 = 0.5 * (dW1 + dW1.transpose()).eval();
  const CVec dz1 = Ainv * (v.dz - v.dW * (h.alpha.conjugate() + h.g.q.adjoint() * img.z));
  return {dz1, dW1};
}

// ---- random elements ---------------------------------------------------------

SymplecticR random_symplectic_r(int n, Rng& rng, double scale) {
  std::normal_distribution<double> g(0.0, 1.0);
  auto gauss = [&](int r, int c) {
    RMat m(r, c);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) m(i, j) = g(rng);
    return m;
  };
  const RMat a = gauss(n, n);
  RMat b = gauss(n, n);
  RMat c = gauss(n, n);
  b = (b + b.transpose()).eval();
  c = (c + c.transpose()).eval();
  RMat X(2 * n, 2 * n);
  X << a, b, c, -a.transpose();
  const double f = X.norm();
  if (f > scale) X *= scale / f;
  return SymplecticR::from_block(X.exp());
}

JacobiElementR random_jacobi_r(int n, Rng& rng, double scale) {
  SymplecticR g = random_symplectic_r(n, rng, scale);
  std::normal_distribution<double> gd(0.0, 1.0);
  RVec X(2 * n);
  for (int i = 0; i < 2 * n; ++i) X(i) = gd(rng);
  const double k = gd(rng);
  return {std::move(g), std::move(X), k};
}

JacobiElementC random_jacobi_c(int n, Rng& rng, double scale) { return theta(random_jacobi_r(n, rng, scale)); }

}  // namespace sjk
