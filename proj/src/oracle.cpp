#include "sjk/oracle.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "sjk/error.hpp"
#include "sjk/kernels.hpp"

namespace sjk {

namespace {

// Real coordinate A < d is Re zeta_A, A >= d is Im zeta_{A-d}.
CVec shifted(const CVec& x, int A, double h) {
  CVec y = x;
  const auto d = x.size();
  if (A < d)
    y(A) += h;
  else
    y(A - d) += cplx(0.0, h);
  return y;
}

std::vector<double> real_steps(const CVec& x, double base) {
  const auto d = x.size();
  std::vector<double> h(static_cast<std::size_t>(2 * d));
  for (Eigen::Index a = 0; a < d; ++a) {
    h[a] = base * (1.0 + std::abs(x(a)));
    h[a + d] = h[a];
  }
  return h;
}

void guard(const CVec& x, const std::vector<double>& h, double reach, const Inside& inside) {
  if (!inside) return;
  for (std::size_t A = 0; A < h.size(); ++A)
    for (double s : {reach, -reach})
      if (!inside(shifted(x, static_cast<int>(A), s * h[A])))
        throw Error(ErrorKind::StepTooLarge,
                    "finite-difference stencil leaves the domain along real coordinate " + std::to_string(A));
}

// Second derivatives in the 2d real coordinates.
Eigen::MatrixXcd real_hessian(const Field& f, const CVec& x, double base) {
  const auto D = 2 * x.size();
  const std::vector<double> h = real_steps(x, base);
  Eigen::MatrixXcd R(D, D);
  const cplx f0 = f(x);
  for (Eigen::Index A = 0; A < D; ++A) {
    const cplx fpp = f(shifted(x, int(A), 2.0 * h[A]));
    const cplx fmm = f(shifted(x, int(A), -2.0 * h[A]));
    R(A, A) = (fpp - 2.0 * f0 + fmm) / (4.0 * h[A] * h[A]);
    for (Eigen::Index B = A + 1; B < D; ++B) {
      const CVec xp = shifted(x, int(A), h[A]);
      const CVec xm = shifted(x, int(A), -h[A]);
      const cplx v = f(shifted(xp, int(B), h[B])) - f(shifted(xp, int(B), -h[B])) - f(shifted(xm, int(B), h[B])) +
                     f(shifted(xm, int(B), -h[B]));
      R(A, B) = v / (4.0 * h[A] * h[B]);
      R(B, A) = R(A, B);
    }
  }
  return R;
}

CMat wirtinger_from_real(const Eigen::MatrixXcd& R, Eigen::Index d) {
  CMat H(d, d);
  for (Eigen::Index a = 0; a < d; ++a)
    for (Eigen::Index b = 0; b < d; ++b)
      H(a, b) = 0.25 * ((R(a, b) + R(d + a, d + b)) + I * (R(a, d + b) - R(d + a, b)));
  return H;
}

Eigen::MatrixXcd real_jacobian(const PointMap& map, const CVec& x, double base) {
  const auto D = 2 * x.size();
  const std::vector<double> h = real_steps(x, base);
  Eigen::MatrixXcd cols;
  for (Eigen::Index A = 0; A < D; ++A) {
    const CVec c = (map(shifted(x, int(A), h[A])) - map(shifted(x, int(A), -h[A]))) / (2.0 * h[A]);
    if (A == 0) cols.resize(c.size(), D);
    cols.col(A) = c;
  }
  return cols;
}

template <typename F>
auto with_scheme(const FdConfig& cfg, F&& at_step) {
  if (cfg.scheme == FdScheme::central) return at_step(cfg.step);
  const auto coarse = at_step(cfg.step);
  const auto fine = at_step(0.5 * cfg.step);
  return decltype(coarse)((4.0 * fine - coarse) / 3.0);
}

}  // namespace

CMat fd_wirtinger_hessian(const Field& f, const CVec& x, const FdConfig& cfg, const Inside& inside) {
  if (!(cfg.step > 0.0)) throw Error(ErrorKind::InvalidInput, "FD step must be positive");
  guard(x, real_steps(x, cfg.step), 2.0, inside);
  const Eigen::MatrixXcd R = with_scheme(cfg, [&](double h) { return real_hessian(f, x, h); });
  return wirtinger_from_real(R, x.size());
}

WirtingerGradient fd_wirtinger_gradient(const Field& f, const CVec& x, const FdConfig& cfg, const Inside& inside) {
  if (!(cfg.step > 0.0)) throw Error(ErrorKind::InvalidInput, "FD step must be positive");
  guard(x, real_steps(x, cfg.step), 1.0, inside);
  const auto d = x.size();
  const CVec g = with_scheme(cfg, [&](double base) {
    const std::vector<double> h = real_steps(x, base);
    CVec r(2 * d);
    for (Eigen::Index A = 0; A < 2 * d; ++A)
      r(A) = (f(shifted(x, int(A), h[A])) - f(shifted(x, int(A), -h[A]))) / (2.0 * h[A]);
    return r;
  });
  return {0.5 * (g.head(d) - I * g.tail(d)), 0.5 * (g.head(d) + I * g.tail(d))};
}

JacobianResult fd_jacobian_unchecked(const PointMap& map, const CVec& x, const FdConfig& cfg, const Inside& inside) {
  if (!(cfg.step > 0.0)) throw Error(ErrorKind::InvalidInput, "FD step must be positive");
  guard(x, real_steps(x, cfg.step), 1.0, inside);
  const auto d = x.size();
  const Eigen::MatrixXcd R = with_scheme(cfg, [&](double h) { return real_jacobian(map, x, h); });
  return {0.5 * (R.leftCols(d) - I * R.rightCols(d)), 0.5 * (R.leftCols(d) + I * R.rightCols(d))};
}

JacobianResult fd_jacobian(const PointMap& map, const CVec& x, const FdConfig& cfg, const Inside& inside,
                           double holo_tol) {
  JacobianResult r = fd_jacobian_unchecked(map, x, cfg, inside);
  const double scale = std::max(1.0, max_abs(r.J));
  const double bar = max_abs(r.Jbar);
  if (bar > holo_tol * scale)
    throw Error(ErrorKind::NonHolomorphic, "antiholomorphic Jacobian block has size " + std::to_string(bar));
  return r;
}

Inside ball_inside(int n) {
  return [n](const CVec& v) { return in_ball(unflatten_sym(v, n), 0.0); };
}

Inside jacobi_ball_inside(int n) {
  return [n](const CVec& v) { return in_ball(unflatten_sym(v.tail(v.size() - n), n), 0.0); };
}

Inside upper_inside(int n) {
  return [n](const CVec& v) { return in_upper(unflatten_sym(v, n), 0.0); };
}

double volume_invariance_check(Domain domain, const JacobiElementC& h, const JacobiBallPoint& pt, const FdConfig& cfg) {
  const int n = pt.n();
  if (domain == Domain::ball) {
    const PointMap map = [&](const CVec& v) { return flatten_sym(act_siegel_ball(h.g, unflatten_sym(v, n))); };
    const JacobianResult jr = fd_jacobian(map, flatten_sym(pt.W), cfg, ball_inside(n));
    const double detJ = std::abs(jr.J.determinant());
    const double Q0 = volume_densities(pt.W).Q_ball;
    const double Q1 = volume_densities(act_siegel_ball(h.g, pt.W)).Q_ball;
    return std::abs(detJ * detJ * Q1 / Q0 - 1.0);
  }
  if (domain == Domain::jacobi_ball) {
    const PointMap map = [&](const CVec& v) { return flatten(act_ball(h, unflatten_jacobi(v, n))); };
    const JacobianResult jr = fd_jacobian(map, flatten(pt), cfg, jacobi_ball_inside(n));
    const double detJ = std::abs(jr.J.determinant());
    const double Q0 = volume_densities(pt.W).Q_jacobi;
    const double Q1 = volume_densities(act_ball(h, pt).W).Q_jacobi;
    return std::abs(detJ * detJ * Q1 / Q0 - 1.0);
  }
  throw Error(ErrorKind::InvalidInput, "volume check is defined for ball and jacobi_ball");
}

}  // namespace sjk
