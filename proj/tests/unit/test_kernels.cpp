#include <doctest.h>

#include <cmath>
#include <numbers>

#include "sjk/error.hpp"
#include "sjk/kernels.hpp"

using namespace sjk;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no sjk::Error thrown");
  return ErrorKind::InvalidInput;
}

cplx branchwise_log_det(const CMat& W, const CMat& Vb) {
  Eigen::ComplexEigenSolver<CMat> es(CMat(W * Vb));
  cplx s = 0.0;
  for (Eigen::Index i = 0; i < W.rows(); ++i) s += std::log(1.0 - es.eigenvalues()(i));
  return s;
}

}  // namespace

TEST_CASE("two-point kernel examples") {
  const MetricParams p{2, 3.5, 1.2};
  const KernelEval o = two_point_kernel(p, JacobiBallPoint::origin(2), JacobiBallPoint::origin(2));
  CHECK(std::abs(o.K - 1.0) < 1e-15);

  Rng rng(1);
  const CVec x = sample_complex_gaussian(2, rng);
  const CVec y = sample_complex_gaussian(2, rng);
  const KernelEval flat = two_point_kernel(p, {x, CMat::Zero(2, 2)}, {y, CMat::Zero(2, 2)});
  const cplx expect = std::exp(1.2 * (x.adjoint() * y).value());
  CHECK(std::abs(flat.K - expect) < 1e-13 * std::abs(expect));

  const KernelEval diag = two_point_kernel(p, {x, CMat::Zero(2, 2)}, {x, CMat::Zero(2, 2)});
  CHECK(diag.K.real() == doctest::Approx(std::exp(1.2 * x.squaredNorm())).epsilon(1e-13));
}

TEST_CASE("kernel diagonal is the potential, Hermitian symmetry") {
  Rng rng(2);
  for (int n = 1; n <= 3; ++n) {
    const MetricParams p{n, 2.7, 0.7};
    for (int i = 0; i < 20; ++i) {
      const JacobiBallPoint a = sample_jacobi_ball(n, rng, 0.95);
      const JacobiBallPoint b = sample_jacobi_ball(n, rng, 0.95);
      const KernelEval d = two_point_kernel(p, a, a);
      CHECK(std::abs(d.log_K.imag()) < 1e-12);
      CHECK(std::abs(d.log_K.real() - kahler_potential(p, a)) < 1e-12 * std::max(1.0, std::abs(d.log_K.real())));
      const cplx ab = two_point_kernel(p, a, b).K;
      const cplx ba = two_point_kernel(p, b, a).K;
      CHECK(std::abs(ab - std::conj(ba)) < 1e-10 * std::abs(ab));
    }
  }
}

TEST_CASE("branch tracking agrees with the eigenvalue route") {
  Rng rng(3);
  for (int n = 1; n <= 4; ++n)
    for (int i = 0; i < 20; ++i) {
      const CMat W = sample_near_boundary_W(n, rng, 1e-2);
      const CMat V = sample_near_boundary_W(n, rng, 1e-2);
      const CMat Vb = V.conjugate();
      CHECK(std::abs(tracked_log_det_1m(W, Vb) - branchwise_log_det(W, Vb)) < 1e-10);
    }
  // a non-integer power whose principal branch would jump: arg drifts past pi
  const CMat W = CMat::Constant(1, 1, cplx(0.99, 0.0));
  const CMat Vb = CMat::Constant(1, 1, std::polar(0.99, 3.0));
  CHECK(std::abs(tracked_log_det_1m(W, Vb) - std::log(1.0 - W(0, 0) * Vb(0, 0))) < 1e-12);
}

TEST_CASE("normalized kernels") {
  const MetricParams p{1, 3.0, 1.0};
  Rng rng(4);
  const JacobiBallPoint a = sample_jacobi_ball(1, rng, 0.9);
  const NormalizedKernels self = normalized_kernels(p, a, a);
  CHECK(std::abs(self.kappa - 1.0) < 1e-12);
  CHECK(self.berezin == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(self.diastasis) < 1e-12);

  for (double r : {0.1, 0.5, 0.9}) {
    const JacobiBallPoint b{CVec::Zero(1), CMat::Constant(1, 1, r)};
    const NormalizedKernels nk = normalized_kernels(p, JacobiBallPoint::origin(1), b);
    CHECK(nk.diastasis == doctest::Approx(-1.5 * std::log(1.0 - r * r)).epsilon(1e-12));
  }

  for (int n = 1; n <= 2; ++n) {
    const MetricParams q{n, 4.5, 1.3};
    for (int i = 0; i < 20; ++i) {
      const JacobiBallPoint x = sample_jacobi_ball(n, rng, 0.9);
      const JacobiBallPoint y = sample_jacobi_ball(n, rng, 0.9);
      const NormalizedKernels xy = normalized_kernels(q, x, y);
      const NormalizedKernels yx = normalized_kernels(q, y, x);
      CHECK(xy.berezin > 0.0);
      CHECK(xy.berezin < 1.0 - 1e-12);
      CHECK(xy.diastasis == doctest::Approx(yx.diastasis).epsilon(1e-10));
      CHECK(xy.berezin == doctest::Approx(std::norm(xy.kappa)).epsilon(1e-12));
    }
  }
}

TEST_CASE("literal closed form of the normalized kernel is kappa squared") {
  Rng rng(5);
  const MetricParams p{2, 3.3, 0.9};
  for (int i = 0; i < 5; ++i) {
    const JacobiBallPoint a = sample_jacobi_ball(2, rng, 0.9);
    const JacobiBallPoint b = sample_jacobi_ball(2, rng, 0.9);
    const CMat one = CMat::Identity(2, 2);
    const cplx ld_u = -tracked_log_det_1m(b.W, a.W.conjugate());
    const double ld_ma = -std::log(CMat(one - a.W * a.W.conjugate()).determinant().real());
    const double ld_mb = -std::log(CMat(one - b.W * b.W.conjugate()).determinant().real());
    const cplx F12 = two_point_kernel(p, a, b).F;
    const cplx F11 = two_point_kernel(p, a, a).F;
    const cplx F22 = two_point_kernel(p, b, b).F;
    const cplx lit = p.k * ld_u - 0.5 * p.k * (ld_ma + ld_mb) + p.mu * (2.0 * F12 - F11 - F22);
    const cplx kappa = normalized_kernels(p, a, b).kappa;
    CHECK(std::abs(std::exp(lit) - kappa * kappa) < 1e-10);
  }
}

TEST_CASE("epsilon function") {
  const MetricParams p{2, 3.0, 1.0};
  CHECK(epsilon_function(p, JacobiBallPoint::origin(2)) == doctest::Approx(1.0).epsilon(1e-15));
  Rng rng(6);
  for (int i = 0; i < 20; ++i)
    CHECK(std::abs(epsilon_function(p, sample_jacobi_ball(2, rng, 0.9)) - 1.0) < 1e-10);
  for (int i = 0; i < 5; ++i) {
    const JacobiBallPoint near{sample_complex_gaussian(2, rng), sample_near_boundary_W(2, rng, 1e-3)};
    CHECK(std::abs(epsilon_function(p, near) - 1.0) < 1e-8);
  }
}

TEST_CASE("volume densities and normalization constant") {
  const VolumeData z = volume_densities(CMat::Zero(2, 2));
  CHECK(z.Q_ball == 1.0);
  CHECK(z.Q_jacobi == 1.0);
  const VolumeData h = volume_densities(CMat::Constant(1, 1, 0.5));
  CHECK(h.Q_jacobi == doctest::Approx(std::pow(0.75, -3)).epsilon(1e-14));
  CHECK(h.Q_ball == doctest::Approx(std::pow(0.75, -2)).epsilon(1e-14));
  Rng rng(7);
  const VolumeData r = volume_densities(sample_ball_W(3, rng, 0.8));
  CHECK(r.Q_ball > 1.0);
  CHECK(r.Q_jacobi > r.Q_ball);

  const double pi2 = std::numbers::pi * std::numbers::pi;
  CHECK(normalization_constant({1, 5.0, 1.0}) == doctest::Approx(1.0 / pi2).epsilon(1e-14));
  CHECK(normalization_constant({1, 5.0, 2.0}) == doctest::Approx(2.0 / pi2).epsilon(1e-14));
  CHECK(kind_of([] { normalization_constant({1, 3.0, 1.0}); }) == ErrorKind::GammaPoleError);
  CHECK(kind_of([] { normalization_constant({2, 3.5, 1.0}); }) == ErrorKind::GammaPoleError);
  CHECK(normalization_constant({2, 8.0, 1.0}) > 0.0);
}

TEST_CASE("Gauss-Legendre rule") {
  RVec x, w;
  gauss_legendre(10, x, w);
  CHECK(w.sum() == doctest::Approx(2.0).epsilon(1e-14));
  // exact through degree 19
  double s = 0.0;
  for (int i = 0; i < 10; ++i) s += w(i) * std::pow(x(i), 18);
  CHECK(s == doctest::Approx(2.0 / 19.0).epsilon(1e-13));
}

TEST_CASE("Parseval normalization for n = 1") {
  const ParsevalResult r6 = parseval_check_n1(6.0, 1.0);
  MESSAGE("k=6: " << r6.value);
  CHECK(std::abs(r6.value - 1.0) < 0.02);
  const double a = parseval_check_n1(10.0, 1.0).value;
  const double b = parseval_check_n1(10.0, 2.0).value;
  CHECK(std::abs(a - b) < 1e-3 * std::abs(a));
  CHECK(kind_of([] { parseval_check_n1(3.0, 1.0); }) == ErrorKind::GammaPoleError);
}
