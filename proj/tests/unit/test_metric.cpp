#include <doctest.h>

#include <cmath>

#include "sjk/metric.hpp"
#include "sjk/oracle.hpp"

using namespace sjk;

namespace {

CMat eye(Eigen::Index d) { return CMat::Identity(d, d); }

Field potential_field(const MetricParams& p) {
  return [p](const CVec& v) { return cplx(kahler_potential(p, unflatten_jacobi(v, p.n)), 0.0); };
}

}  // namespace

TEST_CASE("MetricParams") {
  CHECK_THROWS(MetricParams{1, 0.0, 1.0}.validate());
  CHECK_THROWS(MetricParams{1, 1.0, -1.0}.validate());
  CHECK_THROWS(MetricParams{0, 1.0, 1.0}.validate());
  CHECK_FALSE(MetricParams{1, 2.5, 1.0}.weight_warning());
  CHECK(MetricParams{1, 2.3, 1.0}.weight_warning());
}

TEST_CASE("aux matrices") {
  Rng rng(1);
  const MetricParams p{3, 4.0, 1.5};
  const JacobiBallPoint pt = sample_jacobi_ball(3, rng, 0.9);
  const AuxMatrices a = aux_matrices(p, pt);
  CHECK(max_abs(CMat(a.M * a.N - eye(3))) < 1e-12);
  CHECK(max_abs(CMat(a.X - a.X.transpose())) < 1e-12);
  CHECK(a.metric_alpha >= 0.0);
  CHECK(a.theta == doctest::Approx(1.0 / 1.5 + 2.0 * a.metric_alpha / 4.0));
}

TEST_CASE("kahler potential examples") {
  const MetricParams p{2, 3.0, 1.7};
  CHECK(kahler_potential(p, JacobiBallPoint::origin(2)) == 0.0);
  Rng rng(2);
  const CVec z = sample_complex_gaussian(2, rng);
  CHECK(kahler_potential(p, {z, CMat::Zero(2, 2)}) == doctest::Approx(1.7 * z.squaredNorm()).epsilon(1e-14));
  const MetricParams p1{1, 2.0, 1.0};
  CHECK(kahler_potential(p1, {CVec::Zero(1), CMat::Constant(1, 1, 0.5)}) == doctest::Approx(0.287682072451781).epsilon(1e-12));
}

TEST_CASE("metric blocks at W = 0") {
  Rng rng(3);
  for (int n = 1; n <= 3; ++n) {
    const MetricParams p{n, 3.0, 1.3};
    const PairIndex pi(n);
    const CVec z = sample_complex_gaussian(n, rng);
    const MetricEval e = metric_blocks(p, {z, CMat::Zero(n, n)});
    CHECK(max_abs(CMat(e.h1 - 1.3 * eye(n))) < 1e-15);
    for (int j = 0; j < pi.size(); ++j) {
      const auto [pp, qq] = pi.pairs()[j];
      for (int i = 0; i < n; ++i) {
        const cplx expect = 1.3 * (z(qq) * double(i == pp) + z(pp) * double(i == qq)) * f_pair(pp, qq);
        CHECK(std::abs(e.h2(i, j) - expect) < 1e-15);
      }
    }
    const MetricEval o = metric_blocks(p, JacobiBallPoint::origin(n));
    for (int a = 0; a < pi.size(); ++a)
      for (int b = 0; b < pi.size(); ++b) {
        const auto [pp, qq] = pi.pairs()[a];
        const double expect = a != b ? 0.0 : (pp == qq ? 1.5 : 3.0);
        CHECK(std::abs(o.h4(a, b) - expect) < 1e-15);
      }
  }
}

TEST_CASE("metric blocks match the FD Hessian of the potential") {
  Rng rng(4);
  for (int n = 1; n <= 3; ++n) {
    const MetricParams p{n, 2.5, 0.8};
    for (int i = 0; i < 5; ++i) {
      const JacobiBallPoint pt = sample_jacobi_ball(n, rng, 0.9);
      const CMat H = fd_wirtinger_hessian(potential_field(p), flatten(pt), {}, jacobi_ball_inside(n));
      const MetricEval e = metric_blocks(p, pt);
      CHECK(relative_max_error(H, e.h) < 1e-6);
      CHECK(max_abs(CMat(e.h - e.h.adjoint())) < 1e-14 * max_abs(e.h));
      CHECK(min_hermitian_eigenvalue(e.h) > 0.0);
    }
  }
}

TEST_CASE("closed-form inverse") {
  for (int n = 1; n <= 3; ++n) {
    const MetricParams p{n, 3.0, 2.0};
    const PairIndex pi(n);
    const MetricInverse o = metric_inverse(p, JacobiBallPoint::origin(n));
    CHECK(max_abs(CMat(o.i1 - 0.5 * eye(n))) < 1e-15);
    CHECK(max_abs(o.i2) == 0.0);
    CHECK(max_abs(o.i3) == 0.0);
    for (int a = 0; a < pi.size(); ++a) {
      const auto [pp, qq] = pi.pairs()[a];
      CHECK(std::abs(o.i4(a, a) - (pp == qq ? 2.0 / 3.0 : 1.0 / 3.0)) < 1e-15);
    }

    // W = 0, z != 0: (1/mu + |z|^2/k) 1 + conj(z) z^T / k, which is
    // (1/mu + 2|z|^2/k) for n = 1.
    Rng rng(5);
    const CVec z = sample_complex_gaussian(n, rng);
    const MetricInverse iz = metric_inverse(p, {z, CMat::Zero(n, n)});
    const CMat expect = (0.5 + z.squaredNorm() / 3.0) * eye(n) + z.conjugate() * z.transpose() / 3.0;
    CHECK(max_abs(CMat(iz.i1 - expect)) < 1e-14);
    if (n == 1) CHECK(std::abs(iz.i1(0, 0) - (0.5 + 2.0 * z.squaredNorm() / 3.0)) < 1e-14);

    for (int i = 0; i < 20; ++i) {
      const JacobiBallPoint pt = sample_jacobi_ball(n, rng, 0.9);
      const CMat prod = metric_blocks(p, pt).h * metric_inverse(p, pt).h_inv;
      CHECK(max_abs(CMat(prod - eye(pi.d()))) < 1e-10);
    }
  }
}

TEST_CASE("n = 1 inverse against the disk formula with 2k -> k/2") {
  Rng rng(6);
  const MetricParams p{1, 5.0, 1.5};
  const JacobiBallPoint pt = sample_jacobi_ball(1, rng, 0.9);
  const double P = 1.0 - std::norm(pt.W(0, 0));
  const cplx eta = (pt.z(0) + pt.W(0, 0) * std::conj(pt.z(0))) / P;
  const MetricInverse iv = metric_inverse(p, pt);
  CHECK(std::abs(iv.i1(0, 0) - (P / 1.5 + 2.0 * P * P * std::norm(eta) / 5.0)) < 1e-13);
}

TEST_CASE("determinant") {
  const MetricParams p1{1, 3.0, 1.4};
  CHECK(metric_det(p1, JacobiBallPoint::origin(1)).value == doctest::Approx(1.5 * 1.4).epsilon(1e-14));
  const MetricParams p2{2, 3.0, 1.4};
  const Determinant d2 = metric_det(p2, JacobiBallPoint::origin(2));
  CHECK(d2.value == doctest::Approx(2.0 * std::pow(1.5, 3) * 1.4 * 1.4).epsilon(1e-14));
  CHECK(d2.constant_C == 2.0);

  const MetricParams unit{1, 2.0, 1.0};
  const Determinant du = metric_det(unit, JacobiBallPoint::origin(1));
  CHECK(du.value == 1.0);
  CHECK(du.closed_form == 1.0);
  CHECK(du.constant_C == 1.0);

  Rng rng(7);
  for (int n = 1; n <= 3; ++n) {
    const MetricParams p{n, 2.7, 0.6};
    const double d0 = metric_det(p, JacobiBallPoint::origin(n)).value;
    for (int i = 0; i < 10; ++i) {
      const JacobiBallPoint pt = sample_jacobi_ball(n, rng, 0.9);
      const Determinant d = metric_det(p, pt);
      CHECK(d.value == doctest::Approx(d.closed_form).epsilon(1e-10));
      const double detN = CMat(eye(n) - pt.W * pt.W.conjugate()).determinant().real();
      CHECK(d.value / d0 == doctest::Approx(std::pow(detN, -(n + 2))).epsilon(1e-10));
    }
  }
}

TEST_CASE("Siegel-ball pair inverse") {
  for (int n = 1; n <= 3; ++n) {
    const PairIndex pi(n);
    const BallMetricPair o = ball_metric_pair(CMat::Zero(n, n));
    for (int a = 0; a < pi.size(); ++a) {
      const auto [pp, qq] = pi.pairs()[a];
      CHECK(std::abs(o.hk(a, a) - (pp == qq ? 1.0 : 2.0)) < 1e-15);
      CHECK(std::abs(o.k_inv(a, a) - (pp == qq ? 1.0 : 0.5)) < 1e-15);
    }
  }
  Rng rng(8);
  for (int i = 0; i < 10; ++i) {
    const CMat W = sample_ball_W(2, rng, 0.9);
    const BallMetricPair bp = ball_metric_pair(W);
    CHECK(max_abs(CMat(bp.hk * bp.k_inv - eye(3))) < 1e-12);
  }
  const CMat w = CMat::Constant(1, 1, cplx(0.3, -0.4));
  const BallMetricPair b1 = ball_metric_pair(w);
  CHECK(std::abs(b1.hk(0, 0) - 1.0 / std::pow(0.75, 2)) < 1e-14);
  CHECK(std::abs(b1.k_inv(0, 0) - std::pow(0.75, 2)) < 1e-14);
}

TEST_CASE("negative control: transposed h^k index order breaks the pair inverse") {
  Rng rng(9);
  const CMat W = sample_ball_W(2, rng, 0.9);
  const BallMetricPair bp = ball_metric_pair(W);
  CHECK(max_abs(CMat(CMat(bp.hk.transpose()) * bp.k_inv - eye(3))) > 1e-3);
}

TEST_CASE("curvature closed forms") {
  CHECK(scalar_curvature_closed_form({1, 3.0, 1.0}) == doctest::Approx(-2.0));
  CHECK(scalar_curvature_closed_form({2, 2.0, 1.0}) == -12.0);
  Rng rng(10);
  for (int n = 1; n <= 3; ++n) {
    const MetricParams p{n, 2.0, 1.0};
    const PairIndex pi(n);
    const CurvatureData o = curvature(p, JacobiBallPoint::origin(n));
    for (int a = 0; a < pi.size(); ++a) {
      const auto [pp, qq] = pi.pairs()[a];
      CHECK(std::abs(o.ric(n + a, n + a) + (n + 2.0) * (pp == qq ? 1.0 : 2.0)) < 1e-14);
    }
    const JacobiBallPoint pt = sample_jacobi_ball(n, rng, 0.9);
    const CurvatureData c = curvature(p, pt);
    CHECK(max_abs(CMat(c.ric.topRows(n))) == 0.0);
    CHECK(max_abs(CMat(c.ric.leftCols(n))) == 0.0);
    // the contraction reproduces the constant
    const double s = (metric_inverse(p, pt).h_inv * c.ric).trace().real();
    CHECK(s == doctest::Approx(c.scalar_curvature).epsilon(1e-12));
    const CMat lu = ((n + 1.0) * (n + 2.0) / 2.0) * metric_blocks(p, pt).h - c.ric;
    CHECK(max_abs(CMat(lu - c.qk_lu)) < 1e-12);
  }
}

TEST_CASE("ds2 examples and consistency") {
  CHECK(ds2_ball(CMat::Zero(2, 2), CMat::Zero(2, 2)) == 0.0);
  CMat E = CMat::Zero(2, 2);
  E(0, 0) = 1.0;
  CHECK(ds2_ball(CMat::Zero(2, 2), E) == doctest::Approx(4.0));
  for (int n = 1; n <= 3; ++n) CHECK(ds2_upper(I * eye(n), I * eye(n)) == doctest::Approx(double(n)));

  Rng rng(11);
  for (int n = 1; n <= 3; ++n) {
    const MetricParams p{n, 2.2, 0.9};
    const JacobiBallPoint pt = sample_jacobi_ball(n, rng, 0.9);
    const TangentVector v{sample_complex_gaussian(n, rng), unflatten_sym(sample_complex_gaussian(n * (n + 1) / 2, rng), n)};
    const double a = ds2_jacobi_ball(p, pt, v);
    CHECK(a > 0.0);
    CHECK(a == doctest::Approx(quadratic_form(metric_blocks(p, pt).h, flatten_tangent(v))).epsilon(1e-10));
    CHECK(ds2_jacobi_ball(p, pt, {CVec::Zero(n), CMat::Zero(n, n)}) == 0.0);
    const double b = ds2_ball(pt.W, v.dW);
    CHECK(b == doctest::Approx(4.0 * quadratic_form(ball_metric_pair(pt.W).hk, flatten_sym(v.dW))).epsilon(1e-10));
  }
  CHECK_THROWS(ds2_ball(CMat::Zero(2, 2), CMat::Zero(3, 3)));
}
