#include <doctest.h>

#include "sjk/domains.hpp"
#include "sjk/error.hpp"
#include "sjk/json_io.hpp"

using namespace sjk;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an sjk::Error");
  return ErrorKind::InvalidInput;
}

}  // namespace

TEST_CASE("validate_ball_point examples") {
  for (int n = 1; n <= 3; ++n) {
    const BallDiagnostics d = validate_ball_point(CMat::Zero(n, n));
    CHECK(d.min_eig_N == doctest::Approx(1.0));
  }
  CHECK(validate_ball_point(CMat::Constant(1, 1, 0.5)).min_eig_N == doctest::Approx(0.75));
  CHECK(kind_of([] { validate_ball_point(CMat::Constant(1, 1, 1.2)); }) == ErrorKind::NotInBall);

  CMat W = CMat::Zero(2, 2);
  W(0, 1) = 0.1;
  CHECK(kind_of([&] { validate_ball_point(W); }) == ErrorKind::NonSymmetric);
}

TEST_CASE("NotInBall reports the offending eigenvalue") {
  try {
    validate_ball_point(CMat::Constant(1, 1, 1.2));
  } catch (const Error& e) {
    CHECK(e.detail().find("-0.44") != std::string::npos);
  }
}

TEST_CASE("sampling") {
  Rng rng(3);
  CHECK(sample_ball_W(2, rng, 0.0).isZero());

  Rng a(11), b(11);
  const JacobiBallPoint p = sample_jacobi_ball(2, a, 0.9);
  const JacobiBallPoint q = sample_jacobi_ball(2, b, 0.9);
  CHECK(p.W == q.W);
  CHECK(p.z == q.z);
  CHECK_NOTHROW(validate_ball_point(p.W));

  Rng r(5);
  for (int i = 0; i < 20; ++i) {
    const JacobiUpperPoint u = sample_jacobi_upper(3, r, 0.9);
    CHECK(min_symmetric_eigenvalue(u.V.imag()) > 0.0);
    CHECK_NOTHROW(validate_upper_point(u.V));
  }
}

TEST_CASE("sampled points validate, points outside fail (10^3 per n)") {
  Rng rng(2024);
  for (int n = 1; n <= 3; ++n)
    for (int i = 0; i < 1000; ++i) {
      const CMat W = sample_ball_W(n, rng, 0.99);
      REQUIRE(in_ball(W));
      // push past the boundary along the same direction
      const double s = Eigen::JacobiSVD<CMat>(W).singularValues()(0);
      const CMat out = W * (1.0001 / s);
      REQUIRE(ball_diagnostics(out).min_eig_N <= 0.0);
      REQUIRE_FALSE(in_ball(out));
    }
}

TEST_CASE("near-boundary constructor hits the requested margin") {
  Rng rng(9);
  for (int n = 1; n <= 3; ++n) {
    const CMat W = sample_near_boundary_W(n, rng, 1e-3);
    CHECK(ball_diagnostics(W).min_eig_N == doctest::Approx(1e-3).epsilon(1e-6));
    CHECK(max_abs(CMat(W - W.transpose())) < 1e-15);
  }
}

TEST_CASE("delta_symbol") {
  CHECK(delta_symbol(1, 2, 1, 2, 2) == 1);
  CHECK(delta_symbol(1, 1, 1, 1, 2) == 1);
  CHECK(delta_symbol(2, 1, 1, 2, 2) == 1);
  CHECK(kind_of([] { delta_symbol(0, 1, 1, 1, 2); }) == ErrorKind::IndexOutOfRange);
  CHECK(kind_of([] { delta_symbol(1, 3, 1, 1, 2); }) == ErrorKind::IndexOutOfRange);

  for (int n = 1; n <= 4; ++n) {
    const PairIndex pi(n);
    for (int a = 0; a < pi.size(); ++a)
      for (int b = 0; b < pi.size(); ++b) {
        const auto [i, j] = pi.pairs()[a];
        const auto [p, q] = pi.pairs()[b];
        CHECK(delta_symbol(i + 1, j + 1, p + 1, q + 1, n) == (a == b ? 1 : 0));
      }
  }
}

TEST_CASE("PairIndex is a bijection") {
  for (int n = 1; n <= 6; ++n) {
    const PairIndex pi(n);
    CHECK(pi.size() == n * (n + 1) / 2);
    CHECK(pi.d() == n * (n + 3) / 2);
    for (int i = 0; i < pi.size(); ++i) {
      const auto [p, q] = pi.unflatten(i);
      CHECK(p <= q);
      CHECK(pi.flatten(p, q) == i);
      CHECK(pi.flatten(q, p) == i);
    }
    if (n >= 2) CHECK(pi.pairs()[1] == std::pair{0, 1});
  }
  CHECK(kind_of([] { PairIndex(2).unflatten(3); }) == ErrorKind::IndexOutOfRange);
}

TEST_CASE("flatten moves both off-diagonal entries") {
  CVec v(3);
  v << 1.0, cplx(2.0, 1.0), 3.0;
  const CMat W = unflatten_sym(v, 2);
  CHECK(W(0, 1) == W(1, 0));
  CHECK(flatten_sym(W) == v);
  const JacobiBallPoint pt{CVec::Ones(2), W};
  CHECK(flatten(unflatten_jacobi(flatten(pt), 2)) == flatten(pt));
}

TEST_CASE("JSON point round trip is bit exact") {
  Rng rng(77);
  const JacobiBallPoint pt = sample_jacobi_ball(3, rng, 0.9);
  const std::string s = io::to_json(pt).dump();
  const JacobiBallPoint back = io::jacobi_ball_from(io::json::parse(s));
  CHECK(back.W == pt.W);
  CHECK(back.z == pt.z);
  CHECK(io::json::parse(s)["n"] == 3);
}
