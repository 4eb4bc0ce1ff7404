#include "sjk/laplacian.hpp"

#include <cmath>
#include <regex>

#include "sjk/error.hpp"
#include "sjk/groups.hpp"

namespace sjk {

namespace {

// Both orderings of a pair; one for the diagonal.
std::vector<std::pair<int, int>> orderings(std::pair<int, int> pq) {
  if (pq.first == pq.second) return {pq};
  return {pq, {pq.second, pq.first}};
}

}  // namespace

LaplacianCoefficients laplacian_coefficients_ball(const CMat& W) {
  return {Domain::ball, ball_metric_pair(W).k_inv};
}

LaplacianCoefficients laplacian_coefficients_upper(const CMat& V) {
  validate_upper_point(V);
  const int n = static_cast<int>(V.rows());
  const PairIndex pi(n);
  const RMat R = V.imag();
  CMat C(pi.size(), pi.size());
  for (int P = 0; P < pi.size(); ++P) {
    const auto pp = pi.pairs()[P];
    for (int Q = 0; Q < pi.size(); ++Q) {
      const auto qq = pi.pairs()[Q];
      double s = 0.0;
      for (auto [c, j] : orderings(pp))
        for (auto [k, i] : orderings(qq)) s += R(i, j) * R(k, c);
      C(P, Q) = 4.0 * e_pair(pp.first, pp.second) * e_pair(qq.first, qq.second) * s;
    }
  }
  return {Domain::upper, C};
}

LaplacianCoefficients laplacian_coefficients_jacobi(const MetricParams& params, const JacobiBallPoint& pt) {
  return {Domain::jacobi_ball, metric_inverse(params, pt).h_inv};
}

LaplacianCoefficients laplacian_coefficients_operator_form(const MetricParams& params, const JacobiBallPoint& pt) {
  const AuxMatrices a = aux_matrices(params, pt);
  const int n = params.n;
  const PairIndex pi(n);
  const int m = pi.size();
  const double k = params.k;
  const CMat& N = a.N;
  const CMat Nb = N.conjugate();
  const CVec& S = a.S;

  CMat C = CMat::Zero(pi.d(), pi.d());
  // z-z: theta Nbar, plus the rank-one correction that vanishes for n = 1
  C.topLeftCorner(n, n) = a.theta * Nb + (S.conjugate() * S.transpose() - a.metric_alpha * Nb) / k;
  // -(2/k) Tr[S D_W N d/dzbar] and its conjugate
  for (int P = 0; P < m; ++P) {
    const auto pp = pi.pairs()[P];
    const double e = e_pair(pp.first, pp.second);
    for (int c = 0; c < n; ++c) {
      cplx s = 0.0, sb = 0.0;
      for (auto [x, y] : orderings(pp)) {
        s += S(x) * N(y, c);
        sb += std::conj(S(x)) * Nb(y, c);
      }
      C(c, n + P) = -(2.0 / k) * e * s;
      C(n + P, c) = -(2.0 / k) * e * sb;
    }
  }
  // (2/k) Tr[N (N D_Wbar)^T D_W]
  for (int P = 0; P < m; ++P) {
    const auto pp = pi.pairs()[P];
    for (int Q = 0; Q < m; ++Q) {
      const auto qq = pi.pairs()[Q];
      cplx s = 0.0;
      for (auto [d, b] : orderings(pp))
        for (auto [c, x] : orderings(qq)) s += N(x, b) * N(c, d);
      C(n + P, n + Q) = (2.0 / k) * e_pair(pp.first, pp.second) * e_pair(qq.first, qq.second) * s;
    }
  }
  return {Domain::jacobi_ball, C};
}

cplx contract(const CMat& C, const CMat& hess, const Contraction& conv) {
  if (C.rows() != hess.rows() || C.cols() != hess.cols())
    throw Error(ErrorKind::DimensionMismatch, "coefficient and Hessian sizes differ");
  const cplx t = conv.transpose ? (C.transpose() * hess).trace() : (C * hess).trace();
  return conv.sign * t;
}

cplx apply_laplacian_ball(const MatrixField& f, const CMat& W, const FdConfig& cfg) {
  const int n = static_cast<int>(W.rows());
  const LaplacianCoefficients lc = laplacian_coefficients_ball(W);
  const Field g = [&](const CVec& v) { return f(unflatten_sym(v, n)); };
  return contract(lc.C, fd_wirtinger_hessian(g, flatten_sym(W), cfg, ball_inside(n)));
}

cplx apply_laplacian_upper(const MatrixField& f, const CMat& V, const FdConfig& cfg) {
  const int n = static_cast<int>(V.rows());
  const LaplacianCoefficients lc = laplacian_coefficients_upper(V);
  const Field g = [&](const CVec& v) { return f(unflatten_sym(v, n)); };
  return contract(lc.C, fd_wirtinger_hessian(g, flatten_sym(V), cfg, upper_inside(n)));
}

cplx apply_laplacian_jacobi(const MetricParams& params, const PointField& f, const JacobiBallPoint& pt,
                            const FdConfig& cfg, const Contraction& conv) {
  const int n = params.n;
  const LaplacianCoefficients lc = laplacian_coefficients_jacobi(params, pt);
  const Field g = [&](const CVec& v) { return f(unflatten_jacobi(v, n)); };
  return contract(lc.C, fd_wirtinger_hessian(g, flatten(pt), cfg, jacobi_ball_inside(n)), conv);
}

double cayley_chain_rule_check(const MatrixField& f, const CMat& V, const FdConfig& cfg) {
  validate_upper_point(V);
  const int n = static_cast<int>(V.rows());
  const PairIndex pi(n);
  const CMat one = CMat::Identity(n, n);
  const CMat W = partial_cayley(JacobiUpperPoint{CVec::Zero(n), V}).W;

  const Field fz = [&](const CVec& v) { return f(unflatten_sym(v, n)); };
  const CVec gz = fd_wirtinger_gradient(fz, flatten_sym(V), cfg, upper_inside(n)).d;
  // F = f o Phi^{-1} on the ball
  const Field fw = [&](const CVec& v) {
    const CMat Wv = unflatten_sym(v, n);
    return f(partial_cayley_inverse(JacobiBallPoint{CVec::Zero(n), Wv}).V);
  };
  const CVec gw = fd_wirtinger_gradient(fw, flatten_sym(W), cfg, ball_inside(n)).d;

  CMat DW(n, n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) DW(a, b) = e_pair(a, b) * gw(pi.flatten(a, b));
  const CMat L = one - W;
  double defect = 0.0;
  for (int al = 0; al < n; ++al)
    for (int be = 0; be < n; ++be) {
      cplx chain = 0.0;
      for (int ga = 0; ga < n; ++ga)
        for (int la = 0; la < n; ++la) chain += L(al, ga) * L(be, la) * DW(la, ga);
      chain *= -0.5 * I;
      const cplx direct = e_pair(al, be) * gz(pi.flatten(al, be));
      defect = std::max(defect, std::abs(direct - chain));
    }
  return defect;
}

double laplacian_correspondence_check(const MatrixField& f, const CMat& V, const FdConfig& cfg) {
  const int n = static_cast<int>(V.rows());
  const MatrixField pulled = [&](const CMat& Vv) { return f(partial_cayley(JacobiUpperPoint{CVec::Zero(n), Vv}).W); };
  const CMat W = partial_cayley(JacobiUpperPoint{CVec::Zero(n), V}).W;
  return std::abs(apply_laplacian_upper(pulled, V, cfg) - apply_laplacian_ball(f, W, cfg));
}

Field random_flat_polynomial(int dim, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  CMat A(dim, dim), c(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      const double a1 = g(rng), a2 = g(rng), c1 = g(rng), c2 = g(rng);
      A(i, j) = cplx(a1, a2);
      c(i, j) = cplx(c1, c2);
    }
  const CMat P = A.adjoint() * A / double(dim) + CMat::Identity(dim, dim);
  return [P, c](const CVec& v) {
    cplx cubic = 0.0;
    for (Eigen::Index a = 0; a < v.size(); ++a)
      for (Eigen::Index b = 0; b < v.size(); ++b) cubic += c(a, b) * v(a) * v(a) * std::conj(v(b));
    return cplx((v.adjoint() * P * v).value().real() + 0.1 * cubic.real(), 0.0);
  };
}

PointField random_test_polynomial(int n, Rng& rng) {
  Field f = random_flat_polynomial(PairIndex(n).d(), rng);
  return [f](const JacobiBallPoint& pt) { return f(flatten(pt)); };
}

PointField builtin_field(const std::string& name, const MetricParams& params) {
  if (name == "const") return [](const JacobiBallPoint&) { return cplx(1.0, 0.0); };
  if (name == "lnG") return [params](const JacobiBallPoint& p) { return cplx(log_metric_det(params, p), 0.0); };
  if (name == "trWWbar") return [](const JacobiBallPoint& p) { return (p.W * p.W.conjugate()).trace(); };
  if (name == "normz2") return [](const JacobiBallPoint& p) { return cplx(p.z.squaredNorm(), 0.0); };
  static const std::regex poly(R"(re_poly\((\d+)\))");
  std::smatch mt;
  if (std::regex_match(name, mt, poly)) {
    Rng rng(std::stoull(mt[1].str()));
    return random_test_polynomial(params.n, rng);
  }
  throw Error(ErrorKind::InvalidInput, "unknown field '" + name + "'");
}

}  // namespace sjk
