#include "sjk/fuzz.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <limits>
#include <thread>

#include "sjk/error.hpp"
#include "sjk/groups.hpp"
#include "sjk/json_io.hpp"
#include "sjk/kernels.hpp"
#include "sjk/laplacian.hpp"
#include "sjk/metric.hpp"
#include "sjk/oracle.hpp"

namespace sjk {

namespace {

using json = nlohmann::json;

struct Outcome {
  double error = 0.0;
  json point;
};

using TrialFn = std::function<Outcome(const FuzzOptions&, Rng&)>;

struct Property {
  const char* name;
  const char* category;
  double tol;
  bool single_shot;
  TrialFn fn;
};

MetricParams params_of(const FuzzOptions& o) { return {o.n, o.k, o.mu}; }

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

CMat random_symmetric(int n, Rng& rng) {
  const CVec v = sample_complex_gaussian(n * (n + 1) / 2, rng);
  return unflatten_sym(v, n);
}

TangentVector random_tangent(int n, Rng& rng) { return {sample_complex_gaussian(n, rng), random_symmetric(n, rng)}; }

const FdConfig kLogDetFd{1e-3, FdScheme::richardson};

Field potential_field(const MetricParams& p) {
  return [p](const CVec& v) { return cplx(kahler_potential(p, unflatten_jacobi(v, p.n)), 0.0); };
}

Field log_det_field(const MetricParams& p) {
  return [p](const CVec& v) { return cplx(log_metric_det(p, unflatten_jacobi(v, p.n)), 0.0); };
}

// Oracle Ricci form -d dbar ln G.
CMat oracle_ricci(const MetricParams& p, const JacobiBallPoint& pt) {
  return -fd_wirtinger_hessian(log_det_field(p), flatten(pt), kLogDetFd, jacobi_ball_inside(p.n));
}

json with_element(const JacobiBallPoint& pt, const JacobiElementC& h) {
  return {{"point", io::to_json(pt)}, {"element", io::to_json(h)}};
}

const std::vector<Property>& properties() {
  static const std::vector<Property> table = {
      // ---- metric
      {"metric_oracle", "metric", 1e-6, false,
       [](const FuzzOptions& o, Rng& rng) {
         const MetricParams p = params_of(o);
         const JacobiBallPoint pt = sample_jacobi_ball(o.n, rng, o.radius);
         const CMat H = fd_wirtinger_hessian(potential_field(p), flatten(pt), {}, jacobi_ball_inside(o.n));
         return Outcome{relative_max_error(H, metric_blocks(p, pt).h), io::to_json(pt)};
       }},
      {"metric_hermitian_pd", "metric", 1e-12, false,
       [](const FuzzOptions& o, Rng& rng) {
         const JacobiBallPoint pt = sample_jacobi_ball(o.n, rng, o.radius);
         const CMat h = metric_blocks(params_of(o), pt).h;
         double e = max_abs(CMat(h - h.adjoint())) / max_abs(h);
         if (!(min_hermitian_eigenvalue(h) > 0.0)) e = 1.0;
         return Outcome{e, io::to_json(pt)};
       }},
      // ---- inverse
      {"inverse_identity", "inverse", 1e-10, false,
       [](const FuzzOptions& o, Rng& rng) {
         const MetricParams p = params_of(o);
         const JacobiBallPoint pt = sample_jacobi_ball(o.n, rng, o.radius);
         CMat h = metric_blocks(p, pt).h;
         const int m = PairIndex(o.n).size();
         h.bottomRightCorner(m, m) *= o.corrupt_h4_scale;
         const CMat prod = h * metric_inverse(p, pt).h_inv;
         return Outcome{max_abs(CMat(prod - CMat::Identity(prod.rows(), prod.cols()))), io::to_json(pt)};
       }},
      {"ball_pair_inverse", "inverse", 1e-10, false,
       [](const FuzzOptions& o, Rng& rng) {
         const CMat W = sample_ball_W(o.n, rng, o.radius);
         const BallMetricPair bp = ball_metric_pair(W);
         const CMat prod = bp.hk * bp.k_inv;
         return Outcome{max_abs(CMat(prod - CMat::Identity(prod.rows(), prod.cols()))),
                        io::to_json(SiegelBallPoint{W})};
       }},
      {"determinant", "inverse", 1e-10, false,
       [](const FuzzOptions& o, Rng& rng) {
         const MetricParams p = params_of(o);
         const JacobiBallPoint pt = sample_jacobi_ball(o.n, rng, o.radius);
         const Determinant d = metric_det(p, pt);
         const Determinant d0 = metric_det(p, JacobiBallPoint::origin(o.n));
         const CMat N = CMat::Identity(o.n, o.n) - pt.W * pt.W.conjugate();
         const double ratio = std::pow(N.determinant().real(), -(o.n + 2));
         return Outcome{std::max(rel(d.value, d.closed_form), rel(d.value / d0.value, ratio)), io::to_json(pt)};
       }},
      // ---- curvature
      {"ricci_oracle", "curvature", 1e-5, false,
       [](const FuzzOptions& o, Rng& rng) {
         const MetricParams p = params_of(o);
         const JacobiBallPoint pt = sample_jacobi_ball(o.n, rng, o.radius);
         const int m = PairIndex(o.n).size();
         const CMat ric = oracle_ricci(p, pt);
         const CMat closed = curvature(p, pt).ric;
         return Outcome{relative_max_error(CMat(ric.bottomRightCorner(m, m)), CMat(closed.bottomRightCorner(m, m))),
                        io::to_json(pt)};
       }},
      {"ricci_z_block", "curvature", 1e-8, false,
       [](const FuzzOptions& o, Rng& rng) {
         const MetricParams p = params_of(o);
         const JacobiBallPoint pt = sample_jacobi_ball(o.n, rng, o.radius);
         const CMat ric = oracle_ricci(p, pt);
         const double e = std::max(max_abs(CMat(ric.topRows(o.n))), max_abs(CMat(ric.leftCols(o.n))));
         return Outcome{e, io::to_json(pt)};
       }},
      {"scalar_curvature", "curvature", 1e-5, false,
       [](const FuzzOptions& o, Rng& rng) {
         const MetricParams p = params_of(o);
         const JacobiBallPoint pt = sample_jacobi_ball(o.n, rng, o.radius);
         const double s = contract(metric_inverse(p, pt).h_inv, oracle_ricci(p, pt)).real();
         return Outcome{rel(s, scalar_curvature_closed_form(p)), io::to_json(pt)};
       }},
      // ---- laplacian
      {"laplacian_lnG", "laplacian", 1e-5, false,
       [](const FuzzOptions& o, Rng& rng) {
         const MetricParams p = params_of(o);
         const JacobiBallPoint pt = sample_jacobi_ball(o.n, rng, o.radius);
         const cplx v = apply_laplacian_jacobi(p, builtin_field("lnG", p), pt, kLogDetFd);
         return Outcome{std::abs(v - (-scalar_curvature_closed_form(p))) / std::abs(scalar_curvature_closed_form(p)),
                        io::to_json(pt)};
       }},
      {"laplacian_coefficients", "laplacian", 1e-12, false,
       [](const FuzzOptions& o, Rng& rng) {
         const MetricParams p = params_of(o);
         const JacobiBallPoint pt = sample_jacobi_ball(o.n, rng, o.radius);
         const double e1 =
             relative_max_error(laplacian_coefficients_operator_form(p, pt).C, laplacian_coefficients_jacobi(p, pt).C);
         const CMat kinv = laplacian_coefficients_ball(pt.W).C;
         const CMat hk = ball_metric_pair(pt.W).hk;
         const double e2 = relative_max_error(kinv, inverse(hk, "h^k"));
         return Outcome{std::max(e1, e2), io::to_json(pt)};
       }},
      {"laplacian_ellipticity", "laplacian", 0.0, false,
       [](const FuzzOptions& o, Rng& rng) {
         const MetricParams p = params_of(o);
         const JacobiBallPoint pt = sample_jacobi_ball(o.n, rng, o.radius);
         const bool ok = min_hermitian_eigenvalue(laplacian_coefficients_jacobi(p, pt).C) > 0.0 &&
                         min_hermitian_eigenvalue(laplacian_coefficients_ball(pt.W).C) > 0.0 &&
                         min_hermitian_eigenvalue(laplacian_coefficients_upper(partial_cayley_inverse(pt).V).C) > 0.0;
         return Outcome{ok ? 0.0 : 1.0, io::to_json(pt)};
       }},
      // ---- invariance
      {"ds2_invariance", "invariance", 1e-7, false,
       [](const FuzzOptions& o, Rng& rng) {
         const MetricParams p = params_of(o);
         const JacobiBallPoint pt = sample_jacobi_ball(o.n, rng, o.radius);
         const JacobiElementC h = random_jacobi_c(o.n, rng);
         const TangentVector v = random_tangent(o.n, rng);
         const int n = o.n;
         const PointMap map = [&](const CVec& x) { return flatten(act_ball(h, unflatten_jacobi(x, n))); };
         const CMat J = fd_jacobian(map, flatten(pt), {}, jacobi_ball_inside(n)).J;
         const CVec v1 = J * flatten_tangent(v);
         const JacobiBallPoint img = act_ball(h, pt);
         const double a = ds2_jacobi_ball(p, pt, v);
         const PairIndex pi(n);
         const TangentVector t1{v1.head(n), unflatten_sym(v1.tail(pi.size()), n)};
         return Outcome{rel(ds2_jacobi_ball(p, img, t1), a), with_element(pt, h)};
       }},
      {"differential_closed_form", "invariance", 1e-6, false,
       [](const FuzzOptions& o, Rng& rng) {
         const JacobiBallPoint pt = sample_jacobi_ball(o.n, rng, o.radius);
         const JacobiElementC h = random_jacobi_c(o.n, rng);
         const TangentVector v = random_tangent(o.n, rng);
         const int n = o.n;
         const PointMap map = [&](const CVec& x) { return flatten(act_ball(h, unflatten_jacobi(x, n))); };
         const CVec fd = fd_jacobian(map, flatten(pt), {}, jacobi_ball_inside(n)).J * flatten_tangent(v);
         const CVec cf = flatten_tangent(act_ball_differential(h, pt, v));
         return Outcome{relative_max_error(cf, fd), with_element(pt, h)};
       }},
      {"laplacian_equivariance", "invariance", 1e-5, false,
       [](const FuzzOptions& o, Rng& rng) {
         const MetricParams p = params_of(o);
         const JacobiBallPoint pt = sample_jacobi_ball(o.n, rng, o.radius);
         const JacobiElementC h = random_jacobi_c(o.n, rng);
         const PointField f = random_test_polynomial(o.n, rng);
         const PointField fh = [&](const JacobiBallPoint& x) { return f(act_ball(h, x)); };
         const cplx lhs = apply_laplacian_jacobi(p, fh, pt);
         const cplx rhs = apply_laplacian_jacobi(p, f, act_ball(h, pt));
         return Outcome{std::abs(lhs - rhs) / std::abs(rhs), with_element(pt, h)};
       }},
      {"laplacian_equivariance_ball", "invariance", 1e-5, false,
       [](const FuzzOptions& o, Rng& rng) {
         const CMat W = sample_ball_W(o.n, rng, o.radius);
         const JacobiElementC h = random_jacobi_c(o.n, rng);
         const Field poly = random_flat_polynomial(PairIndex(o.n).size(), rng);
         const MatrixField f = [&](const CMat& X) { return poly(flatten_sym(X)); };
         const MatrixField fh = [&](const CMat& X) { return f(act_siegel_ball(h.g, X)); };
         const cplx lhs = apply_laplacian_ball(fh, W);
         const cplx rhs = apply_laplacian_ball(f, act_siegel_ball(h.g, W));
         return Outcome{std::abs(lhs - rhs) / std::abs(rhs),
                        json{{"point", io::to_json(SiegelBallPoint{W})}, {"element", io::to_json(h)}}};
       }},
      {"laplacian_equivariance_upper", "invariance", 1e-5, false,
       [](const FuzzOptions& o, Rng& rng) {
         const CMat V = sample_jacobi_upper(o.n, rng, o.radius).V;
         const JacobiElementR h = random_jacobi_r(o.n, rng);
         const Field poly = random_flat_polynomial(PairIndex(o.n).size(), rng);
         const MatrixField f = [&](const CMat& X) { return poly(flatten_sym(X)); };
         const MatrixField fh = [&](const CMat& X) { return f(act_siegel_upper(h.g, X)); };
         const cplx lhs = apply_laplacian_upper(fh, V);
         const cplx rhs = apply_laplacian_upper(f, act_siegel_upper(h.g, V));
         return Outcome{std::abs(lhs - rhs) / std::abs(rhs),
                        json{{"point", io::to_json(SiegelUpperPoint{V})}, {"element", io::to_json(h)}}};
       }},
      {"left_action_ball", "invariance", 1e-9, false,
       [](const FuzzOptions& o, Rng& rng) {
         const JacobiBallPoint pt = sample_jacobi_ball(o.n, rng, o.radius);
         const JacobiElementC h1 = random_jacobi_c(o.n, rng), h2 = random_jacobi_c(o.n, rng);
         const JacobiBallPoint a = act_ball(h1, act_ball(h2, pt));
         const JacobiBallPoint b = act_ball(compose_jacobi_c(h1, h2), pt);
         return Outcome{relative_max_error(flatten(a), flatten(b), 1.0), io::to_json(pt)};
       }},
      {"left_action_upper", "invariance", 1e-9, false,
       [](const FuzzOptions& o, Rng& rng) {
         const JacobiUpperPoint pt = sample_jacobi_upper(o.n, rng, o.radius);
         const JacobiElementR h1 = random_jacobi_r(o.n, rng), h2 = random_jacobi_r(o.n, rng);
         const JacobiUpperPoint a = act_upper(h1, act_upper(h2, pt));
         const JacobiUpperPoint b = act_upper(compose_jacobi_r(h1, h2), pt);
         const double e = std::max(relative_max_error(a.V, b.V, 1.0), relative_max_error(a.u, b.u, 1.0));
         return Outcome{e, io::to_json(pt)};
       }},
      // ---- volume
      {"volume_invariance_ball", "volume", 1e-5, false,
       [](const FuzzOptions& o, Rng& rng) {
         const JacobiBallPoint pt = sample_jacobi_ball(o.n, rng, o.radius);
         const JacobiElementC h = random_jacobi_c(o.n, rng);
         return Outcome{volume_invariance_check(Domain::ball, h, pt), with_element(pt, h)};
       }},
      {"volume_invariance_jacobi", "volume", 1e-5, false,
       [](const FuzzOptions& o, Rng& rng) {
         const JacobiBallPoint pt = sample_jacobi_ball(o.n, rng, o.radius);
         const JacobiElementC h = random_jacobi_c(o.n, rng);
         return Outcome{volume_invariance_check(Domain::jacobi_ball, h, pt), with_element(pt, h)};
       }},
      // ---- cayley
      {"cayley_round_trip", "cayley", 1e-12, false,
       [](const FuzzOptions& o, Rng& rng) {
         const JacobiBallPoint pt = sample_jacobi_ball(o.n, rng, o.radius);
         const JacobiBallPoint back = partial_cayley(partial_cayley_inverse(pt));
         const JacobiUpperPoint up = sample_jacobi_upper(o.n, rng, o.radius);
         const JacobiUpperPoint up2 = partial_cayley_inverse(partial_cayley(up));
         const double e = std::max(relative_max_error(flatten(back), flatten(pt), 1.0),
                                   std::max(relative_max_error(up2.V, up.V, 1.0), relative_max_error(up2.u, up.u, 1.0)));
         return Outcome{e, io::to_json(pt)};
       }},
      {"cayley_conjugate_product", "cayley", 1e-10, false,
       [](const FuzzOptions& o, Rng& rng) {
         const SymplecticR g1 = random_symplectic_r(o.n, rng), g2 = random_symplectic_r(o.n, rng);
         const SymplecticC a = cayley_conjugate(g1 * g2);
         const SymplecticC b = cayley_conjugate(g1) * cayley_conjugate(g2);
         const SymplecticR back = cayley_conjugate_inverse(cayley_conjugate(g1));
         double e = std::max(max_abs(CMat(a.p - b.p)), max_abs(CMat(a.q - b.q)));
         e = std::max(e, max_abs(RMat(back.block() - g1.block())));
         return Outcome{e, json::object()};
       }},
      {"theta_homomorphism", "cayley", 1e-10, false,
       [](const FuzzOptions& o, Rng& rng) {
         const JacobiElementR h1 = random_jacobi_r(o.n, rng), h2 = random_jacobi_r(o.n, rng);
         const JacobiElementC a = theta(compose_jacobi_r(h1, h2));
         const JacobiElementC b = compose_jacobi_c(theta(h1), theta(h2));
         double e = std::max(max_abs(CMat(a.g.p - b.g.p)), max_abs(CMat(a.g.q - b.g.q)));
         e = std::max(e, max_abs(CMat(a.alpha - b.alpha)));
         return Outcome{e, json{{"h1", io::to_json(h1)}, {"h2", io::to_json(h2)}}};
       }},
      {"theta_equivariance", "cayley", 1e-10, false,
       [](const FuzzOptions& o, Rng& rng) {
         const JacobiUpperPoint pt = sample_jacobi_upper(o.n, rng, o.radius);
         const JacobiElementR h = random_jacobi_r(o.n, rng);
         const JacobiBallPoint a = partial_cayley(act_upper(h, pt));
         const JacobiBallPoint b = act_ball(theta(h), partial_cayley(pt));
         return Outcome{max_abs(CMat(flatten(a) - flatten(b))), json{{"point", io::to_json(pt)}, {"element", io::to_json(h)}}};
       }},
      {"cayley_pullback", "cayley", 1e-8, false,
       [](const FuzzOptions& o, Rng& rng) {
         const CMat V = sample_jacobi_upper(o.n, rng, o.radius).V;
         const CMat W = partial_cayley(JacobiUpperPoint{CVec::Zero(o.n), V}).W;
         const CMat dW = random_symmetric(o.n, rng);
         const CMat U = inverse(CMat(CMat::Identity(o.n, o.n) - W), "1 - W");
         const CMat dV = 2.0 * I * U * dW * U;
         return Outcome{rel(ds2_upper(V, dV), ds2_ball(W, dW)), io::to_json(SiegelUpperPoint{V})};
       }},
      {"chain_rule", "cayley", 1e-5, false,
       [](const FuzzOptions& o, Rng& rng) {
         const CMat V = sample_jacobi_upper(o.n, rng, o.radius).V;
         const CMat A = random_symmetric(o.n, rng);
         const MatrixField f = [A](const CMat& Z) { return (Z * Z).trace() + (A * Z).trace(); };
         return Outcome{cayley_chain_rule_check(f, V), io::to_json(SiegelUpperPoint{V})};
       }},
      {"laplacian_correspondence", "cayley", 1e-5, false,
       [](const FuzzOptions& o, Rng& rng) {
         const CMat V = sample_jacobi_upper(o.n, rng, o.radius).V;
         const Field poly = random_flat_polynomial(PairIndex(o.n).size(), rng);
         const MatrixField f = [&](const CMat& W) { return poly(flatten_sym(W)); };
         return Outcome{laplacian_correspondence_check(f, V), io::to_json(SiegelUpperPoint{V})};
       }},
      {"holomorphy_gate", "cayley", 0.0, false,
       [](const FuzzOptions& o, Rng& rng) {
         const int n = o.n;
         const JacobiBallPoint pt = sample_jacobi_ball(n, rng, o.radius);
         const JacobiElementC h = random_jacobi_c(n, rng);
         double bad = 0.0;
         try {
           fd_jacobian([&](const CVec& x) { return flatten(act_ball(h, unflatten_jacobi(x, n))); }, flatten(pt), {},
                       jacobi_ball_inside(n));
           const JacobiUpperPoint up = partial_cayley_inverse(pt);
           const PointMap cay = [&](const CVec& x) {
             return flatten(partial_cayley(JacobiUpperPoint{x.head(n), unflatten_sym(x.tail(x.size() - n), n)}));
           };
           fd_jacobian(cay,
                       flatten(JacobiBallPoint{up.u, up.V}));
         } catch (const Error&) {
           bad = 1.0;
         }
         try {
           fd_jacobian([&](const CVec& x) {
             const FcPoint fc = fc_transform(unflatten_jacobi(x, n));
             return flatten(JacobiBallPoint{fc.eta, fc.W});
           }, flatten(pt), {}, jacobi_ball_inside(n));
           bad = 1.0;  // the FC map depends on zbar and must be rejected
         } catch (const Error& e) {
           if (e.kind() != ErrorKind::NonHolomorphic) bad = 1.0;
         }
         return Outcome{bad, with_element(pt, h)};
       }},
      // ---- kernels
      {"epsilon", "kernels", 1e-10, false,
       [](const FuzzOptions& o, Rng& rng) {
         const JacobiBallPoint pt = sample_jacobi_ball(o.n, rng, o.radius);
         return Outcome{std::abs(epsilon_function(params_of(o), pt) - 1.0), io::to_json(pt)};
       }},
      {"epsilon_near_boundary", "kernels", 1e-8, false,
       [](const FuzzOptions& o, Rng& rng) {
         const JacobiBallPoint pt{sample_complex_gaussian(o.n, rng), sample_near_boundary_W(o.n, rng, 1e-3)};
         return Outcome{std::abs(epsilon_function(params_of(o), pt) - 1.0), io::to_json(pt)};
       }},
      {"potential_vs_lnK", "kernels", 1e-12, false,
       [](const FuzzOptions& o, Rng& rng) {
         const MetricParams p = params_of(o);
         const JacobiBallPoint pt = sample_jacobi_ball(o.n, rng, o.radius);
         const double f = kahler_potential(p, pt);
         const cplx lk = two_point_kernel(p, pt, pt).log_K;
         return Outcome{std::abs(lk - f) / std::max(1.0, std::abs(f)), io::to_json(pt)};
       }},
      {"kernel_diagonal", "kernels", 1e-12, false,
       [](const FuzzOptions& o, Rng& rng) {
         const JacobiBallPoint pt = sample_jacobi_ball(o.n, rng, o.radius);
         const NormalizedKernels nk = normalized_kernels(params_of(o), pt, pt);
         const double e = std::max({std::abs(nk.kappa - 1.0), std::abs(nk.berezin - 1.0), std::abs(nk.diastasis)});
         return Outcome{e, io::to_json(pt)};
       }},
      {"kernel_symmetry", "kernels", 1e-10, false,
       [](const FuzzOptions& o, Rng& rng) {
         const MetricParams p = params_of(o);
         const JacobiBallPoint a = sample_jacobi_ball(o.n, rng, o.radius), b = sample_jacobi_ball(o.n, rng, o.radius);
         const cplx kab = two_point_kernel(p, a, b).K, kba = two_point_kernel(p, b, a).K;
         const NormalizedKernels nab = normalized_kernels(p, a, b), nba = normalized_kernels(p, b, a);
         const double e = std::max(std::abs(kab - std::conj(kba)) / std::abs(kab),
                                   std::abs(nab.diastasis - nba.diastasis) / std::max(1.0, nab.diastasis));
         return Outcome{e, json{{"first", io::to_json(a)}, {"second", io::to_json(b)}}};
       }},
      {"berezin_bound", "kernels", 0.0, false,
       [](const FuzzOptions& o, Rng& rng) {
         const JacobiBallPoint a = sample_jacobi_ball(o.n, rng, o.radius), b = sample_jacobi_ball(o.n, rng, o.radius);
         const double bz = normalized_kernels(params_of(o), a, b).berezin;
         return Outcome{std::max(0.0, bz - (1.0 - 1e-12)), json{{"first", io::to_json(a)}, {"second", io::to_json(b)}}};
       }},
      {"diastasis_invariance", "kernels", 1e-8, false,
       [](const FuzzOptions& o, Rng& rng) {
         const MetricParams p = params_of(o);
         const JacobiBallPoint a = sample_jacobi_ball(o.n, rng, o.radius), b = sample_jacobi_ball(o.n, rng, o.radius);
         const JacobiElementC h = random_jacobi_c(o.n, rng);
         const double d0 = normalized_kernels(p, a, b).diastasis;
         const double d1 = normalized_kernels(p, act_ball(h, a), act_ball(h, b)).diastasis;
         return Outcome{std::abs(d1 - d0) / std::max(1.0, d0), with_element(a, h)};
       }},
      // ---- parseval (n = 1 only, one run each)
      {"parseval_k6", "parseval", 0.02, true,
       [](const FuzzOptions&, Rng&) {
         const ParsevalResult r = parseval_check_n1(6.0, 1.0);
         return Outcome{std::abs(r.value - 1.0), json{{"k", 6.0}, {"mu", 1.0}, {"value", r.value}}};
       }},
      {"parseval_mu_stability", "parseval", 1e-3, true,
       [](const FuzzOptions&, Rng&) {
         const double a = parseval_check_n1(10.0, 1.0).value, b = parseval_check_n1(10.0, 2.0).value;
         return Outcome{rel(b, a), json{{"k", 10.0}, {"value_mu1", a}, {"value_mu2", b}}};
       }},
  };
  return table;
}

std::uint64_t name_hash(const char* s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (; *s; ++s) h = (h ^ static_cast<unsigned char>(*s)) * 1099511628211ULL;
  return h;
}

}  // namespace

int resolve_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("SJK_THREADS")) {
    const int v = std::atoi(env);
    if (v > 0) return v;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

bool is_fuzz_category(const std::string& c) {
  static const char* cats[] = {"all", "metric", "inverse", "curvature", "laplacian", "invariance",
                               "cayley", "volume", "kernels", "parseval"};
  return std::find_if(std::begin(cats), std::end(cats), [&](const char* x) { return c == x; }) != std::end(cats);
}

std::vector<std::string> fuzz_property_names(const std::string& category) {
  std::vector<std::string> out;
  for (const Property& p : properties())
    if (category == "all" || category == p.category) out.emplace_back(p.name);
  return out;
}

bool FuzzReport::pass() const {
  return std::all_of(properties.begin(), properties.end(), [](const PropertyResult& r) { return r.pass; });
}

const PropertyResult* FuzzReport::find(const std::string& name) const {
  for (const PropertyResult& r : properties)
    if (r.property == name) return &r;
  return nullptr;
}

nlohmann::json FuzzReport::to_json() const {
  json arr = json::array();
  for (const PropertyResult& r : properties) {
    json j = {{"property", r.property},
              {"trials", r.trials},
              {"max_error", std::isfinite(r.max_error) ? json(r.max_error) : json(nullptr)},
              {"tol", r.tol},
              {"pass", r.pass},
              {"worst", {{"seed", r.worst_seed}, {"point", r.worst_point}}}};
    if (!r.failure.empty()) j["failure"] = r.failure;
    arr.push_back(std::move(j));
  }
  return arr;
}

FuzzReport fuzz_all(const FuzzOptions& opts) {
  params_of(opts).validate();
  if (!is_fuzz_category(opts.category)) throw Error(ErrorKind::InvalidInput, "unknown category '" + opts.category + "'");
  if (opts.trials < 0) throw Error(ErrorKind::InvalidInput, "trials must be >= 0");
  FuzzReport report;
  if (opts.trials == 0) return report;
  const int threads = resolve_threads(opts.threads);

  for (const Property& prop : properties()) {
    if (opts.category != "all" && opts.category != prop.category) continue;
    const int trials = prop.single_shot ? 1 : opts.trials;
    const std::uint64_t stream = splitmix64(opts.seed ^ name_hash(prop.name));

    struct Slot {
      std::uint64_t seed = 0;
      double error = 0.0;
      json point;
      std::string failure;
    };
    std::vector<Slot> slots(static_cast<std::size_t>(trials));
    std::atomic<int> next{0};
    auto worker = [&]() {
      for (int t; (t = next.fetch_add(1)) < trials;) {
        Slot& s = slots[static_cast<std::size_t>(t)];
        s.seed = splitmix64(stream + static_cast<std::uint64_t>(t));
        Rng rng(s.seed);
        try {
          Outcome o = prop.fn(opts, rng);
          s.error = std::isnan(o.error) ? std::numeric_limits<double>::infinity() : o.error;
          s.point = std::move(o.point);
        } catch (const std::exception& e) {
          s.error = std::numeric_limits<double>::infinity();
          s.failure = e.what();
        }
      }
    };
    const int nt = std::min(threads, trials);
    if (nt <= 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      for (int i = 0; i < nt; ++i) pool.emplace_back(worker);
      for (auto& th : pool) th.join();
    }

    PropertyResult r;
    r.property = prop.name;
    r.category = prop.category;
    r.trials = trials;
    r.tol = opts.tol_overrides.count(prop.name) ? opts.tol_overrides.at(prop.name) : prop.tol;
    std::size_t worst = 0;
    for (std::size_t i = 1; i < slots.size(); ++i)
      if (slots[i].error > slots[worst].error) worst = i;
    r.max_error = slots[worst].error;
    r.worst_seed = slots[worst].seed;
    r.worst_point = slots[worst].point;
    r.failure = slots[worst].failure;
    r.pass = std::isfinite(r.max_error) && r.max_error <= r.tol;
    report.properties.push_back(std::move(r));
  }
  return report;
}

}  // namespace sjk
