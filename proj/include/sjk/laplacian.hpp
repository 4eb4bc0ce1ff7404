#pragma once

#include <functional>
#include <string>

#include "sjk/domains.hpp"
#include "sjk/metric.hpp"
#include "sjk/oracle.hpp"

namespace sjk {

/// Coefficients over the domain's ordered coordinates. The operator is
/// Delta f = sum_{a,b} C(a,b) d^2 f / d zeta_b d conj(zeta_a) = Tr(C * Hess f).
struct LaplacianCoefficients {
  Domain domain = Domain::jacobi_ball;
  CMat C;
};

LaplacianCoefficients laplacian_coefficients_ball(const CMat& W);
LaplacianCoefficients laplacian_coefficients_upper(const CMat& V);
LaplacianCoefficients laplacian_coefficients_jacobi(const MetricParams& params, const JacobiBallPoint& pt);
/// Assembly from theta, S and N through the e_{mu nu}-weighted operators D_W;
/// kept independent of metric_inverse so the two can be compared.
LaplacianCoefficients laplacian_coefficients_operator_form(const MetricParams& params, const JacobiBallPoint& pt);

struct Contraction {
  bool transpose = false;  // contract with C^T instead of C
  double sign = 1.0;
};

cplx contract(const CMat& C, const CMat& hess, const Contraction& conv = {});

using MatrixField = std::function<cplx(const CMat&)>;
using PointField = std::function<cplx(const JacobiBallPoint&)>;

cplx apply_laplacian_ball(const MatrixField& f, const CMat& W, const FdConfig& cfg = {});
cplx apply_laplacian_upper(const MatrixField& f, const CMat& V, const FdConfig& cfg = {});
cplx apply_laplacian_jacobi(const MetricParams& params, const PointField& f, const JacobiBallPoint& pt,
                            const FdConfig& cfg = {}, const Contraction& conv = {});

/// max over (a,b) of |e_ab df/dz_ab - chain-rule value through W = Phi(Z)|.
double cayley_chain_rule_check(const MatrixField& f, const CMat& V, const FdConfig& cfg = {});
/// |Delta_upper(f o Phi)(V) - Delta_ball(f)(Phi(V))|.
double laplacian_correspondence_check(const MatrixField& f, const CMat& V, const FdConfig& cfg = {});

/// Built-in fields on D^J_n: "const", "lnG", "trWWbar", "normz2", "re_poly(SEED)".
PointField builtin_field(const std::string& name, const MetricParams& params);

/// Positive-definite Hermitian quadratic plus a small non-harmonic cubic in
/// `dim` complex coordinates; real-valued.
Field random_flat_polynomial(int dim, Rng& rng);
/// The same on the flattened Jacobi-ball coordinates.
PointField random_test_polynomial(int n, Rng& rng);

}  // namespace sjk
