#pragma once

#include <functional>

#include "sjk/domains.hpp"
#include "sjk/groups.hpp"
#include "sjk/linalg.hpp"

namespace sjk {

enum class FdScheme { central, richardson };

struct FdConfig {
  double step = 1e-4;  // scaled per coordinate by (1 + |zeta_a|)
  FdScheme scheme = FdScheme::richardson;
  // W-coordinates always move w_pq and w_qp together; flattening does that.
};

/// Scalar field on flattened coordinates; may be complex-valued.
using Field = std::function<cplx(const CVec&)>;
/// Map between flattened coordinate vectors.
using PointMap = std::function<CVec(const CVec&)>;
/// Domain membership of a flattened point; empty means unconstrained.
using Inside = std::function<bool(const CVec&)>;

/// H(a,b) = d^2 f / d zeta_a d conj(zeta_b).
CMat fd_wirtinger_hessian(const Field& f, const CVec& x, const FdConfig& cfg = {}, const Inside& inside = {});

struct WirtingerGradient {
  CVec d;     // df/dzeta
  CVec dbar;  // df/dconj(zeta)
};
WirtingerGradient fd_wirtinger_gradient(const Field& f, const CVec& x, const FdConfig& cfg = {},
                                        const Inside& inside = {});

struct JacobianResult {
  CMat J;     // dF/dzeta
  CMat Jbar;  // dF/dconj(zeta)
};

/// Throws NonHolomorphic when max|Jbar| > holo_tol * max(1, max|J|).
JacobianResult fd_jacobian(const PointMap& map, const CVec& x, const FdConfig& cfg = {}, const Inside& inside = {},
                           double holo_tol = 1e-7);
JacobianResult fd_jacobian_unchecked(const PointMap& map, const CVec& x, const FdConfig& cfg = {},
                                     const Inside& inside = {});

/// |det J|^2 Q(h.pt) / Q(pt) - 1 for the Sp action on D_n (ball) or the
/// Jacobi action on D^J_n (jacobi_ball).
double volume_invariance_check(Domain domain, const JacobiElementC& h, const JacobiBallPoint& pt,
                               const FdConfig& cfg = {});

Inside ball_inside(int n);
Inside jacobi_ball_inside(int n);
Inside upper_inside(int n);

}  // namespace sjk
