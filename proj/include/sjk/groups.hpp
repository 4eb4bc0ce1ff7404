#pragma once

#include "sjk/domains.hpp"
#include "sjk/linalg.hpp"

namespace sjk {

struct SymplecticC {
  CMat p;
  CMat q;

  int n() const { return static_cast<int>(p.rows()); }
  static SymplecticC identity(int n);
  /// Checks p p* - q q* = 1, p q^T = q p^T, p* p - q^T qbar = 1, p^T qbar = q* p.
  static SymplecticC make(CMat p, CMat q, double tol = 1e-10);
  /// Largest defect over the four defining relations.
  double defect() const;
  SymplecticC inverse() const;  // (p*, -q^T)
  /// g x alpha = p alpha + q conj(alpha)
  CVec times(const CVec& alpha) const;
};

SymplecticC operator*(const SymplecticC& a, const SymplecticC& b);

struct SymplecticR {
  RMat a, b, c, d;

  int n() const { return static_cast<int>(a.rows()); }
  static SymplecticR identity(int n);
  static SymplecticR make(RMat a, RMat b, RMat c, RMat d, double tol = 1e-10);
  static SymplecticR from_block(const RMat& g);
  RMat block() const;
  double defect() const;  // max |g^T J g - J|
  SymplecticR inverse() const;
};

SymplecticR operator*(const SymplecticR& x, const SymplecticR& y);

RMat symplectic_J(int n);

struct JacobiElementC {
  SymplecticC g;
  CVec alpha;
  double t = 0.0;

  int n() const { return g.n(); }
  static JacobiElementC identity(int n);
  JacobiElementC inverse() const;
};

struct JacobiElementR {
  SymplecticR g;
  RVec lambda_mu;  // X = (lambda, mu) = (n, m) in the action
  double k_center = 0.0;

  int n() const { return g.n(); }
  static JacobiElementR identity(int n);
  JacobiElementR inverse() const;
};

JacobiElementC compose_jacobi_c(const JacobiElementC& h1, const JacobiElementC& h2);
JacobiElementR compose_jacobi_r(const JacobiElementR& h1, const JacobiElementR& h2);

SymplecticC cayley_conjugate(const SymplecticR& g);
SymplecticR cayley_conjugate_inverse(const SymplecticC& g);

JacobiBallPoint act_ball(const JacobiElementC& h, const JacobiBallPoint& pt);
CMat act_siegel_ball(const SymplecticC& g, const CMat& W);
JacobiUpperPoint act_upper(const JacobiElementR& h, const JacobiUpperPoint& pt);
CMat act_siegel_upper(const SymplecticR& g, const CMat& V);

/// (V,u) -> (W,z); the u part is dropped when only V matters.
JacobiBallPoint partial_cayley(const JacobiUpperPoint& pt);
JacobiUpperPoint partial_cayley_inverse(const JacobiBallPoint& pt);

JacobiElementC theta(const JacobiElementR& h);

struct FcPoint {
  CVec eta;
  CMat W;
  int n() const { return static_cast<int>(W.rows()); }
};

FcPoint fc_transform(const JacobiBallPoint& pt);
JacobiBallPoint fc_transform_inverse(const FcPoint& fc);

/// Closed-form pushforward of a tangent vector under act_ball.
TangentVector act_ball_differential(const JacobiElementC& h, const JacobiBallPoint& pt,
                                    const TangentVector& v);

// Random elements: exp of a random sp(n,R) algebra element scaled to
// Frobenius norm <= `scale`; translations standard Gaussian.
SymplecticR random_symplectic_r(int n, Rng& rng, double scale = 1.0);
JacobiElementR random_jacobi_r(int n, Rng& rng, double scale = 1.0);
JacobiElementC random_jacobi_c(int n, Rng& rng, double scale = 1.0);

}  // namespace sjk
