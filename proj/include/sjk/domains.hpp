#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "sjk/linalg.hpp"

namespace sjk {

using Rng = std::mt19937_64;

struct SiegelBallPoint {
  CMat W;
  int n() const { return static_cast<int>(W.rows()); }
};

struct SiegelUpperPoint {
  CMat V;
  int n() const { return static_cast<int>(V.rows()); }
};

struct JacobiBallPoint {
  CVec z;
  CMat W;
  int n() const { return static_cast<int>(W.rows()); }
  static JacobiBallPoint origin(int n);
};

struct JacobiUpperPoint {
  CVec u;
  CMat V;
  int n() const { return static_cast<int>(V.rows()); }
};

// dz/dW for ball points; the same container carries du/dV on the upper side.
struct TangentVector {
  CVec dz;
  CMat dW;
};

/// Ordered pairs (p,q), p <= q, in lexicographic order. Indices are 0-based
/// internally; `delta_symbol` takes the 1-based form.
class PairIndex {
 public:
  explicit PairIndex(int n);

  int n() const { return n_; }
  int size() const { return static_cast<int>(pairs_.size()); }
  /// Full coordinate count on the Jacobi ball: n + n(n+1)/2.
  int d() const { return n_ + size(); }

  int flatten(int p, int q) const;  // order of p,q irrelevant
  std::pair<int, int> unflatten(int i) const;
  const std::vector<std::pair<int, int>>& pairs() const { return pairs_; }

 private:
  int n_;
  std::vector<std::pair<int, int>> pairs_;
};

/// (z, W) -> (z_1..z_n, w_pq for p<=q).
CVec flatten(const JacobiBallPoint& pt);
JacobiBallPoint unflatten_jacobi(const CVec& v, int n);
CVec flatten_sym(const CMat& W);
CMat unflatten_sym(const CVec& v, int n);
CVec flatten_tangent(const TangentVector& t);

struct BallDiagnostics {
  double symmetry_defect = 0.0;
  double min_eig_N = 0.0;
};

struct UpperDiagnostics {
  double symmetry_defect = 0.0;
  double min_eig_R = 0.0;
};

/// Throws NonSymmetric or NotInBall; returns the diagnostics when accepted.
BallDiagnostics validate_ball_point(const CMat& W, double tol = 1e-12);
/// Non-throwing variant.
BallDiagnostics ball_diagnostics(const CMat& W);
bool in_ball(const CMat& W, double tol = 1e-12);

UpperDiagnostics validate_upper_point(const CMat& V, double tol = 1e-12);
bool in_upper(const CMat& V, double tol = 1e-12);

int delta_symbol(int i, int j, int p, int q, int n);

enum class Domain { ball, jacobi_ball, upper, jacobi_upper };

Domain parse_domain(const std::string& s);
const char* to_string(Domain d);

using AnyPoint = std::variant<SiegelBallPoint, JacobiBallPoint, SiegelUpperPoint, JacobiUpperPoint>;

CMat sample_ball_W(int n, Rng& rng, double radius);
CVec sample_complex_gaussian(int n, Rng& rng);
JacobiBallPoint sample_jacobi_ball(int n, Rng& rng, double radius);
JacobiUpperPoint sample_jacobi_upper(int n, Rng& rng, double radius);
AnyPoint sample_point(Domain domain, int n, Rng& rng, double radius);

/// W = U diag(s) U^T with U Haar-ish unitary and s_max = sqrt(1 - margin), so
/// that lambda_min(1 - W Wbar) equals `margin`.
CMat sample_near_boundary_W(int n, Rng& rng, double margin);

/// SplitMix64 step; used to derive independent per-trial streams.
std::uint64_t splitmix64(std::uint64_t x);

}  // namespace sjk
