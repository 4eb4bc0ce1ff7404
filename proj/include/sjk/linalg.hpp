#pragma once

#include <algorithm>
#include <complex>
#include <string>

#include <Eigen/Dense>

namespace sjk {

using cplx = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;

inline constexpr cplx I{0.0, 1.0};

[[noreturn]] void throw_singular(const char* what, double rcond);
[[noreturn]] void throw_not_square(const char* what);

// Partial-pivoting LU; a reciprocal condition estimate below `rcond_floor`
// is reported as SingularDenominator.
template <typename Derived>
Eigen::PartialPivLU<Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>> checked_lu(
    const Eigen::MatrixBase<Derived>& A, const char* what, double rcond_floor = 1e-14) {
  using Mat = Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  if (A.rows() != A.cols()) throw_not_square(what);
  Eigen::PartialPivLU<Mat> lu{Mat(A)};
  const double rc = lu.rcond();
  if (!(rc > rcond_floor)) throw_singular(what, rc);
  return lu;
}

template <typename Derived>
auto inverse(const Eigen::MatrixBase<Derived>& A, const char* what, double rcond_floor = 1e-14) {
  using Mat = Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  return Mat(checked_lu(A, what, rcond_floor).inverse());
}

template <typename DA, typename DB>
auto solve(const Eigen::MatrixBase<DA>& A, const Eigen::MatrixBase<DB>& B, const char* what,
           double rcond_floor = 1e-14) {
  using Out = Eigen::Matrix<typename DA::Scalar, DB::RowsAtCompileTime, DB::ColsAtCompileTime>;
  return Out(checked_lu(A, what, rcond_floor).solve(B));
}

template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& A) {
  return A.size() == 0 ? 0.0 : double(A.cwiseAbs().maxCoeff());
}

/// max|A - B| / max|B|, with max|B| floored at `floor`.
template <typename DA, typename DB>
double relative_max_error(const Eigen::MatrixBase<DA>& A, const Eigen::MatrixBase<DB>& B, double floor = 1e-300) {
  return max_abs(A - B) / std::max(max_abs(B), floor);
}

/// Smallest eigenvalue of the Hermitian part of A.
double min_hermitian_eigenvalue(const CMat& A);
double min_symmetric_eigenvalue(const RMat& A);

}  // namespace sjk
