#include "sjk/linalg.hpp"

#include <Eigen/Eigenvalues>

#include "sjk/error.hpp"

namespace sjk {

void throw_singular(const char* what, double rcond) {
  throw Error(ErrorKind::SingularDenominator,
              std::string(what) + ": numerically singular (rcond = " + std::to_string(rcond) + ")");
}

void throw_not_square(const char* what) {
  throw Error(ErrorKind::DimensionMismatch, std::string(what) + ": matrix is not square");
}

double min_hermitian_eigenvalue(const CMat& A) {
  const CMat H = 0.5 * (A + A.adjoint());
  Eigen::SelfAdjointEigenSolver<CMat> es(H, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

double min_symmetric_eigenvalue(const RMat& A) {
  const RMat H = 0.5 * (A + A.transpose());
  Eigen::SelfAdjointEigenSolver<RMat> es(H, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

}  // namespace sjk
