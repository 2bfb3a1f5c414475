#pragma once

// Dense Hermitian eigenvalues by cyclic complex Jacobi rotations.

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace fspair::hermitian {

struct JacobiResult {
  std::vector<double> eigenvalues;  // ascending
  int sweeps = 0;
  bool converged = false;
};

/// Converged when the off-diagonal Frobenius mass is below rel_tol of the total.
JacobiResult jacobi_eigenvalues(const Eigen::MatrixXcd& m, double rel_tol = 1e-14,
                                int max_sweeps = 100);

/// max_{i,j} |m(i,j) - conj(m(j,i))| relative to max |m(i,j)|.
double hermitian_defect(const Eigen::MatrixXcd& m);

}  // namespace fspair::hermitian
