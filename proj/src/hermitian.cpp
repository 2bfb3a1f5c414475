#include "fspair/hermitian.hpp"

#include <algorithm>
#include <cmath>

#include "fspair/error.hpp"

namespace fspair::hermitian {

double hermitian_defect(const Eigen::MatrixXcd& m) {
  double defect = 0.0, scale = 0.0;
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      defect = std::max(defect, std::abs(m(i, j) - std::conj(m(j, i))));
      scale = std::max(scale, std::abs(m(i, j)));
    }
  return scale > 0.0 ? defect / scale : 0.0;
}

JacobiResult jacobi_eigenvalues(const Eigen::MatrixXcd& m, double rel_tol, int max_sweeps) {
  if (m.rows() != m.cols()) throw DomainError("jacobi_eigenvalues: matrix must be square");
  const Eigen::Index n = m.rows();
  // Symmetrize so rounding-level asymmetry in the input cannot accumulate.
  Eigen::MatrixXcd a = 0.5 * (m + m.adjoint());
  JacobiResult res;

  auto off_mass = [&] {
    double off = 0.0;
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j)
        if (i != j) off += std::norm(a(i, j));
    return off;
  };
  const double total = a.squaredNorm();

  for (res.sweeps = 0; res.sweeps <= max_sweeps; ++res.sweeps) {
    if (off_mass() <= rel_tol * rel_tol * total) {
      res.converged = true;
      break;
    }
    if (res.sweeps == max_sweeps) break;
    for (Eigen::Index p = 0; p < n - 1; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        const std::complex<double> h = a(p, q);
        const double mag = std::abs(h);
        if (mag == 0.0) continue;
        const std::complex<double> e = h / mag;  // phase of a(p, q)
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const double theta = (aqq - app) / (2.0 * mag);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                         (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        // a <- V^H a V with V_pp = V_qq = c, V_pq = s e, V_qp = -s conj(e).
        for (Eigen::Index k = 0; k < n; ++k) {
          const std::complex<double> akp = a(k, p);
          const std::complex<double> akq = a(k, q);
          a(k, p) = c * akp - s * std::conj(e) * akq;
          a(k, q) = s * e * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const std::complex<double> apk = a(p, k);
          const std::complex<double> aqk = a(q, k);
          a(p, k) = c * apk - s * e * aqk;
          a(q, k) = s * std::conj(e) * apk + c * aqk;
        }
        a(p, q) = a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
      }
    }
  }
  res.eigenvalues.resize(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) res.eigenvalues[static_cast<std::size_t>(i)] = a(i, i).real();
  std::sort(res.eigenvalues.begin(), res.eigenvalues.end());
  return res;
}

}  // namespace fspair::hermitian
