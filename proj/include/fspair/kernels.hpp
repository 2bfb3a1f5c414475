#pragma once

// Auxiliary kernels of the bridge construction:
//   A_k  = k-fold convolution power of exp(-2 pi |x|)
//   G_0(w, z, x) = (e^{-2 pi i conj(w) |x|} 1_{x<0} + e^{2 pi i z |x|} 1_{x>=0}) / (z - conj(w))
//   G_k  = G_0 * A_k, with Fourier transform Ghat_k in the last variable
//   S_k  = sinc^{2(k+1)} / v_k, whose transform is a centred cardinal B-spline.

#include <complex>
#include <vector>

namespace fspair::kernels {

using cplx = std::complex<double>;

inline constexpr int kMaxRIndex = 16;
/// eval_G (k >= 1) refuses arguments this close to i.
inline constexpr double kSingularRadius = 1e-6;

/// r_k(X) = [q^k] exp((1 - sqrt(1-q)) X) / sqrt(1-q).
class RPolynomial {
 public:
  RPolynomial(int k, std::vector<double> coeffs);

  int index() const noexcept { return k_; }
  const std::vector<double>& coeffs() const noexcept { return coeffs_; }
  double operator()(double x) const;

  /// Coefficients b_{k,j} of p_k(x) = pi^{-k} r_k(2 pi x), so that
  /// A_{k+1}(x) = e^{-2 pi |x|} p_k(|x|).
  std::vector<double> profile_coeffs() const;

 private:
  int k_;
  std::vector<double> coeffs_;
};

RPolynomial r_poly(int k);

/// Validated pair of upper half-plane arguments.
class KernelPoint {
 public:
  KernelPoint(cplx w, cplx z);
  cplx w() const noexcept { return w_; }
  cplx z() const noexcept { return z_; }

 private:
  cplx w_;
  cplx z_;
};

double eval_A(int k, double x);

/// v_k: the 2(k+1)-fold indicator convolution at 0.
double spline_normalizer(int k);
double eval_S(int k, double x);
double eval_Shat(int k, double t);

/// Centred cardinal B-spline of order n (n-fold convolution of 1_{[-1/2,1/2]}).
double central_bspline(int n, double t);

cplx eval_Ghat(int k, cplx w, cplx z, double t);
cplx eval_G(int k, cplx w, cplx z, double lambda);

/// |LHS - RHS| of
///   sum_j j! b_{k-1,j} / (2 pi)^{j+1} [(1+iz)^{-(j+1)} + (1-iz)^{-(j+1)}] = pi^{-k} (1+z^2)^{-k}.
double pf_identity_residual(int k, cplx z);

}  // namespace fspair::kernels
