#pragma once

// Continuous-variable classical-limit computation for a driven harmonic
// oscillator. The initial Hamiltonian is fixed to (q^2 + p^2)/2; the process
// is a 2x2 symplectic map S followed by a final quadratic form z^T Lambda z.
// The Jarzynski average of the work operator is evaluated in closed Gaussian
// form and, independently, by brute force on a truncated Fock space.

#include <complex>

#include <Eigen/Dense>

namespace qwork {

using Matrix2 = Eigen::Matrix2d;

struct GaussianProcess {
  Matrix2 symplectic;  // S, det = 1
  Matrix2 lambda;      // final quadratic form, symmetric positive-definite
  double beta = 0.0;   // inverse temperature
  double hbar = 0.0;   // beta*hbar is the dimensionless expansion parameter

  GaussianProcess(Matrix2 s, Matrix2 lam, double beta_, double hbar_);
};

// Position-representation Gaussian kernel exp(-A q^2 - A* qbar^2 - 2B q qbar + C).
struct GaussianKernel {
  std::complex<double> a_coef;
  double b_coef = 0.0;
  double c_coef = 0.0;
};

// Xi = S^T Lambda S - 1/2; the quadratic form of the work operator.
Matrix2 xi_matrix(const GaussianProcess& gp);

// w = sqrt(det Xi) for positive-definite Xi; throws std::domain_error
// otherwise (work operator not bounded from below).
double symplectic_eigenvalue(const Matrix2& xi);

// Z_W = 1 / (e^{beta hbar w} - e^{-beta hbar w}); the argument must stay
// above 1e-12.
double z_work(double beta_hbar, double w);

struct CorrelationMatrices {
  Matrix2 work;         // x^W = hbar w coth(hbar beta w) Xi^{-1}
  Matrix2 hamiltonian;  // x^H = hbar coth(beta hbar / 2) * identity
};
CorrelationMatrices correlation_matrices(const GaussianProcess& gp);

// Kernel coefficients of a Gaussian state with correlation matrix x_mat.
GaussianKernel kernel_coeffs(const Matrix2& x_mat, double hbar);

// <e^{-beta Omega}>_tau via the closed Gaussian overlap formula.
double jarzynski_average_gaussian(const GaussianProcess& gp);

// Z'/Z from classical phase-space Gaussians: 1 / (2 sqrt(det S^T Lambda S)).
double classical_partition_ratio(const GaussianProcess& gp);

// Quantum Z'/Z at the same beta*hbar: sinh(beta hbar / 2) divided by
// sinh(beta hbar sqrt(det Lambda)); e^{-beta dF} of the oscillator pair.
double quantum_partition_ratio(const GaussianProcess& gp);

// Brute-force tr(e^{-beta H} e^{-beta Omega}) / tr(e^{-beta H}) on a
// truncated Fock space. Throws std::runtime_error when the top level holds
// more than 1e-10 of either thermal weight (cutoff insufficient).
double fock_oracle(const GaussianProcess& gp, int cutoff);

// Smallest cutoff with an adequate thermal tail for this process, capped by
// max_cutoff; returns 0 when no feasible cutoff exists under the cap.
int suggested_cutoff(const GaussianProcess& gp, int max_cutoff);

}  // namespace qwork
