#pragma once

// Numerical experiments behind the incompatibility results: the
// Golden-Thompson gap, the second-order trace inequality, small-strength
// scaling of cyclic processes, and the properties of the Upsilon operator.

#include "qwork/conditions.hpp"

namespace qwork {

// <e^{-beta Omega}>_tau - e^{-beta dF}. Nonnegative; strictly positive
// exactly when U† H' U fails to commute with H.
double golden_thompson_gap(const Process& p, double beta);

// Second-order trace inequality terms: lhs = beta^2 <omega^2>_tau and
// rhs = beta <i[h,omega]>_tau, by direct traces and by the eigenbasis sums
// sum (p_k + p_j) D_kj^2 |h_kj|^2 and 2 sum (p_k - p_j) D_kj |h_kj|^2.
struct Ineq2Terms {
  double lhs = 0.0;
  double rhs = 0.0;
  double lhs_eig = 0.0;
  double rhs_eig = 0.0;
};
Ineq2Terms ineq2_terms(const HermitianOperator& h_system, const HermitianOperator& generator,
                       double beta);

// Power-law fit of values against strengths; log-log least squares over the
// smallest strengths (asymptotic regime).
struct ScalingResult {
  std::vector<double> xs;      // strictly decreasing toward 0
  std::vector<double> values;  // |observable| at each strength
  double fitted_exponent = 0.0;
  double fit_residual = 0.0;
  bool fit_ok = true;  // false when a value in the fit window is nonpositive
};

struct ScalingReport {
  bool degenerate = false;  // tr(rho [h,H]) = 0; nothing to fit
  ScalingResult mean_scaling;       // |mean of the measured work distribution|
  ScalingResult tail_mass_scaling;  // mass on outcomes bounded away from zero
  ScalingResult omega_mean_scaling; // |tr(rho Omega(x))| for reference
};

ScalingReport scaling_analysis(const SchemeFactory& factory, const HermitianOperator& h_system,
                               const HermitianOperator& generator, const DensityMatrix& rho,
                               std::vector<double> xs);

// Second-order expansion of the thermal averages of Upsilon and Omega on the
// cyclic family: measured x^2 coefficients against the eigenbasis sums.
struct UpsilonExpansionReport {
  bool commuting = false;
  double upsilon_coefficient = 0.0;          // beta <Upsilon>_tau / x^2, measured
  double upsilon_coefficient_formula = 0.0;  // eigenbasis sum
  double omega_coefficient = 0.0;            // beta <Omega>_tau / x^2, measured
  double omega_coefficient_formula = 0.0;    // eigenbasis sum
  bool gap_positive = false;                 // <Upsilon>_tau > <Omega>_tau at every x
  std::vector<double> xs;
};
UpsilonExpansionReport upsilon_expansion_check(const HermitianOperator& h_system,
                                               const HermitianOperator& generator, double beta,
                                               std::vector<double> xs);

// Spectrum of Upsilon_tau majorizes the spectrum of Omega.
struct MajorizationReport {
  std::vector<double> upsilon_spectrum;  // descending
  std::vector<double> omega_spectrum;    // descending
  double min_partial_sum_gap = 0.0;      // min over k<d of sum^k Upsilon - sum^k Omega
  double trace_gap = 0.0;                // |tr Upsilon - tr Omega|
  bool majorizes = false;
};
MajorizationReport majorization_check(const Process& p, double beta, double tol = 1e-8);

// <Omega>_tau - <Upsilon>_tau <= S(tau || U† tau' U)/beta, and
// <Upsilon>_tau >= dF.
struct EntropyBoundReport {
  double mean_omega = 0.0;
  double mean_upsilon = 0.0;
  double entropy_term = 0.0;  // S(tau || U† tau' U)/beta
  double delta_f = 0.0;
  bool upper_bound_holds = false;
  bool lower_bound_holds = false;
};
EntropyBoundReport relative_entropy_bound_check(const Process& p, double beta, double tol = 1e-9);

// Least-squares slope of ln(values) against ln(xs) over the n_fit smallest
// strengths; values must be positive there.
ScalingResult fit_power_law(std::vector<double> xs, std::vector<double> values, int n_fit = 3);

}  // namespace qwork
