#pragma once

// Work-measurement schemes as explicit POVM-plus-outcome objects, and the
// statistics they induce on a state.

#include "qwork/quantum.hpp"

namespace qwork {

// A finite list of (POVM element, work outcome) pairs. Labels, when present,
// carry the index tuple of each element: (a,k) for the two-point scheme,
// (a,b,c,k) for the composite scheme.
struct WorkScheme {
  std::vector<Matrix> elements;
  std::vector<double> outcomes;
  std::vector<std::vector<int>> labels;
  int dim = 0;

  std::size_t size() const { return elements.size(); }
  // Invariant check: PSD elements, completeness, finite outcomes. Throws on
  // violation. Scheme constructors call this; hand-built schemes may not.
  void validate(double psd_tol = tol::psd, double completeness_tol = tol::povm) const;
};

// Aggregated outcome statistics: strictly ascending outcomes with positive
// probabilities summing to one.
struct WorkDistribution {
  std::vector<double> outcomes;
  std::vector<double> probabilities;
};

// Two-point measurement: project onto an energy level of H, evolve, project
// onto a level of H'. Elements P_a U† P'_k U P_a with outcomes E'_k - E_a.
WorkScheme tpm_scheme(const Process& p, double cluster_tol = tol::cluster);

// Projective measurement of the Heisenberg operator of work.
WorkScheme how_scheme(const Process& p, double cluster_tol = tol::cluster);

// State-dependent forward+backward two-point scheme: rotate the state onto
// the energy diagonal with a backward leg, then run a standard two-point
// measurement on the rotated process. Elements are the effective single-copy
// POVM p^II_ck * M^I_ab with outcomes (E_b - E_a) + (E'_k - E_c).
WorkScheme composite_scheme(const Process& p, const DensityMatrix& rho,
                            double cluster_tol = tol::cluster);

// The unitary R of the composite construction: rotates rho onto the diagonal
// of H's eigenbasis, keeping the diagonal's ordering, with R = 1 whenever
// [rho, H] = 0.
UnitaryOperator composite_rotation(const HermitianOperator& h, const DensityMatrix& rho);

struct BetaHatConfig {
  double beta_min = 1e-6;
  double beta_max = 1e3;
  int grid_points = 60;      // log-spaced bracketing pass
  double search_tol = 1e-10; // golden-section width in beta
  double beta_floor = 1e-6;  // below this the Upsilon log-product is replaced by its beta->0 limit
};

struct BetaHatResult {
  double beta_hat = 0.0;
  double residual_norm = 0.0;  // || rho - tau_beta_hat ||
  bool at_floor = false;
};

// argmin over beta >= 0 of || rho - tau_beta || in operator norm.
BetaHatResult fit_inverse_temperature(const DensityMatrix& rho, const HermitianOperator& h,
                                      const BetaHatConfig& cfg = {});

// -beta^{-1} ln[ e^{beta H/2} e^{-beta U† H' U} e^{beta H/2} ], computed with
// internal energy shifts to keep the exponentials bounded.
HermitianOperator upsilon_operator(const Process& p, double beta);

// Operator scheme of Upsilon_rho at the state's best-fit inverse temperature;
// degenerates to the HOW scheme when beta_hat is at the floor.
WorkScheme upsilon_scheme(const Process& p, const DensityMatrix& rho,
                          const BetaHatConfig& cfg = {}, double cluster_tol = tol::cluster);

// Default outcome-merging tolerance: 1e-9 times the outcome span.
double default_merge_tol(std::span<const double> outcomes);

// p_W = tr(rho M_W); outcomes within merge_tol are merged (probability-
// weighted); zero-probability outcomes are dropped. merge_tol < 0 selects
// the default. Throws when a probability is below -1e-9 or the total drifts
// from 1 by more than 1e-9.
WorkDistribution distribution(const WorkScheme& s, const DensityMatrix& rho,
                              double merge_tol = -1.0);

// sum p_W exp(-beta W) and sum p_W W.
double exp_average(const WorkDistribution& d, double beta);
double mean(const WorkDistribution& d);

// Probability mass on outcomes with |W| <= zero_tol.
double mass_near_zero(const WorkDistribution& d, double zero_tol);

}  // namespace qwork
