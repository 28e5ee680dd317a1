#pragma once

// Checkers for the three work-measurement conditions (A1: average energy
// conservation, A2: deterministic zero work for untouched systems, B: the
// Jarzynski equality) and the structural validators of the JE class.

#include "qwork/schemes.hpp"

namespace qwork {

enum class Condition { A1, A2, B, JEclass, Thm2 };

const char* condition_name(Condition c);

struct ConditionReport {
  Condition condition = Condition::A1;
  bool passed = false;
  double residual = 0.0;
  double tolerance = 0.0;
  std::string context;
  bool skipped = false;  // preconditions (nondegeneracy) not met; never counts as a pass
};

using SchemeFactory = std::function<WorkScheme(const Process&, const DensityMatrix&)>;

// A1: | mean of the measured distribution - tr(rho Omega) |.
ConditionReport check_a1(const WorkScheme& s, const Process& p, const DensityMatrix& rho,
                         double tol);

// A2: build the scheme for the trivial process (H' = H, U = 1) on rho and
// measure 1 minus the probability mass at zero work. The zero-work window is
// the aggregation tolerance derived from H's spectral span.
ConditionReport check_a2(const SchemeFactory& factory, const HermitianOperator& h,
                         const DensityMatrix& rho, double tol);

// B: | sum_W p_W e^{-beta W} - e^{-beta (F' - F)} | on the thermal state.
// State-dependent schemes must have been constructed at rho = tau_beta.
ConditionReport check_b(const WorkScheme& s, const HermitianOperator& h,
                        const HermitianOperator& hp, double beta, double tol);

// Structural characterization of schemes satisfying the Jarzynski equality:
// (i) every outcome is an energy difference E'_k - E_a, (ii) for each k the
// degeneracy-weighted sums of tr(M_bm P_a) over {E'_m - E_b + E_a = E'_k}
// equal tr P'_k, (iii) tr(M_bm P_a) vanishes when E'_m - E_b + E_a misses the
// final spectrum. An unmatched outcome is reported as a failed (not thrown)
// structural violation naming the outcome.
ConditionReport je_class_validate(const WorkScheme& s, const HermitianOperator& h,
                                  const HermitianOperator& hp, double tol);

// For a nondegenerate set of outcome differences: block support
// M_ak = P_a M_ak P_a and trace sums sum_a tr M_ak = tr P'_k. Degenerate
// instances are reported as skipped.
ConditionReport nondegenerate_checks(const WorkScheme& s, const HermitianOperator& h,
                                     const HermitianOperator& hp, double tol);

// Thermal-average condition: tr M_ak = tr(P_a U† P'_k U) for all a, k; for a
// nondegenerate H additionally the elementwise equality with the two-point
// scheme. Skipped when the instance is degenerate.
ConditionReport theorem2_trace_condition(const WorkScheme& s, const Process& p, double tol);

}  // namespace qwork
