#include "qwork/theorems.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace qwork {

double golden_thompson_gap(const Process& p, double beta) {
  if (!(beta > 0.0)) throw std::invalid_argument("golden_thompson_gap: beta must be > 0");
  const GibbsState tau = gibbs(p.h_initial, beta);
  const HermitianOperator omega = how_operator(p);
  const HermitianOperator exp_w =
      matfun(omega, [beta](double e) { return std::exp(-beta * e); }, "exp");
  const double lhs = (tau.state.entries() * exp_w.entries()).trace().real();
  const double rhs = std::exp(log_partition(p.h_final, beta) - tau.log_partition);
  return lhs - rhs;
}

Ineq2Terms ineq2_terms(const HermitianOperator& h_system, const HermitianOperator& generator,
                       double beta) {
  if (!(beta > 0.0)) throw std::invalid_argument("ineq2_terms: beta must be > 0");
  if (h_system.dim() != generator.dim()) {
    throw std::invalid_argument("ineq2_terms: dimension mismatch");
  }
  const PiProcess pp(h_system, generator, 0.0);
  const Matrix omega = omega_commutator(pp).entries();
  const GibbsState tau = gibbs(h_system, beta);

  Ineq2Terms t;
  t.lhs = beta * beta * (tau.state.entries() * omega * omega).trace().real();
  const Matrix h_omega = Complex(0.0, 1.0) * commutator(generator.entries(), omega);
  t.rhs = beta * (tau.state.entries() * h_omega).trace().real();

  // Eigenbasis sums over raw ascending levels of H.
  const SpectralDecomposition sh = eigh(h_system, 0.0);
  const Matrix h_eig = sh.raw_vectors.adjoint() * generator.entries() * sh.raw_vectors;
  const int d = h_system.dim();
  const double e0 = sh.raw_values.front();
  double z = 0.0;
  std::vector<double> pop(d);
  for (int i = 0; i < d; ++i) {
    pop[i] = std::exp(-beta * (sh.raw_values[i] - e0));
    z += pop[i];
  }
  for (double& v : pop) v /= z;
  for (int k = 0; k < d; ++k) {
    for (int j = k + 1; j < d; ++j) {
      const double delta = beta * (sh.raw_values[j] - sh.raw_values[k]);
      const double h2 = std::norm(h_eig(k, j));
      t.lhs_eig += (pop[k] + pop[j]) * delta * delta * h2;
      t.rhs_eig += 2.0 * (pop[k] - pop[j]) * delta * h2;
    }
  }
  return t;
}

ScalingResult fit_power_law(std::vector<double> xs, std::vector<double> values, int n_fit) {
  if (xs.size() != values.size() || xs.size() < 2) {
    throw std::invalid_argument("fit_power_law: need matching lists with >= 2 points");
  }
  ScalingResult r;
  r.xs = std::move(xs);
  r.values = std::move(values);
  const int n = static_cast<int>(r.xs.size());
  const int m = std::min(n_fit, n);
  // Fit over the m smallest strengths (the xs list is decreasing).
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  for (int i = n - m; i < n; ++i) {
    if (!(r.values[i] > 0.0)) {
      r.fit_ok = false;
      r.fitted_exponent = std::numeric_limits<double>::quiet_NaN();
      return r;
    }
    const double lx = std::log(r.xs[i]);
    const double ly = std::log(r.values[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double denom = m * sxx - sx * sx;
  r.fitted_exponent = (m * sxy - sx * sy) / denom;
  const double intercept = (sy - r.fitted_exponent * sx) / m;
  double rss = 0.0;
  for (int i = n - m; i < n; ++i) {
    const double pred = intercept + r.fitted_exponent * std::log(r.xs[i]);
    rss += std::pow(std::log(r.values[i]) - pred, 2.0);
  }
  r.fit_residual = std::sqrt(rss / m);
  return r;
}

ScalingReport scaling_analysis(const SchemeFactory& factory, const HermitianOperator& h_system,
                               const HermitianOperator& generator, const DensityMatrix& rho,
                               std::vector<double> xs) {
  std::sort(xs.begin(), xs.end(), std::greater<>());
  ScalingReport rep;
  const Matrix omega = omega_commutator(PiProcess(h_system, generator, 0.0)).entries();
  const double coupling = std::abs((rho.entries() * omega).trace().real());
  if (coupling <= 1e-12) {
    rep.degenerate = true;
    return rep;
  }

  // Outcomes bounded away from zero: below half of the smallest nonzero level
  // spacing no scheme outcome can sit, uniformly in x.
  const SpectralDecomposition sh = eigh(h_system);
  double min_gap = std::numeric_limits<double>::infinity();
  for (int a = 0; a < sh.clusters(); ++a)
    for (int b = a + 1; b < sh.clusters(); ++b)
      min_gap = std::min(min_gap, sh.values[b] - sh.values[a]);
  const double tail_cut = 0.25 * min_gap;

  std::vector<double> means, tails, omega_means;
  for (double x : xs) {
    const Process p = pi_to_process(PiProcess(h_system, generator, x));
    const WorkScheme s = factory(p, rho);
    const WorkDistribution d = distribution(s, rho);
    means.push_back(std::abs(mean(d)));
    double tail = 0.0;
    for (std::size_t i = 0; i < d.outcomes.size(); ++i) {
      if (std::abs(d.outcomes[i]) > tail_cut) tail += d.probabilities[i];
    }
    tails.push_back(tail);
    omega_means.push_back(std::abs(average_work_unmeasured(p, rho)));
  }
  rep.mean_scaling = fit_power_law(xs, means);
  rep.tail_mass_scaling = fit_power_law(xs, tails);
  rep.omega_mean_scaling = fit_power_law(xs, omega_means);
  return rep;
}

UpsilonExpansionReport upsilon_expansion_check(const HermitianOperator& h_system,
                                               const HermitianOperator& generator, double beta,
                                               std::vector<double> xs) {
  if (!(beta > 0.0)) throw std::invalid_argument("upsilon_expansion_check: beta must be > 0");
  std::sort(xs.begin(), xs.end(), std::greater<>());
  UpsilonExpansionReport rep;
  rep.xs = xs;

  const PiProcess probe(h_system, generator, 0.0);
  if (operator_norm(omega_commutator(probe)) <= 1e-12) {
    rep.commuting = true;
    rep.gap_positive = false;
    return rep;
  }

  // Eigenbasis coefficient sums.
  const SpectralDecomposition sh = eigh(h_system, 0.0);
  const Matrix h_eig = sh.raw_vectors.adjoint() * generator.entries() * sh.raw_vectors;
  const int d = h_system.dim();
  const double e0 = sh.raw_values.front();
  double z = 0.0;
  std::vector<double> pop(d);
  for (int i = 0; i < d; ++i) {
    pop[i] = std::exp(-beta * (sh.raw_values[i] - e0));
    z += pop[i];
  }
  for (double& v : pop) v /= z;
  for (int k = 0; k < d; ++k) {
    for (int j = k + 1; j < d; ++j) {
      const double h2 = std::norm(h_eig(k, j));
      const double dp = pop[k] - pop[j];
      const double delta = beta * (sh.raw_values[j] - sh.raw_values[k]);
      rep.upsilon_coefficient_formula += h2 * dp * dp * (pop[k] + pop[j]) / (2.0 * pop[k] * pop[j]);
      rep.omega_coefficient_formula += h2 * dp * delta;
    }
  }

  const GibbsState tau = gibbs(h_system, beta);
  rep.gap_positive = true;
  const double x_ref = xs.back();  // smallest strength: deepest in the asymptotic regime
  for (double x : xs) {
    const Process p = pi_to_process(PiProcess(h_system, generator, x));
    const double mean_upsilon =
        (tau.state.entries() * upsilon_operator(p, beta).entries()).trace().real();
    const double mean_omega = (tau.state.entries() * how_operator(p).entries()).trace().real();
    if (!(mean_upsilon > mean_omega)) rep.gap_positive = false;
    if (x == x_ref) {
      rep.upsilon_coefficient = beta * mean_upsilon / (x * x);
      rep.omega_coefficient = beta * mean_omega / (x * x);
    }
  }
  return rep;
}

MajorizationReport majorization_check(const Process& p, double beta, double tol) {
  if (!(beta > 0.0)) throw std::invalid_argument("majorization_check: beta must be > 0");
  MajorizationReport rep;
  const SpectralDecomposition su = eigh(upsilon_operator(p, beta), 0.0);
  const SpectralDecomposition so = eigh(how_operator(p), 0.0);
  rep.upsilon_spectrum.assign(su.raw_values.rbegin(), su.raw_values.rend());
  rep.omega_spectrum.assign(so.raw_values.rbegin(), so.raw_values.rend());

  const int d = p.dim();
  double partial_u = 0.0;
  double partial_o = 0.0;
  rep.min_partial_sum_gap = std::numeric_limits<double>::infinity();
  for (int k = 0; k < d - 1; ++k) {
    partial_u += rep.upsilon_spectrum[k];
    partial_o += rep.omega_spectrum[k];
    rep.min_partial_sum_gap = std::min(rep.min_partial_sum_gap, partial_u - partial_o);
  }
  rep.trace_gap = std::abs((partial_u + rep.upsilon_spectrum[d - 1]) -
                           (partial_o + rep.omega_spectrum[d - 1]));
  rep.majorizes = rep.min_partial_sum_gap >= -tol && rep.trace_gap <= tol;
  return rep;
}

EntropyBoundReport relative_entropy_bound_check(const Process& p, double beta, double tol) {
  if (!(beta > 0.0)) {
    throw std::invalid_argument("relative_entropy_bound_check: beta must be > 0");
  }
  EntropyBoundReport rep;
  const GibbsState tau = gibbs(p.h_initial, beta);
  const GibbsState tau_final = gibbs(p.h_final, beta);
  const Matrix& u = p.evolution.entries();
  const DensityMatrix rotated(u.adjoint() * tau_final.state.entries() * u, 1e-10);

  rep.mean_omega = (tau.state.entries() * how_operator(p).entries()).trace().real();
  rep.mean_upsilon = (tau.state.entries() * upsilon_operator(p, beta).entries()).trace().real();
  rep.entropy_term = relative_entropy(tau.state, rotated) / beta;
  rep.delta_f = delta_free_energy(p.h_initial, p.h_final, beta);
  rep.upper_bound_holds = rep.mean_omega - rep.mean_upsilon <= rep.entropy_term + tol;
  rep.lower_bound_holds = rep.mean_upsilon >= rep.delta_f - tol;
  return rep;
}

}  // namespace qwork
