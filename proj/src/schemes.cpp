#include "qwork/schemes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace qwork {

void WorkScheme::validate(double psd_tol, double completeness_tol) const {
  if (elements.size() != outcomes.size()) {
    throw std::invalid_argument("WorkScheme: elements/outcomes length mismatch");
  }
  if (!labels.empty() && labels.size() != elements.size()) {
    throw std::invalid_argument("WorkScheme: labels length mismatch");
  }
  Matrix sum = Matrix::Zero(dim, dim);
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (!std::isfinite(outcomes[i])) {
      throw std::invalid_argument("WorkScheme: outcome is not finite");
    }
    const HermitianOperator m(elements[i], 1e-10);
    Eigen::SelfAdjointEigenSolver<Matrix> solver(m.entries(), Eigen::EigenvaluesOnly);
    if (!(solver.eigenvalues().minCoeff() >= -psd_tol)) {
      std::ostringstream os;
      os << "WorkScheme: element " << i << " has eigenvalue "
         << solver.eigenvalues().minCoeff() << " below -" << psd_tol;
      throw std::invalid_argument(os.str());
    }
    sum += elements[i];
  }
  const double dev = operator_norm(Matrix(sum - Matrix::Identity(dim, dim)));
  if (!(dev <= completeness_tol)) {
    std::ostringstream os;
    os << "WorkScheme: POVM elements sum to identity only within " << dev << " (tolerance "
       << completeness_tol << ")";
    throw std::invalid_argument(os.str());
  }
}

WorkScheme tpm_scheme(const Process& p, double cluster_tol) {
  const SpectralDecomposition sh = eigh(p.h_initial, cluster_tol);
  const SpectralDecomposition shp = eigh(p.h_final, cluster_tol);
  const Matrix& u = p.evolution.entries();

  WorkScheme s;
  s.dim = p.dim();
  for (int a = 0; a < sh.clusters(); ++a) {
    for (int k = 0; k < shp.clusters(); ++k) {
      const Matrix m = sh.projectors[a] * (u.adjoint() * shp.projectors[k] * u) * sh.projectors[a];
      s.elements.push_back(0.5 * (m + m.adjoint().eval()));
      s.outcomes.push_back(shp.values[k] - sh.values[a]);
      s.labels.push_back({a, k});
    }
  }
  s.validate();
  return s;
}

WorkScheme how_scheme(const Process& p, double cluster_tol) {
  const SpectralDecomposition sw = eigh(how_operator(p), cluster_tol);
  WorkScheme s;
  s.dim = p.dim();
  for (int i = 0; i < sw.clusters(); ++i) {
    s.elements.push_back(sw.projectors[i]);
    s.outcomes.push_back(sw.values[i]);
    s.labels.push_back({i});
  }
  s.validate();
  return s;
}

UnitaryOperator composite_rotation(const HermitianOperator& h, const DensityMatrix& rho) {
  const int d = h.dim();
  const SpectralDecomposition sh = eigh(h, 0.0);
  const Matrix& basis = sh.raw_vectors;  // columns: energy eigenbasis
  const Matrix rho_h = basis.adjoint() * rho.entries() * basis;

  // Already diagonal in the energy eigenbasis: the rotation must be exactly 1.
  double offdiag = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      if (i != j) offdiag = std::max(offdiag, std::abs(rho_h(i, j)));
  if (offdiag <= 1e-12) return UnitaryOperator(Matrix::Identity(d, d));

  // Permutation that sorts the diagonal of rho (in the energy eigenbasis)
  // descending; ties within 1e-12 keep the eigenbasis order.
  std::vector<int> order(d);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
    const double di = rho_h(i, i).real();
    const double dj = rho_h(j, j).real();
    if (std::abs(di - dj) <= 1e-12) return false;
    return di > dj;
  });

  // Eigenpairs of rho sorted descending; exact ties ordered by descending
  // overlap with the lowest-index basis vector.
  Eigen::SelfAdjointEigenSolver<Matrix> solver(rho_h);
  std::vector<int> eig_order(d);
  std::iota(eig_order.begin(), eig_order.end(), 0);
  const auto& evals = solver.eigenvalues();
  const Matrix& evecs = solver.eigenvectors();
  std::stable_sort(eig_order.begin(), eig_order.end(), [&](int i, int j) {
    if (std::abs(evals(i) - evals(j)) <= 1e-12) {
      return std::abs(evecs(0, i)) > std::abs(evecs(0, j));
    }
    return evals(i) > evals(j);
  });

  // R maps the j-th eigenvector of rho onto basis vector order[j], so that
  // R rho R† is diagonal with its diagonal ordered like rho's.
  Matrix r_h = Matrix::Zero(d, d);
  for (int j = 0; j < d; ++j) {
    r_h.row(order[j]) = evecs.col(eig_order[j]).adjoint();
  }
  const Matrix r = basis * r_h * basis.adjoint();
  return UnitaryOperator(r);
}

WorkScheme composite_scheme(const Process& p, const DensityMatrix& rho, double cluster_tol) {
  if (rho.dim() != p.dim()) {
    throw std::invalid_argument("composite_scheme: state/process dimension mismatch");
  }
  const int d = p.dim();
  const SpectralDecomposition sh = eigh(p.h_initial, cluster_tol);
  const SpectralDecomposition shp = eigh(p.h_final, cluster_tol);
  const Matrix r = composite_rotation(p.h_initial, rho).entries();
  const Matrix& u = p.evolution.entries();

  const int n = sh.clusters();
  const int np = shp.clusters();

  // Conjugated projectors R† P_b R appear in both legs.
  std::vector<Matrix> q(n);
  for (int b = 0; b < n; ++b) {
    const Matrix m = r.adjoint() * sh.projectors[b] * r;
    q[b] = 0.5 * (m + m.adjoint().eval());
  }

  // Backward leg: M^I_ab = Q_b P_a Q_b, outcome E_b - E_a.
  std::vector<std::vector<Matrix>> m1(n, std::vector<Matrix>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const Matrix m = q[b] * sh.projectors[a] * q[b];
      m1[a][b] = 0.5 * (m + m.adjoint().eval());
    }

  // Forward leg: M^II_ck = Q_c U† P'_k U Q_c with probabilities on rho itself.
  std::vector<std::vector<double>> p2(n, std::vector<double>(np));
  for (int c = 0; c < n; ++c) {
    for (int k = 0; k < np; ++k) {
      const Matrix m = q[c] * (u.adjoint() * shp.projectors[k] * u) * q[c];
      p2[c][k] = std::max(0.0, (rho.entries() * m).trace().real());
    }
  }

  WorkScheme s;
  s.dim = d;
  s.elements.reserve(static_cast<std::size_t>(n) * n * n * np);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int k = 0; k < np; ++k) {
          s.elements.push_back(p2[c][k] * m1[a][b]);
          s.outcomes.push_back((sh.values[b] - sh.values[a]) + (shp.values[k] - sh.values[c]));
          s.labels.push_back({a, b, c, k});
        }
  s.validate();
  return s;
}

BetaHatResult fit_inverse_temperature(const DensityMatrix& rho, const HermitianOperator& h,
                                      const BetaHatConfig& cfg) {
  const SpectralDecomposition sh = eigh(h);
  const auto misfit = [&](double beta) {
    const GibbsState g = gibbs(sh, beta);
    return operator_norm(HermitianOperator(rho.entries() - g.state.entries()));
  };

  // Log-grid bracket.
  const double l0 = std::log(cfg.beta_min);
  const double l1 = std::log(cfg.beta_max);
  int best = 0;
  double best_val = std::numeric_limits<double>::infinity();
  std::vector<double> grid(cfg.grid_points);
  for (int i = 0; i < cfg.grid_points; ++i) {
    grid[i] = std::exp(l0 + (l1 - l0) * i / (cfg.grid_points - 1));
    const double v = misfit(grid[i]);
    if (v < best_val) {
      best_val = v;
      best = i;
    }
  }
  double lo = grid[std::max(0, best - 1)];
  double hi = grid[std::min(cfg.grid_points - 1, best + 1)];

  // Golden-section refinement.
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - gr * (hi - lo);
  double x2 = lo + gr * (hi - lo);
  double f1 = misfit(x1);
  double f2 = misfit(x2);
  int guard = 0;
  while (hi - lo > cfg.search_tol && ++guard < 200) {
    if (f1 <= f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - gr * (hi - lo);
      f1 = misfit(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + gr * (hi - lo);
      f2 = misfit(x2);
    }
  }
  if (guard >= 200) {
    throw std::runtime_error("fit_inverse_temperature: golden-section search did not converge");
  }
  BetaHatResult out;
  out.beta_hat = 0.5 * (lo + hi);
  out.residual_norm = misfit(out.beta_hat);
  out.at_floor = out.beta_hat <= cfg.beta_floor + 2.0 * cfg.search_tol;
  return out;
}

HermitianOperator upsilon_operator(const Process& p, double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw std::invalid_argument("upsilon_operator: beta must be finite and > 0");
  }
  const HermitianOperator k(p.evolution.entries().adjoint() * p.h_final.entries() *
                                p.evolution.entries(),
                            1e-10);
  const SpectralDecomposition sh = eigh(p.h_initial);
  const SpectralDecomposition sk = eigh(k);
  // Shift both exponents nonpositive so the product stays bounded.
  const double h_top = sh.values.back();
  const double k_bot = sk.values.front();

  Matrix half = Matrix::Zero(p.dim(), p.dim());
  for (int c = 0; c < sh.clusters(); ++c) {
    half += std::exp(0.5 * beta * (sh.values[c] - h_top)) * sh.projectors[c];
  }
  Matrix mid = Matrix::Zero(p.dim(), p.dim());
  for (int c = 0; c < sk.clusters(); ++c) {
    mid += std::exp(-beta * (sk.values[c] - k_bot)) * sk.projectors[c];
  }
  const Matrix prod = half * mid * half;
  const HermitianOperator sym(0.5 * (prod + prod.adjoint().eval()), 1e-8);
  // No clustering here: gaps in the product scale like beta times the gaps
  // of Upsilon, so premature merging would erase levels at small beta.
  const SpectralDecomposition sp = eigh(sym, 0.0);
  if (!(sp.values.front() > 0.0) || !std::isfinite(sp.values.back())) {
    std::ostringstream os;
    os << "upsilon_operator: symmetrized exponential product has nonpositive eigenvalue "
       << sp.values.front() << " at beta " << beta << " (spectral spread too large)";
    throw std::runtime_error(os.str());
  }
  Matrix ups = Matrix::Zero(p.dim(), p.dim());
  for (int c = 0; c < sp.clusters(); ++c) {
    ups += (-std::log(sp.values[c]) / beta) * sp.projectors[c];
  }
  ups += (k_bot - h_top) * Matrix::Identity(p.dim(), p.dim());
  return HermitianOperator(ups, 1e-8);
}

WorkScheme upsilon_scheme(const Process& p, const DensityMatrix& rho, const BetaHatConfig& cfg,
                          double cluster_tol) {
  const BetaHatResult fit = fit_inverse_temperature(rho, p.h_initial, cfg);
  if (fit.at_floor) return how_scheme(p, cluster_tol);  // beta -> 0 limit of Upsilon is Omega

  const SpectralDecomposition su = eigh(upsilon_operator(p, fit.beta_hat), cluster_tol);
  WorkScheme s;
  s.dim = p.dim();
  for (int i = 0; i < su.clusters(); ++i) {
    s.elements.push_back(su.projectors[i]);
    s.outcomes.push_back(su.values[i]);
    s.labels.push_back({i});
  }
  s.validate();
  return s;
}

double default_merge_tol(std::span<const double> outcomes) {
  if (outcomes.empty()) return 0.0;
  const auto [lo, hi] = std::minmax_element(outcomes.begin(), outcomes.end());
  return 1e-9 * (*hi - *lo);
}

WorkDistribution distribution(const WorkScheme& s, const DensityMatrix& rho, double merge_tol) {
  if (rho.dim() != s.dim) {
    throw std::invalid_argument("distribution: state/scheme dimension mismatch");
  }
  if (merge_tol < 0.0) merge_tol = default_merge_tol(s.outcomes);

  std::vector<std::pair<double, double>> wp(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double pr = (rho.entries() * s.elements[i]).trace().real();
    if (pr < -1e-9) {
      std::ostringstream os;
      os << "distribution: element " << i << " yields probability " << pr
         << " (scheme invalid for this state)";
      throw std::runtime_error(os.str());
    }
    wp[i] = {s.outcomes[i], std::max(0.0, pr)};
  }
  std::sort(wp.begin(), wp.end());

  WorkDistribution d;
  std::size_t i = 0;
  while (i < wp.size()) {
    // Single-linkage merge of outcomes within merge_tol of their neighbor.
    double mass = wp[i].second;
    double weighted = wp[i].first * wp[i].second;
    std::size_t j = i + 1;
    while (j < wp.size() && wp[j].first - wp[j - 1].first <= merge_tol) {
      mass += wp[j].second;
      weighted += wp[j].first * wp[j].second;
      ++j;
    }
    // Mass below 1e-15 is trace noise from POVM elements that vanish in
    // exact arithmetic; keeping it would litter the outcome list.
    if (mass > 1e-15) {
      d.outcomes.push_back(weighted / mass);
      d.probabilities.push_back(mass);
    }
    i = j;
  }

  const double total = std::accumulate(d.probabilities.begin(), d.probabilities.end(), 0.0);
  const double drift = std::abs(total - 1.0);
  if (drift >= 1e-9) {
    std::ostringstream os;
    os << "distribution: probabilities sum to " << total << " (drift " << drift << ")";
    throw std::runtime_error(os.str());
  }
  for (double& pr : d.probabilities) pr /= total;
  return d;
}

double exp_average(const WorkDistribution& d, double beta) {
  double out = 0.0;
  for (std::size_t i = 0; i < d.outcomes.size(); ++i) {
    if (d.probabilities[i] > 0.0) out += d.probabilities[i] * std::exp(-beta * d.outcomes[i]);
  }
  return out;
}

double mean(const WorkDistribution& d) {
  double out = 0.0;
  for (std::size_t i = 0; i < d.outcomes.size(); ++i) out += d.probabilities[i] * d.outcomes[i];
  return out;
}

double mass_near_zero(const WorkDistribution& d, double zero_tol) {
  double out = 0.0;
  for (std::size_t i = 0; i < d.outcomes.size(); ++i) {
    if (std::abs(d.outcomes[i]) <= zero_tol) out += d.probabilities[i];
  }
  return out;
}

}  // namespace qwork
