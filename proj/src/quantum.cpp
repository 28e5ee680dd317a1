#include "qwork/quantum.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

namespace qwork {

DensityMatrix::DensityMatrix(Matrix entries, double herm_tol, double trace_tol, double psd_tol) {
  HermitianOperator herm(std::move(entries), herm_tol);  // validates + symmetrizes
  const double tr = herm.entries().trace().real();
  if (!(std::abs(tr - 1.0) <= trace_tol)) {
    std::ostringstream os;
    os << "DensityMatrix: trace is " << tr << ", must be 1 within " << trace_tol;
    throw std::invalid_argument(os.str());
  }
  Eigen::SelfAdjointEigenSolver<Matrix> solver(herm.entries(), Eigen::EigenvaluesOnly);
  const double min_eig = solver.eigenvalues().minCoeff();
  if (!(min_eig >= -psd_tol)) {
    std::ostringstream os;
    os << "DensityMatrix: minimum eigenvalue " << min_eig << " below -" << psd_tol;
    throw std::invalid_argument(os.str());
  }
  entries_ = herm.entries();
}

Process::Process(HermitianOperator h, HermitianOperator hp, UnitaryOperator u)
    : h_initial(std::move(h)), h_final(std::move(hp)), evolution(std::move(u)) {
  if (h_initial.dim() != h_final.dim() || h_initial.dim() != evolution.dim()) {
    throw std::invalid_argument("Process: H, H', and U must share one dimension");
  }
}

PiProcess::PiProcess(HermitianOperator h, HermitianOperator gen, double x)
    : h_initial(std::move(h)), generator(std::move(gen)), strength(x) {
  if (h_initial.dim() != generator.dim()) {
    throw std::invalid_argument("PiProcess: H and h must share one dimension");
  }
  if (!std::isfinite(x)) throw std::invalid_argument("PiProcess: strength must be finite");
}

GibbsState gibbs(const SpectralDecomposition& h_spec, double beta) {
  if (!(beta >= 0.0) || !std::isfinite(beta)) {
    throw std::invalid_argument("gibbs: beta must be finite and >= 0");
  }
  const int d = h_spec.dim;
  // Shift by the ground energy so every Boltzmann weight is <= 1.
  const double e0 = h_spec.values.front();
  double z_shifted = 0.0;
  Matrix rho = Matrix::Zero(d, d);
  for (int c = 0; c < h_spec.clusters(); ++c) {
    const double w = std::exp(-beta * (h_spec.values[c] - e0));
    z_shifted += w * h_spec.degeneracies[c];
    rho += w * h_spec.projectors[c];
  }
  rho /= z_shifted;
  const double log_z = std::log(z_shifted) - beta * e0;
  const double free_energy =
      beta > 0.0 ? -log_z / beta : -std::numeric_limits<double>::infinity();
  return GibbsState{beta, DensityMatrix(rho), log_z, free_energy};
}

GibbsState gibbs(const HermitianOperator& h, double beta) { return gibbs(eigh(h), beta); }

double log_partition(const HermitianOperator& h, double beta) {
  return gibbs(h, beta).log_partition;
}

HermitianOperator how_operator(const Process& p) {
  const Matrix omega = p.evolution.entries().adjoint() * p.h_final.entries() *
                           p.evolution.entries() -
                       p.h_initial.entries();
  return HermitianOperator(omega, 1e-10);
}

double average_work_unmeasured(const Process& p, const DensityMatrix& rho) {
  if (rho.dim() != p.dim()) {
    throw std::invalid_argument("average_work_unmeasured: state/process dimension mismatch");
  }
  return (rho.entries() * how_operator(p).entries()).trace().real();
}

double delta_free_energy(const HermitianOperator& h, const HermitianOperator& hp, double beta) {
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw std::invalid_argument("delta_free_energy: beta must be finite and > 0");
  }
  return -(log_partition(hp, beta) - log_partition(h, beta)) / beta;
}

Process pi_to_process(const PiProcess& pp) {
  return Process(pp.h_initial, pp.h_initial, evolution_from_generator(pp.generator, pp.strength));
}

HermitianOperator omega_commutator(const PiProcess& pp) {
  const Matrix w = Complex(0.0, 1.0) * commutator(pp.generator.entries(), pp.h_initial.entries());
  return HermitianOperator(w, 1e-10);
}

double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) {
    throw std::invalid_argument("relative_entropy: dimension mismatch");
  }
  const SpectralDecomposition sig = eigh(HermitianOperator(sigma.entries()));
  if (!(sig.values.front() > 0.0)) {
    std::ostringstream os;
    os << "relative_entropy: sigma is singular (minimum eigenvalue " << sig.values.front() << ")";
    throw std::domain_error(os.str());
  }
  const SpectralDecomposition rh = eigh(HermitianOperator(rho.entries()));
  double s = 0.0;
  for (int c = 0; c < rh.clusters(); ++c) {
    const double lam = rh.values[c];
    if (lam > 0.0) s += rh.degeneracies[c] * lam * std::log(lam);
  }
  for (int c = 0; c < sig.clusters(); ++c) {
    s -= std::log(sig.values[c]) * (rho.entries() * sig.projectors[c]).trace().real();
  }
  return s;
}

DensityMatrix maximally_mixed(int dim) {
  return DensityMatrix(Matrix::Identity(dim, dim) / static_cast<double>(dim));
}

DensityMatrix sample_density(int dim, std::uint64_t seed) {
  if (dim < 2) throw std::invalid_argument("sample_density: dim must be >= 2");
  std::mt19937_64 rng(mix_seed(seed, 0x52484full));
  std::normal_distribution<double> n01(0.0, 1.0);
  Matrix w(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) w(i, j) = Complex(n01(rng), n01(rng));
  Matrix rho = w * w.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix(rho);
}

}  // namespace qwork
