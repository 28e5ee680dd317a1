#pragma once

// States, Gibbs ensembles, processes, the Heisenberg operator of work, and
// thermodynamic potentials.

#include "qwork/linops.hpp"

namespace qwork {

class DensityMatrix {
 public:
  explicit DensityMatrix(Matrix entries, double herm_tol = tol::herm, double trace_tol = 1e-10,
                         double psd_tol = tol::psd);

  int dim() const { return static_cast<int>(entries_.rows()); }
  const Matrix& entries() const { return entries_; }

 private:
  Matrix entries_;
};

// Thermal state exp(-beta H)/Z together with ln Z and the free energy.
// beta = 0 gives the maximally mixed state; its free energy is -inf.
struct GibbsState {
  double beta = 0.0;
  DensityMatrix state;
  double log_partition = 0.0;
  double free_energy = 0.0;
};

struct Process {
  HermitianOperator h_initial;
  HermitianOperator h_final;
  UnitaryOperator evolution;

  Process(HermitianOperator h, HermitianOperator hp, UnitaryOperator u);
  int dim() const { return h_initial.dim(); }
};

// Cyclic process: final Hamiltonian equals the initial one and the evolution
// is exp(-i x h) for a Hermitian generator h and real strength x.
struct PiProcess {
  HermitianOperator h_initial;
  HermitianOperator generator;
  double strength = 0.0;

  PiProcess(HermitianOperator h, HermitianOperator gen, double x);
  int dim() const { return h_initial.dim(); }
};

GibbsState gibbs(const HermitianOperator& h, double beta);
// Fast path when the spectral decomposition of h is already available.
GibbsState gibbs(const SpectralDecomposition& h_spec, double beta);

double log_partition(const HermitianOperator& h, double beta);

// Heisenberg operator of work, U† H' U - H.
HermitianOperator how_operator(const Process& p);

// tr(rho Omega): the change of average energy of the unmeasured system.
double average_work_unmeasured(const Process& p, const DensityMatrix& rho);

double delta_free_energy(const HermitianOperator& h, const HermitianOperator& hp, double beta);

Process pi_to_process(const PiProcess& pp);
// i [h, H]; Hermitian with vanishing diagonal blocks in H's eigenbasis.
HermitianOperator omega_commutator(const PiProcess& pp);

// tr rho (ln rho - ln sigma) with the 0 ln 0 = 0 convention on rho's null
// space; sigma must be positive-definite.
double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma);

DensityMatrix maximally_mixed(int dim);
// Full-rank random state W W† / tr(W W†), W a seeded Ginibre matrix. Generic
// instances carry coherences in any fixed eigenbasis.
DensityMatrix sample_density(int dim, std::uint64_t seed);

}  // namespace qwork
