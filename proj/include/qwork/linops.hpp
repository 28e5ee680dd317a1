#pragma once

// Dense complex linear-algebra kernel: Hermitian eigendecomposition with
// degeneracy clustering, matrix functions, norms, and seeded random sampling.
// All matrices are small (dim <= ~64) and dense; every routine is a pure
// function of its arguments.

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qwork {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;

namespace tol {
inline constexpr double herm = 1e-12;         // Hermiticity, max-abs entrywise
inline constexpr double unit = 1e-10;         // unitarity, max-abs entrywise
inline constexpr double proj = 1e-10;         // projector idempotence/orthogonality
inline constexpr double reconstruct = 1e-9;   // spectral reconstruction, max-abs
inline constexpr double cluster = 1e-8;       // default eigenvalue clustering
inline constexpr double povm = 1e-9;          // POVM completeness, operator norm
inline constexpr double psd = 1e-10;          // tolerated negative part of PSD spectra
}  // namespace tol

double max_abs(const Matrix& a);
Matrix identity(int dim);
Matrix commutator(const Matrix& a, const Matrix& b);

// Hermitian matrix with validated symmetry; entries are stored exactly
// symmetrized, (M + M†)/2.
class HermitianOperator {
 public:
  explicit HermitianOperator(Matrix entries, double herm_tol = tol::herm);

  int dim() const { return static_cast<int>(entries_.rows()); }
  const Matrix& entries() const { return entries_; }

 private:
  Matrix entries_;
};

class UnitaryOperator {
 public:
  explicit UnitaryOperator(Matrix entries, double unit_tol = tol::unit);

  int dim() const { return static_cast<int>(entries_.rows()); }
  const Matrix& entries() const { return entries_; }

 private:
  Matrix entries_;
};

// Distinct (clustered) eigenvalues with orthogonal projectors and degeneracies.
struct SpectralDecomposition {
  std::vector<double> values;       // strictly increasing, one per cluster
  std::vector<Matrix> projectors;   // Hermitian, idempotent, mutually orthogonal
  std::vector<int> degeneracies;    // tr(projector), rounded; sums to dim
  int dim = 0;

  int clusters() const { return static_cast<int>(values.size()); }
  Matrix reconstruct() const;
  // Raw (unclustered) eigenvalues in ascending order, repeated by degeneracy.
  std::vector<double> raw_values;
  // Unitary of raw eigenvectors, column i belonging to raw_values[i].
  Matrix raw_vectors;
};

// Eigendecomposition of a Hermitian operator. Eigenvalues closer than
// cluster_tol (single linkage on the sorted list) are merged into one level
// with a summed projector.
SpectralDecomposition eigh(const HermitianOperator& a, double cluster_tol = tol::cluster);

// f applied to the spectrum: sum of f(E_a) P_a. Throws std::domain_error
// naming the offending eigenvalue when f is not finite there.
HermitianOperator matfun(const HermitianOperator& a, const std::function<double(double)>& f,
                         const std::string& fname = "f", double cluster_tol = tol::cluster);

// Largest eigenvalue magnitude (standard operator norm for Hermitian input).
double operator_norm(const HermitianOperator& a);
double operator_norm(const Matrix& a);  // general matrices, via singular values

// exp(-i x h) for Hermitian h.
UnitaryOperator evolution_from_generator(const HermitianOperator& h, double x);

// Seeded sampling; deterministic for a fixed seed on a fixed platform.
HermitianOperator sample_gue(int dim, std::uint64_t seed);
UnitaryOperator sample_haar(int dim, std::uint64_t seed);

// splitmix64-style mixing for deriving per-instance RNG streams.
std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b, std::uint64_t c = 0x9e3779b97f4a7c15ull);

}  // namespace qwork
