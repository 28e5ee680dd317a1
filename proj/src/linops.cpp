#include "qwork/linops.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace qwork {

double max_abs(const Matrix& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

Matrix identity(int dim) { return Matrix::Identity(dim, dim); }

Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

namespace {

void require_square(const Matrix& m, const char* what) {
  if (m.rows() < 1 || m.rows() != m.cols()) {
    std::ostringstream os;
    os << what << ": expected a nonempty square matrix, got " << m.rows() << "x" << m.cols();
    throw std::invalid_argument(os.str());
  }
}

}  // namespace

HermitianOperator::HermitianOperator(Matrix entries, double herm_tol) {
  require_square(entries, "HermitianOperator");
  const double dev = max_abs(entries - entries.adjoint().eval());
  if (!(dev <= herm_tol)) {
    std::ostringstream os;
    os << "HermitianOperator: matrix deviates from its conjugate transpose by " << dev
       << " (tolerance " << herm_tol << ")";
    throw std::invalid_argument(os.str());
  }
  entries_ = 0.5 * (entries + entries.adjoint().eval());
}

UnitaryOperator::UnitaryOperator(Matrix entries, double unit_tol) {
  require_square(entries, "UnitaryOperator");
  const Matrix gram = entries.adjoint() * entries;
  const double dev = max_abs(gram - Matrix::Identity(entries.rows(), entries.cols()));
  if (!(dev <= unit_tol)) {
    std::ostringstream os;
    os << "UnitaryOperator: U†U deviates from identity by " << dev << " (tolerance " << unit_tol
       << ")";
    throw std::invalid_argument(os.str());
  }
  entries_ = std::move(entries);
}

Matrix SpectralDecomposition::reconstruct() const {
  Matrix out = Matrix::Zero(dim, dim);
  for (std::size_t a = 0; a < values.size(); ++a) out += values[a] * projectors[a];
  return out;
}

SpectralDecomposition eigh(const HermitianOperator& a, double cluster_tol) {
  if (cluster_tol < 0) throw std::invalid_argument("eigh: cluster_tol must be >= 0");
  const int d = a.dim();
  Eigen::SelfAdjointEigenSolver<Matrix> solver(a.entries());
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigh: eigensolver failed");

  SpectralDecomposition out;
  out.dim = d;
  out.raw_values.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + d);
  out.raw_vectors = solver.eigenvectors();

  // Single-linkage clustering on the ascending eigenvalue list.
  int start = 0;
  for (int i = 1; i <= d; ++i) {
    if (i == d || out.raw_values[i] - out.raw_values[i - 1] > cluster_tol) {
      const int g = i - start;
      double mean = 0.0;
      for (int j = start; j < i; ++j) mean += out.raw_values[j];
      mean /= g;
      const Matrix block = out.raw_vectors.middleCols(start, g);
      Matrix proj = block * block.adjoint();
      out.values.push_back(mean);
      out.projectors.push_back(0.5 * (proj + proj.adjoint().eval()));
      out.degeneracies.push_back(g);
      start = i;
    }
  }
  return out;
}

HermitianOperator matfun(const HermitianOperator& a, const std::function<double(double)>& f,
                         const std::string& fname, double cluster_tol) {
  const SpectralDecomposition sd = eigh(a, cluster_tol);
  Matrix out = Matrix::Zero(a.dim(), a.dim());
  for (int c = 0; c < sd.clusters(); ++c) {
    const double fe = f(sd.values[c]);
    if (!std::isfinite(fe)) {
      std::ostringstream os;
      os << "matfun: " << fname << " is not finite at eigenvalue " << sd.values[c];
      throw std::domain_error(os.str());
    }
    out += fe * sd.projectors[c];
  }
  return HermitianOperator(out, 1e-9);
}

double operator_norm(const HermitianOperator& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(a.entries(), Eigen::EigenvaluesOnly);
  return solver.eigenvalues().cwiseAbs().maxCoeff();
}

double operator_norm(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(a);
  return svd.singularValues()(0);
}

UnitaryOperator evolution_from_generator(const HermitianOperator& h, double x) {
  const SpectralDecomposition sd = eigh(h);
  Matrix u = Matrix::Zero(h.dim(), h.dim());
  for (int c = 0; c < sd.clusters(); ++c) {
    u += std::exp(Complex(0.0, -x * sd.values[c])) * sd.projectors[c];
  }
  return UnitaryOperator(u);
}

HermitianOperator sample_gue(int dim, std::uint64_t seed) {
  if (dim < 2) throw std::invalid_argument("sample_gue: dim must be >= 2");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> n01(0.0, 1.0);
  Matrix g(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      const double re = n01(rng);
      const double im = n01(rng);
      g(i, j) = Complex(re, im);
    }
  const Matrix gue = 0.5 * (g + g.adjoint().eval());
  return HermitianOperator(gue);
}

UnitaryOperator sample_haar(int dim, std::uint64_t seed) {
  if (dim < 2) throw std::invalid_argument("sample_haar: dim must be >= 2");
  std::mt19937_64 rng(mix_seed(seed, 0x48414152ull));  // distinct stream from sample_gue
  std::normal_distribution<double> n01(0.0, 1.0);
  Matrix z(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) z(i, j) = Complex(n01(rng), n01(rng));

  Eigen::HouseholderQR<Matrix> qr(z);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  // Fix the gauge: fold the phases of R's diagonal into Q so the map from
  // Ginibre to unitaries is measure-preserving.
  for (int j = 0; j < dim; ++j) {
    const Complex rjj = r(j, j);
    const double mag = std::abs(rjj);
    const Complex phase = mag > 0 ? rjj / mag : Complex(1.0, 0.0);
    q.col(j) *= phase;
  }
  return UnitaryOperator(q);
}

std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  auto splitmix = [](std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
  };
  return splitmix(splitmix(splitmix(a) ^ b) ^ c);
}

}  // namespace qwork
