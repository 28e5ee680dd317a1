#include "qwork/gaussian.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qwork {

namespace {

double coth(double x) { return 1.0 / std::tanh(x); }

void require_positive_definite_2x2(const Matrix2& m, const char* what) {
  if (!(m(0, 0) > 0.0 && m.determinant() > 0.0)) {
    std::ostringstream os;
    os << what << ": matrix is not positive-definite (x_qq=" << m(0, 0)
       << ", det=" << m.determinant() << ")";
    throw std::domain_error(os.str());
  }
}

}  // namespace

GaussianProcess::GaussianProcess(Matrix2 s, Matrix2 lam, double beta_, double hbar_)
    : symplectic(s), lambda(lam), beta(beta_), hbar(hbar_) {
  if (std::abs(s.determinant() - 1.0) >= 1e-12) {
    throw std::invalid_argument("GaussianProcess: S must have unit determinant");
  }
  if (std::abs(lam(0, 1) - lam(1, 0)) >= 1e-12) {
    throw std::invalid_argument("GaussianProcess: Lambda must be symmetric");
  }
  if (!(lam(0, 0) > 0.0 && lam.determinant() > 0.0)) {
    throw std::invalid_argument("GaussianProcess: Lambda must be positive-definite");
  }
  if (!(beta > 0.0) || !(hbar > 0.0)) {
    throw std::invalid_argument("GaussianProcess: beta and hbar must be > 0");
  }
}

Matrix2 xi_matrix(const GaussianProcess& gp) {
  Matrix2 xi = gp.symplectic.transpose() * gp.lambda * gp.symplectic;
  xi -= 0.5 * Matrix2::Identity();
  return 0.5 * (xi + xi.transpose().eval());
}

double symplectic_eigenvalue(const Matrix2& xi) {
  if (!(xi(0, 0) > 0.0 && xi.determinant() > 0.0)) {
    std::ostringstream os;
    os << "symplectic_eigenvalue: Xi is not positive-definite (spectrum of the work operator "
          "not bounded from below); det="
       << xi.determinant();
    throw std::domain_error(os.str());
  }
  return std::sqrt(xi.determinant());
}

double z_work(double beta_hbar, double w) {
  const double arg = beta_hbar * w;
  if (!(arg >= 1e-12)) {
    std::ostringstream os;
    os << "z_work: beta*hbar*w = " << arg << " is below 1e-12; partition sum diverges";
    throw std::domain_error(os.str());
  }
  return 1.0 / (std::exp(arg) - std::exp(-arg));
}

CorrelationMatrices correlation_matrices(const GaussianProcess& gp) {
  const Matrix2 xi = xi_matrix(gp);
  const double w = symplectic_eigenvalue(xi);
  CorrelationMatrices out;
  out.work = gp.hbar * w * coth(gp.hbar * gp.beta * w) * xi.inverse();
  out.work = 0.5 * (out.work + out.work.transpose().eval());
  out.hamiltonian = gp.hbar * coth(0.5 * gp.beta * gp.hbar) * Matrix2::Identity();
  return out;
}

GaussianKernel kernel_coeffs(const Matrix2& x_mat, double hbar) {
  require_positive_definite_2x2(x_mat, "kernel_coeffs");
  const double xqq = x_mat(0, 0);
  const double xqp = x_mat(0, 1);
  const double det = x_mat.determinant();
  GaussianKernel k;
  const double common = (4.0 * xqq / hbar);
  k.a_coef = std::complex<double>((1.0 + det / (hbar * hbar)) / common, -xqp / (2.0 * xqq));
  k.b_coef = (1.0 - det / (hbar * hbar)) / common;
  k.c_coef = -std::log(std::sqrt(M_PI * xqq / hbar));
  return k;
}

double jarzynski_average_gaussian(const GaussianProcess& gp) {
  const Matrix2 xi = xi_matrix(gp);
  const double w = symplectic_eigenvalue(xi);
  const double zw = z_work(gp.beta * gp.hbar, w);
  const CorrelationMatrices x = correlation_matrices(gp);
  const GaussianKernel kw = kernel_coeffs(x.work, gp.hbar);
  const GaussianKernel kh = kernel_coeffs(x.hamiltonian, gp.hbar);

  const double cross = std::norm(std::conj(kw.a_coef) + kh.a_coef);
  const double radicand = cross - std::pow(kw.b_coef + kh.b_coef, 2.0);
  if (!(radicand > 0.0)) {
    std::ostringstream os;
    os << "jarzynski_average_gaussian: invalid kernel combination (radicand " << radicand << ")";
    throw std::runtime_error(os.str());
  }
  const double overlap = M_PI * std::exp(kw.c_coef + kh.c_coef) / std::sqrt(radicand);
  return zw * overlap;
}

double classical_partition_ratio(const GaussianProcess& gp) {
  // Phase-space Gaussians: Z = 2 pi / beta for (q^2+p^2)/2 and
  // Z' = pi / (beta sqrt(det M)) for z^T M z with M = S^T Lambda S.
  const Matrix2 m = gp.symplectic.transpose() * gp.lambda * gp.symplectic;
  if (!(m.determinant() > 0.0)) {
    throw std::domain_error("classical_partition_ratio: final form is not positive-definite");
  }
  return 0.5 / std::sqrt(m.determinant());
}

double quantum_partition_ratio(const GaussianProcess& gp) {
  const Matrix2 m = gp.symplectic.transpose() * gp.lambda * gp.symplectic;
  if (!(m.determinant() > 0.0)) {
    throw std::domain_error("quantum_partition_ratio: final form is not positive-definite");
  }
  const double bh = gp.beta * gp.hbar;
  return std::sinh(0.5 * bh) / std::sinh(bh * std::sqrt(m.determinant()));
}

int suggested_cutoff(const GaussianProcess& gp, int max_cutoff) {
  symplectic_eigenvalue(xi_matrix(gp));  // reject unbounded work operators
  // Geometric thermal tail of tau below 1e-10, with headroom for the
  // truncation-boundary corruption.
  const double needed = 1.0 + std::log(1e10) / (gp.beta * gp.hbar);
  const int n = static_cast<int>(std::ceil(1.25 * needed)) + 4;
  return n <= max_cutoff ? n : 0;
}

double fock_oracle(const GaussianProcess& gp, int cutoff) {
  if (cutoff < 4) throw std::invalid_argument("fock_oracle: cutoff must be >= 4");
  const Matrix2 xi = xi_matrix(gp);
  symplectic_eigenvalue(xi);  // validates boundedness from below

  // Cutoff adequacy from the exact spectrum of H: level n carries weight
  // e^{-beta hbar n} (1 - e^{-beta hbar}) in tau. Xi > 0 keeps e^{-beta
  // Omega} a contraction, so the thermal tail of tau bounds the truncation
  // error of the weighted trace; the top level must be unpopulated.
  const double bh = gp.beta * gp.hbar;
  const double top_tau = std::exp(-bh * (cutoff - 1)) * (1.0 - std::exp(-bh));
  if (top_tau >= 1e-10) {
    std::ostringstream os;
    os << "fock_oracle: cutoff " << cutoff << " insufficient; top-level occupation " << top_tau
       << " exceeds 1e-10";
    throw std::runtime_error(os.str());
  }

  using Mat = Eigen::MatrixXcd;
  const std::complex<double> im(0.0, 1.0);
  const int n = cutoff;
  Mat lower = Mat::Zero(n, n);
  for (int i = 0; i + 1 < n; ++i) lower(i, i + 1) = std::sqrt(static_cast<double>(i + 1));
  const Mat raise = lower.adjoint();
  const double root = std::sqrt(0.5 * gp.hbar);
  const Mat q = root * (lower + raise);
  const Mat p = im * root * (raise - lower);

  const Mat h = 0.5 * (q * q + p * p);
  const Mat omega =
      xi(0, 0) * q * q + xi(1, 1) * p * p + xi(0, 1) * (q * p + p * q);

  Eigen::SelfAdjointEigenSolver<Mat> eh(0.5 * (h + h.adjoint()));
  Eigen::SelfAdjointEigenSolver<Mat> ew(0.5 * (omega + omega.adjoint()));
  if (eh.info() != Eigen::Success || ew.info() != Eigen::Success) {
    throw std::runtime_error("fock_oracle: eigensolver failed");
  }

  const auto boltzmann = [&](const Eigen::SelfAdjointEigenSolver<Mat>& es, double beta) {
    const double ground = es.eigenvalues().minCoeff();
    Eigen::VectorXd weights(n);
    for (int i = 0; i < n; ++i) weights(i) = std::exp(-beta * (es.eigenvalues()(i) - ground));
    return Mat(es.eigenvectors() * weights.asDiagonal() * es.eigenvectors().adjoint());
  };
  const Mat exp_h = boltzmann(eh, gp.beta);  // e^{-beta (H - E0)}
  const Mat exp_w = boltzmann(ew, gp.beta);  // e^{-beta (Omega - W0)}
  const double zh = exp_h.trace().real();

  // Shifts cancel between numerator and denominator except for Omega's
  // ground energy, which is restored explicitly.
  const double w0 = ew.eigenvalues().minCoeff();
  return (exp_h * exp_w).trace().real() / zh * std::exp(-gp.beta * w0);
}

}  // namespace qwork
