#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qwork/quantum.hpp"
#include "test_helpers.hpp"

using namespace qwork;
namespace qt = qwork::testing;

TEST_CASE("density matrix invariants") {
  CHECK_NOTHROW(DensityMatrix{qt::diag2(0.6, 0.4)});
  CHECK_THROWS_AS(DensityMatrix{qt::diag2(0.6, 0.6)}, std::invalid_argument);   // trace
  CHECK_THROWS_AS(DensityMatrix{qt::diag2(1.2, -0.2)}, std::invalid_argument);  // negativity
}

TEST_CASE("gibbs states") {
  const HermitianOperator h(qt::diag2(0.0, 1.0));

  SUBCASE("infinite temperature") {
    const GibbsState g = gibbs(h, 0.0);
    CHECK(max_abs(Matrix(g.state.entries() - 0.5 * identity(2))) < 1e-14);
    CHECK(g.log_partition == doctest::Approx(std::log(2.0)));
  }
  SUBCASE("beta = ln 2 populations") {
    const GibbsState g = gibbs(h, std::log(2.0));
    CHECK(g.state.entries()(0, 0).real() == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK(g.state.entries()(1, 1).real() == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  }
  SUBCASE("log partition function") {
    const GibbsState g = gibbs(h, 1.0);
    CHECK(g.log_partition == doctest::Approx(std::log(1.0 + std::exp(-1.0))).epsilon(1e-14));
    CHECK(g.free_energy == doctest::Approx(-std::log(1.0 + std::exp(-1.0))).epsilon(1e-12));
  }
  SUBCASE("negative or non-finite beta rejected") {
    CHECK_THROWS_AS(gibbs(h, -0.5), std::invalid_argument);
    CHECK_THROWS_AS(gibbs(h, std::nan("")), std::invalid_argument);
  }
  SUBCASE("thermal state commutes with H and reproduces e^{-bH}/Z") {
    for (std::uint64_t seed : {3u, 4u}) {
      const HermitianOperator hh = sample_gue(4, seed);
      const GibbsState g = gibbs(hh, 1.3);
      CHECK(max_abs(commutator(g.state.entries(), hh.entries())) < 1e-10);
      const Matrix direct = qt::expm_reference(-1.3 * hh.entries());
      CHECK(max_abs(Matrix(g.state.entries() - direct / direct.trace().real())) < 1e-10);
      CHECK(g.log_partition == doctest::Approx(std::log(direct.trace().real())).epsilon(1e-10));
    }
  }
}

TEST_CASE("heisenberg operator of work") {
  const HermitianOperator h(qt::diag2(0.0, 1.0));

  SUBCASE("untouched system") {
    const Process p(h, h, UnitaryOperator(identity(2)));
    CHECK(max_abs(how_operator(p).entries()) < 1e-14);
  }
  SUBCASE("hadamard conjugation") {
    const Process p(h, h, UnitaryOperator(qt::hadamard()));
    Matrix expect(2, 2);
    expect << 0.5, -0.5, -0.5, -0.5;
    CHECK(max_abs(Matrix(how_operator(p).entries() - expect)) < 1e-14);
  }
  SUBCASE("trace identity on random processes") {
    for (std::uint64_t seed : {8u, 9u}) {
      const Process p(sample_gue(3, mix_seed(seed, 1)), sample_gue(3, mix_seed(seed, 2)),
                      sample_haar(3, mix_seed(seed, 3)));
      const double lhs = how_operator(p).entries().trace().real();
      const double rhs = (p.evolution.entries().adjoint() * p.h_final.entries() *
                          p.evolution.entries())
                             .trace()
                             .real() -
                         p.h_initial.entries().trace().real();
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
  }
}

TEST_CASE("unmeasured average work") {
  const HermitianOperator h(qt::diag2(0.0, 1.0));
  SUBCASE("trivial process gives zero for every state") {
    const Process p(h, h, UnitaryOperator(identity(2)));
    CHECK(average_work_unmeasured(p, DensityMatrix(qt::diag2(0.3, 0.7))) ==
          doctest::Approx(0.0));
  }
  SUBCASE("spin flip lifts the ground state") {
    const Process p(h, h, UnitaryOperator(qt::pauli_x()));
    CHECK(average_work_unmeasured(p, DensityMatrix(qt::diag2(1.0, 0.0))) ==
          doctest::Approx(1.0));
  }
  SUBCASE("equals final minus initial energy on random instances") {
    for (std::uint64_t seed : {15u, 16u}) {
      const Process p(sample_gue(4, mix_seed(seed, 1)), sample_gue(4, mix_seed(seed, 2)),
                      sample_haar(4, mix_seed(seed, 3)));
      const DensityMatrix rho = sample_density(4, seed);
      const Matrix evolved =
          p.evolution.entries() * rho.entries() * p.evolution.entries().adjoint();
      const double direct = (evolved * p.h_final.entries()).trace().real() -
                            (rho.entries() * p.h_initial.entries()).trace().real();
      CHECK(average_work_unmeasured(p, rho) == doctest::Approx(direct).epsilon(1e-10));
    }
  }
}

TEST_CASE("free energy differences") {
  const HermitianOperator h(qt::diag2(0.0, 1.0));
  SUBCASE("same Hamiltonian") { CHECK(delta_free_energy(h, h, 1.0) == doctest::Approx(0.0)); }
  SUBCASE("direct partition functions") {
    const HermitianOperator hp(qt::diag2(0.0, 2.0));
    const double expect = -std::log((1.0 + std::exp(-2.0)) / (1.0 + std::exp(-1.0)));
    CHECK(delta_free_energy(h, hp, 1.0) == doctest::Approx(expect).epsilon(1e-12));
  }
  SUBCASE("global shift covariance") {
    const HermitianOperator hp(qt::diag2(0.4, 1.1));
    const double base = delta_free_energy(h, hp, 2.0);
    const HermitianOperator shifted(hp.entries() + 0.7 * identity(2));
    CHECK(delta_free_energy(h, shifted, 2.0) == doctest::Approx(base + 0.7).epsilon(1e-12));
  }
  CHECK_THROWS_AS(delta_free_energy(h, h, 0.0), std::invalid_argument);
}

TEST_CASE("cyclic process family") {
  const HermitianOperator h(qt::diag2(0.0, 1.0));
  const HermitianOperator gen(qt::pauli_x());

  SUBCASE("zero strength is the identity") {
    const Process p = pi_to_process(PiProcess(h, gen, 0.0));
    CHECK(max_abs(Matrix(p.evolution.entries() - identity(2))) < 1e-14);
    CHECK(max_abs(Matrix(p.h_final.entries() - h.entries())) == 0.0);
  }
  SUBCASE("commuting generator gives zero omega") {
    const HermitianOperator diag_gen(qt::diag2(0.3, -0.2));
    CHECK(max_abs(omega_commutator(PiProcess(h, diag_gen, 1.0)).entries()) < 1e-14);
  }
  SUBCASE("sigma_x generator") {
    const Matrix w = omega_commutator(PiProcess(h, gen, 1.0)).entries();
    CHECK(std::abs(w(0, 0)) < 1e-14);
    CHECK(std::abs(w(1, 1)) < 1e-14);
    CHECK(std::abs(w(0, 1)) == doctest::Approx(1.0));
  }
  SUBCASE("small-x expansion of the average work") {
    // <W>(x) = x <omega> + x^2/2 <i[h, omega]> + O(x^3) on any state, with a
    // cubic constant that stays of one magnitude across unit-norm instances.
    for (std::uint64_t seed : {51u, 52u, 53u, 54u}) {
      const HermitianOperator raw_h = sample_gue(3, mix_seed(seed, 1));
      const HermitianOperator raw_g = sample_gue(3, mix_seed(seed, 2));
      const HermitianOperator hh(raw_h.entries() / operator_norm(raw_h));
      const HermitianOperator gg(raw_g.entries() / operator_norm(raw_g));
      const DensityMatrix rho = sample_density(3, mix_seed(seed, 3));
      const Matrix omega = omega_commutator(PiProcess(hh, gg, 0.0)).entries();
      const Matrix h_omega = Complex(0, 1) * commutator(gg.entries(), omega);
      const double c1 = (rho.entries() * omega).trace().real();
      const double c2 = 0.5 * (rho.entries() * h_omega).trace().real();
      double cubic_constant = 0.0;
      for (double x : {1e-2, 1e-3}) {
        const Process p = pi_to_process(PiProcess(hh, gg, x));
        const double mean_work = average_work_unmeasured(p, rho);
        const double err = std::abs(mean_work - x * c1 - x * x * c2);
        cubic_constant = std::max(cubic_constant, err / (x * x * x));
      }
      CHECK(cubic_constant < 5.0);
    }
  }
}

TEST_CASE("relative entropy") {
  SUBCASE("identical states") {
    const DensityMatrix rho = sample_density(3, 61);
    CHECK(relative_entropy(rho, rho) == doctest::Approx(0.0).epsilon(1e-10));
  }
  SUBCASE("pure state against the maximally mixed state") {
    const DensityMatrix pure(qt::diag2(1.0, 0.0));
    CHECK(relative_entropy(pure, maximally_mixed(2)) ==
          doctest::Approx(std::log(2.0)).epsilon(1e-12));
  }
  SUBCASE("klein inequality on random pairs") {
    for (std::uint64_t seed = 70; seed < 80; ++seed) {
      const DensityMatrix rho = sample_density(3, mix_seed(seed, 1));
      const DensityMatrix sigma = sample_density(3, mix_seed(seed, 2));
      CHECK(relative_entropy(rho, sigma) >= -1e-10);
    }
  }
  SUBCASE("singular sigma rejected") {
    const DensityMatrix rho = sample_density(2, 81);
    CHECK_THROWS_AS(relative_entropy(rho, DensityMatrix(qt::diag2(1.0, 0.0))),
                    std::domain_error);
  }
}

TEST_CASE("how_operator is affine in the final Hamiltonian") {
  // Omega(H1' + H2') = Omega(H1') + Omega(H2') + H
  for (std::uint64_t seed : {91u, 92u}) {
    const HermitianOperator h = sample_gue(3, mix_seed(seed, 1));
    const HermitianOperator h1 = sample_gue(3, mix_seed(seed, 2));
    const HermitianOperator h2 = sample_gue(3, mix_seed(seed, 3));
    const UnitaryOperator u = sample_haar(3, mix_seed(seed, 4));
    const Matrix lhs =
        how_operator(Process(h, HermitianOperator(h1.entries() + h2.entries()), u)).entries();
    const Matrix rhs = how_operator(Process(h, h1, u)).entries() +
                       how_operator(Process(h, h2, u)).entries() + h.entries();
    CHECK(max_abs(Matrix(lhs - rhs)) < 1e-10);
  }
}
