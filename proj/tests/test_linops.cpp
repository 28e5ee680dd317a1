#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "qwork/linops.hpp"
#include "test_helpers.hpp"

using namespace qwork;
namespace qt = qwork::testing;

TEST_CASE("hermitian operator validates and symmetrizes") {
  Matrix ok(2, 2);
  ok << 1.0, Complex(0, 1), Complex(0, -1), 2.0;
  CHECK_NOTHROW(HermitianOperator{ok});

  Matrix bad(2, 2);
  bad << 1.0, Complex(0, 1), Complex(0, 1), 2.0;
  CHECK_THROWS_AS(HermitianOperator{bad}, std::invalid_argument);
}

TEST_CASE("unitary operator validates U†U = 1") {
  CHECK_NOTHROW(UnitaryOperator{qt::hadamard()});
  Matrix bad = qt::hadamard();
  bad(0, 0) += 1e-3;
  CHECK_THROWS_AS(UnitaryOperator{bad}, std::invalid_argument);
}

TEST_CASE("eigh on diagonal inputs") {
  SUBCASE("distinct levels") {
    const auto sd = eigh(HermitianOperator(qt::diag2(0.0, 1.0)), 1e-8);
    REQUIRE(sd.clusters() == 2);
    CHECK(sd.values[0] == doctest::Approx(0.0));
    CHECK(sd.values[1] == doctest::Approx(1.0));
    CHECK(sd.degeneracies == std::vector<int>{1, 1});
    CHECK(max_abs(Matrix(sd.projectors[0] - qt::diag2(1.0, 0.0))) < 1e-12);
    CHECK(max_abs(Matrix(sd.projectors[1] - qt::diag2(0.0, 1.0))) < 1e-12);
  }
  SUBCASE("explicit degeneracy") {
    const auto sd = eigh(HermitianOperator(qt::diag3(0.0, 0.0, 1.0)), 1e-8);
    REQUIRE(sd.clusters() == 2);
    CHECK(sd.values[0] == doctest::Approx(0.0));
    CHECK(sd.values[1] == doctest::Approx(1.0));
    CHECK(sd.degeneracies == std::vector<int>{2, 1});
  }
}

TEST_CASE("eigh reconstruction and projector algebra on random instances") {
  for (int dim : {2, 3, 4, 8, 16}) {
    for (std::uint64_t seed : {11u, 12u, 13u}) {
      const HermitianOperator a = sample_gue(dim, mix_seed(seed, dim));
      const auto sd = eigh(a);
      CHECK(max_abs(Matrix(sd.reconstruct() - a.entries())) < 1e-9);

      Matrix psum = Matrix::Zero(dim, dim);
      for (int c = 0; c < sd.clusters(); ++c) {
        const Matrix& p = sd.projectors[c];
        CHECK(max_abs(Matrix(p * p - p)) < 1e-10);  // idempotent
        for (int b = 0; b < c; ++b) {
          CHECK(operator_norm(Matrix(p * sd.projectors[b])) < 1e-10);  // orthogonal
        }
        psum += p;
      }
      CHECK(max_abs(Matrix(psum - identity(dim))) < 1e-10);

      int degsum = 0;
      for (std::size_t c = 0; c < sd.values.size(); ++c) {
        degsum += sd.degeneracies[c];
        if (c > 0) CHECK(sd.values[c] > sd.values[c - 1]);
      }
      CHECK(degsum == dim);
    }
  }
}

TEST_CASE("matfun") {
  SUBCASE("exp of a diagonal matrix") {
    const auto e = matfun(HermitianOperator(qt::diag2(0.0, std::log(2.0))),
                          [](double x) { return std::exp(x); }, "exp");
    CHECK(max_abs(Matrix(e.entries() - qt::diag2(1.0, 2.0))) < 1e-12);
  }
  SUBCASE("log inverts exp for small random matrices") {
    for (std::uint64_t seed : {21u, 22u, 23u}) {
      const HermitianOperator raw = sample_gue(3, seed);
      const HermitianOperator a(raw.entries() / operator_norm(raw));  // spectrum in [-1, 1]
      const auto ea = matfun(a, [](double x) { return std::exp(x); }, "exp");
      const auto back = matfun(ea, [](double x) { return std::log(x); }, "ln");
      CHECK(max_abs(Matrix(back.entries() - a.entries())) < 1e-9);
    }
  }
  SUBCASE("sqrt of an indefinite matrix is a domain error") {
    CHECK_THROWS_AS(matfun(HermitianOperator(qt::diag2(-0.1, 1.0)),
                           [](double x) { return std::sqrt(x); }, "sqrt"),
                    std::domain_error);
  }
  SUBCASE("exp agrees with a scaling-and-squaring reference") {
    for (int dim : {2, 4, 6}) {
      for (std::uint64_t seed : {31u, 32u}) {
        const HermitianOperator raw = sample_gue(dim, seed);
        const HermitianOperator a(5.0 * raw.entries() / operator_norm(raw));
        const auto via_spec = matfun(a, [](double x) { return std::exp(x); }, "exp");
        const Matrix ref = qt::expm_reference(a.entries());
        CHECK(max_abs(Matrix(via_spec.entries() - ref)) / max_abs(ref) < 1e-8);
      }
    }
  }
}

TEST_CASE("operator norm") {
  CHECK(operator_norm(HermitianOperator(qt::diag2(0.5, -2.0))) == doctest::Approx(2.0));
  CHECK(operator_norm(HermitianOperator(Matrix::Zero(3, 3))) == doctest::Approx(0.0));
  // || rho - 1/d || for rho = diag(0.6, 0.4)
  const Matrix dev = qt::diag2(0.6, 0.4) - 0.5 * identity(2);
  CHECK(operator_norm(HermitianOperator(dev)) == doctest::Approx(0.1));
}

TEST_CASE("seeded sampling") {
  SUBCASE("gue determinism") {
    const auto a = sample_gue(3, 77);
    const auto b = sample_gue(3, 77);
    CHECK(max_abs(Matrix(a.entries() - b.entries())) == 0.0);
    const auto c = sample_gue(3, 78);
    CHECK(max_abs(Matrix(a.entries() - c.entries())) > 1e-3);
  }
  SUBCASE("haar unitarity and determinant") {
    const auto u = sample_haar(2, 5);
    CHECK(max_abs(Matrix(u.entries().adjoint() * u.entries() - identity(2))) < 1e-12);
    const auto u4 = sample_haar(4, 9);
    CHECK(std::abs(std::abs(u4.entries().determinant()) - 1.0) < 1e-10);
  }
  SUBCASE("evolution from generator is unitary and x = 0 is identity") {
    const HermitianOperator h = sample_gue(3, 41);
    CHECK(max_abs(Matrix(evolution_from_generator(h, 0.0).entries() - identity(3))) < 1e-14);
    const auto u = evolution_from_generator(h, 0.7);
    CHECK(max_abs(Matrix(u.entries().adjoint() * u.entries() - identity(3))) < 1e-12);
    // Matches the reference exponential of -i x h.
    const Matrix ref = qt::expm_reference(Complex(0, -0.7) * h.entries());
    CHECK(max_abs(Matrix(u.entries() - ref)) < 1e-10);
  }
}
