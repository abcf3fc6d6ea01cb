#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cpbs/model.hpp"
#include "cpbs/spectral.hpp"
#include "test_support.hpp"

#include <random>

using namespace cpbs;
using hilbert::Matrix;

namespace {

model::ModelParams random_params(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.1, 1.0);
    model::ModelParams p;
    p.delta1 = u(rng);
    p.delta2 = u(rng);
    p.J = 3.0 + u(rng);
    p.Jp = 1.0;
    p.Delta = 0.1 * u(rng);
    p.gamma = 0.01 * u(rng);
    return p;
}

} // namespace

TEST_CASE("diagonal spectrum with couplings off") {
    const Matrix h = model::build_hamiltonian(test::diagonal_params());

    CHECK((h - Matrix(h.diagonal().asDiagonal())).cwiseAbs().maxCoeff() == 0.0);

    // closed-form level energies at J=4, Jp=1, delta1=delta2=1/2
    const std::array<double, 16> expected = {
        12.0,   // |0000>
        6.25,   // |0001>
        5.75,   // |0010>
        4.0,    // |0011>
        6.25,   // |0100>
        1.5,    // |0101>
        1.0,    // |0110>
        0.25,   // |0111>
        5.75,   // |1000>
        1.0,    // |1001>
        0.5,    // |1010>
        -0.25,  // |1011>
        4.0,    // |1100>
        0.25,   // |1101>
        -0.25,  // |1110>
        0.0,    // |1111>
    };
    for (int i = 0; i < hilbert::kDim; ++i) {
        CHECK(h(i, i).real() == doctest::Approx(expected[i]).epsilon(1e-15));
        CHECK(h(i, i).imag() == 0.0);
    }
}

TEST_CASE("Hamiltonian structure") {
    for (std::uint64_t seed : {1u, 2u, 3u, 4u, 5u}) {
        const model::ModelParams p = random_params(seed);
        const Matrix h = model::build_hamiltonian(p);

        CHECK((h - h.adjoint()).cwiseAbs().maxCoeff() == 0.0);

        // no direct |0110> <-> |1001> matrix element; the coupling is second order
        CHECK(std::abs(h(6, 9)) == 0.0);

        // CAR changes particle number by two, cotunneling by zero
        for (int i = 0; i < hilbert::kDim; ++i) {
            for (int j = 0; j < hilbert::kDim; ++j) {
                const int dn = hilbert::particle_number(i) - hilbert::particle_number(j);
                if (dn % 2 != 0) {
                    CHECK(std::abs(h(i, j)) == 0.0);
                }
            }
        }
    }
}

TEST_CASE("effective coupling") {
    CHECK(model::effective_coupling(test::benchmark_params()) ==
          doctest::Approx(-test::kBenchmarkOmegaAbs).epsilon(1e-15));

    model::ModelParams free = test::diagonal_params();
    CHECK(model::effective_coupling(free) == 0.0);

    model::ModelParams bad = test::benchmark_params();
    bad.J = bad.Jp;
    CHECK_THROWS_AS(model::effective_coupling(bad), model::DegenerateParameterError);
    bad = test::benchmark_params();
    bad.Jp = 0.0;
    CHECK_THROWS_AS(model::effective_coupling(bad), model::DegenerateParameterError);
    bad = test::benchmark_params();
    bad.J = -1.5;  // 2J + 3Jp = 0
    CHECK_THROWS_AS(model::effective_coupling(bad), model::DegenerateParameterError);
}

TEST_CASE("effective coupling matches the anticrossing gap") {
    const auto sys = spectral::eigensystem(model::build_hamiltonian(test::benchmark_params()));
    const double gap = sys.energies(7) - sys.energies(6);
    const double two_omega = 2.0 * test::kBenchmarkOmegaAbs;
    CHECK(std::abs(gap - two_omega) / two_omega <= 0.05);
}

TEST_CASE("effective onsite energy") {
    CHECK(model::effective_onsite(test::benchmark_params()) ==
          doctest::Approx(1.0022560606060606).epsilon(1e-14));
    CHECK(model::effective_onsite(test::diagonal_params()) == doctest::Approx(1.0));

    for (std::uint64_t seed : {7u, 8u, 9u, 10u, 11u}) {
        const model::ModelParams p = random_params(seed);
        CHECK(model::effective_onsite(p) + model::effective_coupling(p) ==
              doctest::Approx(p.Jp).epsilon(1e-12));
    }
}

TEST_CASE("two-qubit Hamiltonian") {
    const model::ModelParams p = test::benchmark_params();
    const model::EffectiveModel eff = model::effective_model(p);
    const Matrix h = model::build_2qb_hamiltonian(p);

    CHECK(h(1, 2).real() == doctest::Approx(eff.Omega).epsilon(1e-15));
    CHECK(h(2, 1).real() == doctest::Approx(eff.Omega).epsilon(1e-15));
    CHECK(std::abs(h(1, 1)) == 0.0);
    CHECK(std::abs(h(2, 2)) == 0.0);
    CHECK(h(0, 0).real() == doctest::Approx(eff.delta - eff.xi).epsilon(1e-15));
    CHECK(h(3, 3).real() == doctest::Approx(-eff.delta - eff.xi).epsilon(1e-15));

    const Matrix free = model::build_2qb_hamiltonian(test::diagonal_params());
    Matrix expected = Matrix::Zero(4, 4);
    expected(0, 0) = 0.5;
    expected(3, 3) = -0.5;
    CHECK((free - expected).cwiseAbs().maxCoeff() == 0.0);

    // Pauli decomposition: Omega/2 (sx sx + sy sy) - xi/2 (sz sz + I) + delta diag(1,0,0,-1)
    const Matrix sx = hilbert::pauli_x();
    const Matrix sy = hilbert::pauli_y();
    const Matrix sz = hilbert::pauli_z();
    const Matrix id = hilbert::identity2();
    Matrix pauli_form = 0.5 * eff.Omega * (hilbert::kron(sx, sx) + hilbert::kron(sy, sy));
    pauli_form -= 0.5 * eff.xi * (hilbert::kron(sz, sz) + hilbert::kron(id, id));
    pauli_form += eff.delta * (hilbert::kron(hilbert::sigma_plus() * hilbert::sigma_minus(), id) -
                               hilbert::kron(id, hilbert::sigma_minus() * hilbert::sigma_plus()));
    CHECK((h - pauli_form).cwiseAbs().maxCoeff() <= 1e-12);

    const Matrix flipflop = model::build_2qb_hamiltonian(p, model::TwoQubitForm::FlipFlop);
    CHECK(std::abs(flipflop(0, 0)) == 0.0);
    CHECK(std::abs(flipflop(3, 3)) == 0.0);
    CHECK(flipflop(1, 2).real() == doctest::Approx(eff.Omega).epsilon(1e-15));
}

TEST_CASE("analytic two-level state") {
    const Eigen::Vector2cd at0 = model::analytic_state(0.0);
    CHECK(std::abs(at0(0) - 1.0) <= 1e-15);
    CHECK(std::abs(at0(1)) <= 1e-15);

    const Eigen::Vector2cd quarter = model::analytic_state(M_PI / 4.0);
    CHECK(std::norm(quarter(0)) == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(std::norm(quarter(1)) == doctest::Approx(0.5).epsilon(1e-14));

    const Eigen::Vector2cd half = model::analytic_state(M_PI / 2.0);
    CHECK(std::abs(half(0)) <= 1e-15);
    CHECK(std::abs(half(1) - std::complex<double>(0.0, -1.0)) <= 1e-15);

    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    for (int k = 0; k < 32; ++k) {
        CHECK(model::analytic_state(u(rng)).norm() == doctest::Approx(1.0).epsilon(1e-14));
    }
}
