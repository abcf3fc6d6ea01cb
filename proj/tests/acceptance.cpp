// acceptance.cpp — end-to-end acceptance suite; prints one pass/fail line per criterion

#include "cpbs/dynamics.hpp"
#include "cpbs/model.hpp"
#include "cpbs/quantifiers.hpp"
#include "cpbs/scenario.hpp"
#include "cpbs/spectral.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace cpbs;
using hilbert::Matrix;
using hilbert::Spin;
using hilbert::Subsystem;
using hilbert::Vector;

namespace {

constexpr double kPi = 3.141592653589793;

struct Criterion {
    int id;
    std::string name;
    double time_limit_s;
    std::function<bool(std::string&)> run;
};

std::vector<double> theta_grid(double stop, int count) {
    std::vector<double> out(count);
    for (int k = 0; k < count; ++k) {
        out[k] = stop * static_cast<double>(k) / (count - 1);
    }
    return out;
}

Matrix initial_phi9() {
    Matrix rho = Matrix::Zero(hilbert::kDim, hilbert::kDim);
    rho(9, 9) = 1.0;
    return rho;
}

int argmax_range(const std::vector<double>& v, int lo, int hi) {
    return static_cast<int>(std::max_element(v.begin() + lo, v.begin() + hi + 1) - v.begin());
}

bool check(std::ostringstream& log, const std::string& label, bool ok) {
    if (!ok) {
        log << " [" << label << " FAILED]";
    }
    return ok;
}

// ---------------------------------------------------------------------------
// 1. Diagonal spectrum matches the closed forms to 1e-12.
bool criterion_diagonal_spectrum(std::string& detail) {
    model::ModelParams p;
    p.Delta = 0.0;
    p.gamma = 0.0;
    const auto sys = spectral::eigensystem(model::build_hamiltonian(p));
    const std::array<double, 16> expected = {-0.25, -0.25, 0.0, 0.25, 0.25, 0.5,  1.0,  1.0,
                                             1.5,   4.0,   4.0, 5.75, 5.75, 6.25, 6.25, 12.0};
    double worst = 0.0;
    for (int n = 0; n < 16; ++n) {
        worst = std::max(worst, std::abs(sys.energies(n) - expected[n]));
    }
    std::ostringstream os;
    os << "max |E - closed form| = " << worst;
    detail = os.str();
    return worst <= 1e-12;
}

// ---------------------------------------------------------------------------
// 2. Effective coupling value and the anticrossing gap.
bool criterion_effective_coupling(std::string& detail) {
    const model::ModelParams p;
    const double omega = model::effective_coupling(p);
    const auto sys = spectral::eigensystem(model::build_hamiltonian(p));
    const double gap = sys.energies(7) - sys.energies(6);
    const double rel = std::abs(gap - 2.0 * std::abs(omega)) / (2.0 * std::abs(omega));

    std::ostringstream os, log;
    bool ok = check(log, "value", std::abs(std::abs(omega) - 2.25606e-3) <= 5e-9);
    ok = check(log, "order-of-magnitude", std::abs(std::abs(omega) - 0.002) <= 5e-4) && ok;
    ok = check(log, "gap-5pct", rel <= 0.05) && ok;
    os << "|Omega| = " << std::abs(omega) << ", gap/2|Omega| rel err = " << rel << log.str();
    detail = os.str();
    return ok;
}

// ---------------------------------------------------------------------------
// 3. Eigenstate covariance table: rounded entries match the expected 0/1 pattern
//    exactly; raw values stay within 0.011 of the pattern.
bool criterion_covariance_table(std::string& detail) {
    constexpr std::array<std::array<int, 4>, 16> expected = {{
        {0, 0, 1, 0}, {0, 0, 1, 0}, {0, 0, 0, 0}, {0, 0, 0, 1},
        {0, 0, 0, 1}, {0, 0, 0, 0}, {1, 1, 1, 1}, {1, 1, 1, 1},
        {0, 0, 0, 0}, {1, 1, 1, 1}, {1, 1, 1, 1}, {0, 0, 0, 1},
        {0, 0, 0, 1}, {0, 0, 1, 0}, {0, 0, 1, 0}, {0, 0, 0, 0},
    }};
    const auto report = spectral::spectral_report(model::ModelParams{});
    int mismatches = 0;
    double worst_raw = 0.0;
    for (int n = 0; n < 16; ++n) {
        for (int k = 0; k < 4; ++k) {
            if (std::abs(report.states[n].table_covariances[k] - expected[n][k]) > 1e-6) {
                ++mismatches;
            }
            worst_raw = std::max(worst_raw,
                                 std::abs(report.states[n].covariances[k] - expected[n][k]));
        }
    }
    std::ostringstream os;
    os << mismatches << "/64 table mismatches, max |raw - table| = " << worst_raw;
    detail = os.str();
    return mismatches == 0 && worst_raw <= 0.011;
}

// ---------------------------------------------------------------------------
// 4. Closed dynamics matches the two-level closed form; spectators stay small.
//    The oracle clock uses the realized Rabi frequency (half the exact psi6/psi7
//    gap); the frequency accuracy itself is pinned by criterion 2.
bool criterion_closed_dynamics(std::string& detail) {
    const model::ModelParams p;
    const Matrix h = model::build_hamiltonian(p);
    const double omega_pt = std::abs(model::effective_coupling(p));
    const auto sys = spectral::eigensystem(h);
    const double rabi = 0.5 * (sys.energies(7) - sys.energies(6));
    const double clock = rabi / omega_pt;

    dynamics::EvolveOptions opts;
    opts.method = dynamics::Propagator::DenseExp;
    const auto traj =
        dynamics::evolve(initial_phi9(), h, {}, theta_grid(kPi, 1001), omega_pt, opts);

    double dev9 = 0.0, dev6 = 0.0, spectator = 0.0;
    for (std::size_t k = 0; k < traj.thetas.size(); ++k) {
        const double phase = clock * traj.thetas[k];
        const double c2 = std::cos(phase) * std::cos(phase);
        dev9 = std::max(dev9, std::abs(dynamics::occupation(traj.states[k], 9) - c2));
        dev6 = std::max(dev6, std::abs(dynamics::occupation(traj.states[k], 6) - (1.0 - c2)));
        for (int i = 0; i < hilbert::kDim; ++i) {
            if (i == 6 || i == 9) continue;
            spectator = std::max(spectator, dynamics::occupation(traj.states[k], i));
        }
    }
    std::ostringstream os, log;
    bool ok = check(log, "P9", dev9 <= 0.01);
    ok = check(log, "P6", dev6 <= 0.01) && ok;
    ok = check(log, "spectators", spectator <= 0.01) && ok;
    os << "max dev P9 = " << dev9 << ", P6 = " << dev6 << ", spectator max = " << spectator
       << log.str();
    detail = os.str();
    return ok;
}

// ---------------------------------------------------------------------------
// 5. Indicator peaks on the open benchmark trajectory.
bool criterion_indicator_peaks(std::string& detail) {
    const model::ModelParams p;
    const Matrix h = model::build_hamiltonian(p);
    const double omega = std::abs(model::effective_coupling(p));
    dynamics::EvolveOptions opts;
    opts.method = dynamics::Propagator::DenseExp;
    const auto traj = dynamics::evolve(initial_phi9(), h, dynamics::drain_channels({1e-4, 1e-4}),
                                       theta_grid(kPi, 1001), omega, opts);

    const int n = static_cast<int>(traj.thetas.size());
    std::vector<double> sqmi(n), sneg(n), tei(n), cov(n);
    for (int k = 0; k < n; ++k) {
        const Matrix& rho = traj.states[k];
        sqmi[k] = 0.5 * quantifiers::qmi(rho);
        sneg[k] = 2.0 * quantifiers::negativity(rho);
        tei[k] = quantifiers::tei(rho);
        cov[k] = quantifiers::covariance(rho, Spin::Up, Spin::Down);
    }

    std::ostringstream os, log;
    bool ok = true;
    os << "argmax (expect 250/750):";
    const std::array<std::pair<const char*, const std::vector<double>*>, 4> indicators = {{
        {"qmi/2", &sqmi}, {"2neg", &sneg}, {"tei", &tei}, {"cov", &cov}}};
    for (const auto& [name, values] : indicators) {
        const int first = argmax_range(*values, 0, 500);
        const int second = argmax_range(*values, 500, 1000);
        os << ' ' << name << "=" << first << '/' << second;
        ok = check(log, std::string(name) + "-first", std::abs(first - 250) <= 1) && ok;
        ok = check(log, std::string(name) + "-second", std::abs(second - 750) <= 1) && ok;
    }
    const double cov_peak = cov[argmax_range(cov, 0, 500)];
    os << "; first-peak cov = " << cov_peak;
    ok = check(log, "cov-peak-0.98", cov_peak >= 0.98) && ok;
    os << log.str();
    if (!ok) {
        os << " — note: the exact trajectory carries coherent dressing oscillations "
              "(period ~4.5 grid steps, amplitude ~0.03 on the entropy indicators) that "
              "displace the flat pi/4 and 3pi/4 maxima by a few grid steps";
    }
    detail = os.str();
    return ok;
}

// ---------------------------------------------------------------------------
// 6. Dense-exponential and adaptive-RK propagation agree entrywise to 1e-6.
bool criterion_dual_propagator(std::string& detail) {
    const model::ModelParams p;
    const Matrix h = model::build_hamiltonian(p);
    const double omega = std::abs(model::effective_coupling(p));
    const auto channels = dynamics::drain_channels({1e-4, 1e-4});
    const auto thetas = theta_grid(kPi, 1001);

    dynamics::EvolveOptions expm;
    expm.method = dynamics::Propagator::DenseExp;
    dynamics::EvolveOptions rk;
    rk.method = dynamics::Propagator::AdaptiveRK;

    const auto a = dynamics::evolve(initial_phi9(), h, channels, thetas, omega, expm);
    const auto b = dynamics::evolve(initial_phi9(), h, channels, thetas, omega, rk);
    double worst = 0.0;
    for (std::size_t k = 0; k < thetas.size(); ++k) {
        worst = std::max(worst, (a.states[k] - b.states[k]).cwiseAbs().maxCoeff());
    }
    std::ostringstream os;
    os << "max entrywise difference = " << worst;
    detail = os.str();
    return worst <= 1e-6;
}

// ---------------------------------------------------------------------------
// 7. Dephasing study in physical units.
bool criterion_dephasing(std::string& detail) {
    const model::ModelParams p;
    const Matrix h2 = model::build_2qb_hamiltonian(p);
    const double omega = std::abs(model::effective_coupling(p));
    Matrix rho0 = Matrix::Zero(4, 4);
    rho0(1, 1) = 1.0;
    const auto thetas = theta_grid(kPi, 1001);

    const auto run = [&](double rate_ghz) {
        dynamics::DephasingConfig deph;
        deph.gamma_deph = rate_ghz;
        deph.unit = dynamics::RateUnit::GHz;
        deph.jp_ueV = 100.0;
        return dynamics::evolve_2qb_dephasing(rho0, h2, deph, thetas, omega);
    };

    const auto concurrences = [](const dynamics::Trajectory& traj) {
        std::vector<double> c(traj.states.size());
        for (std::size_t k = 0; k < traj.states.size(); ++k) {
            c[k] = quantifiers::concurrence(traj.states[k]);
        }
        return c;
    };

    const auto medium = run(0.1);
    const auto strong = run(1.0);
    const auto c_medium = concurrences(medium);
    const auto c_strong = concurrences(strong);

    const double peak1 = c_medium[argmax_range(c_medium, 0, 500)];
    const double peak2 = c_medium[argmax_range(c_medium, 500, 1000)];
    const double strong_peak = c_strong[argmax_range(c_strong, 0, 1000)];
    const double cov_final = quantifiers::covariance_2qb(strong.states.back(), Spin::Up,
                                                         Spin::Down);

    std::ostringstream os, log;
    bool ok = check(log, "peak1-0.9pm0.1", std::abs(peak1 - 0.9) <= 0.1);
    ok = check(log, "peak2-0.7pm0.1", std::abs(peak2 - 0.7) <= 0.1) && ok;
    ok = check(log, "strong-suppressed", strong_peak <= 0.5) && ok;
    ok = check(log, "cov-final-0.9", cov_final >= 0.9) && ok;
    os << "0.1 GHz peaks = " << peak1 << '/' << peak2 << "; 1.0 GHz max C = " << strong_peak
       << ", final cov = " << cov_final << log.str();
    detail = os.str();
    return ok;
}

// ---------------------------------------------------------------------------
// 8. Property suites at the stated tolerances.
bool criterion_properties(std::string& detail) {
    std::ostringstream os, log;
    bool ok = true;

    // fermionic anticommutation, all 16 ordered pairs
    std::array<Matrix, 4> ops = {
        hilbert::annihilation_operator(1, Spin::Up),
        hilbert::annihilation_operator(1, Spin::Down),
        hilbert::annihilation_operator(2, Spin::Up),
        hilbert::annihilation_operator(2, Spin::Down),
    };
    double anti_err = 0.0;
    const Matrix id = Matrix::Identity(hilbert::kDim, hilbert::kDim);
    for (int a = 0; a < 4; ++a) {
        for (int b = 0; b < 4; ++b) {
            anti_err = std::max(anti_err,
                                (ops[a] * ops[b] + ops[b] * ops[a]).cwiseAbs().maxCoeff());
            const Matrix mixed = ops[a] * ops[b].adjoint() + ops[b].adjoint() * ops[a];
            const Matrix expect = (a == b) ? id : Matrix::Zero(hilbert::kDim, hilbert::kDim);
            anti_err = std::max(anti_err, (mixed - expect).cwiseAbs().maxCoeff());
        }
    }
    ok = check(log, "anticommutation", anti_err <= 1e-12) && ok;

    // trajectory preservation on the open benchmark
    const model::ModelParams p;
    dynamics::EvolveOptions opts;
    opts.method = dynamics::Propagator::DenseExp;
    const auto traj = dynamics::evolve(initial_phi9(), model::build_hamiltonian(p),
                                       dynamics::drain_channels({1e-4, 1e-4}),
                                       theta_grid(kPi, 251), std::abs(model::effective_coupling(p)),
                                       opts);
    double trace_err = 0.0, herm_err = 0.0, min_eig = 0.0;
    for (const Matrix& rho : traj.states) {
        trace_err = std::max(trace_err, std::abs(rho.trace().real() - 1.0));
        herm_err = std::max(herm_err, (rho - rho.adjoint()).cwiseAbs().maxCoeff());
        Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (rho + rho.adjoint()),
                                                 Eigen::EigenvaluesOnly);
        min_eig = std::min(min_eig, es.eigenvalues().minCoeff());
    }
    ok = check(log, "trace", trace_err <= 1e-8) && ok;
    ok = check(log, "hermiticity", herm_err <= 1e-9) && ok;
    ok = check(log, "positivity", min_eig >= -1e-7) && ok;

    // negativity symmetry and pure-state entropy equality on random states
    std::mt19937_64 rng(4242);
    std::normal_distribution<double> gauss(0.0, 1.0);
    const auto random_complex_matrix = [&](int dim) {
        Matrix g(dim, dim);
        for (int i = 0; i < dim; ++i) {
            for (int j = 0; j < dim; ++j) {
                g(i, j) = std::complex<double>(gauss(rng), gauss(rng));
            }
        }
        return g;
    };
    double neg_sym = 0.0, svne_eq = 0.0, prod_cov = 0.0;
    for (int trial = 0; trial < 8; ++trial) {
        const Matrix g = random_complex_matrix(hilbert::kDim);
        Matrix rho = g * g.adjoint();
        rho /= rho.trace().real();
        neg_sym = std::max(neg_sym, std::abs(quantifiers::negativity(rho, Subsystem::QD1) -
                                             quantifiers::negativity(rho, Subsystem::QD2)));

        Vector psi(hilbert::kDim);
        for (int i = 0; i < hilbert::kDim; ++i) {
            psi(i) = std::complex<double>(gauss(rng), gauss(rng));
        }
        psi.normalize();
        const Matrix pure = psi * psi.adjoint();
        svne_eq = std::max(svne_eq, std::abs(quantifiers::svne(pure, Subsystem::QD1) -
                                             quantifiers::svne(pure, Subsystem::QD2)));

        Matrix ga = random_complex_matrix(4);
        Matrix gb = random_complex_matrix(4);
        Matrix ra = ga * ga.adjoint();
        ra /= ra.trace().real();
        Matrix rb = gb * gb.adjoint();
        rb /= rb.trace().real();
        const Matrix prod = hilbert::kron(ra, rb);
        for (const auto& [s1, s2] : quantifiers::kSpinPairs) {
            prod_cov = std::max(prod_cov, quantifiers::covariance(prod, s1, s2));
        }
    }
    ok = check(log, "negativity-symmetry", neg_sym <= 1e-10) && ok;
    ok = check(log, "svne-pure-equality", svne_eq <= 1e-9) && ok;
    ok = check(log, "product-zero-covariance", prod_cov <= 1e-10) && ok;

    os << "anticomm err = " << anti_err << ", trace err = " << trace_err
       << ", min eig = " << min_eig << ", neg sym = " << neg_sym << ", svne eq = " << svne_eq
       << ", product cov = " << prod_cov << log.str();
    detail = os.str();
    return ok;
}

} // namespace

int main() {
    const std::vector<Criterion> criteria = {
        {1, "diagonal spectrum matches closed forms (1e-12)", 1.0, criterion_diagonal_spectrum},
        {2, "effective coupling 2.25606e-3 and gap within 5%", 1.0, criterion_effective_coupling},
        {3, "eigenstate covariance table, 64 rounded entries", 5.0, criterion_covariance_table},
        {4, "closed dynamics within 0.01 of cos^2/sin^2", 30.0, criterion_closed_dynamics},
        {5, "indicator peaks at pi/4 and 3pi/4; first-peak cov >= 0.98", 60.0,
         criterion_indicator_peaks},
        {6, "dual propagators agree to 1e-6", 60.0, criterion_dual_propagator},
        {7, "dephasing study (0.1 GHz peaks, 1.0 GHz saturation)", 60.0, criterion_dephasing},
        {8, "property suites at stated tolerances", 60.0, criterion_properties},
    };

    int failures = 0;
    for (const Criterion& c : criteria) {
        std::string detail;
        bool ok = false;
        const auto start = std::chrono::steady_clock::now();
        try {
            ok = c.run(detail);
        } catch (const std::exception& err) {
            detail = std::string("exception: ") + err.what();
            ok = false;
        }
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (elapsed > c.time_limit_s) {
            ok = false;
            detail += " [exceeded " + std::to_string(c.time_limit_s) + " s limit]";
        }
        std::printf("[%s] criterion %d: %s (%.2f s) — %s\n", ok ? "PASS" : "FAIL", c.id,
                    c.name.c_str(), elapsed, detail.c_str());
        if (!ok) ++failures;
    }
    if (failures > 0) {
        std::printf("%d of %zu criteria failed\n", failures, criteria.size());
    } else {
        std::printf("all %zu criteria passed\n", criteria.size());
    }
    return failures;
}
