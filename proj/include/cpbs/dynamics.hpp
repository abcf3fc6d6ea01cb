// dynamics.hpp — GKSL propagation: vectorized generator, dense-exponential and adaptive RK paths

#pragma once

#include "cpbs/hilbert.hpp"

#include <span>
#include <stdexcept>
#include <vector>

namespace cpbs::dynamics {

using hilbert::Matrix;

inline constexpr double kHbarUeVns = 0.6582119569;  // hbar in micro-eV nanoseconds

// One Lindblad channel: rate Gamma and jump operator L.
struct Channel {
    double rate;
    Matrix op;
};

// Lead tunneling rates for the spin-selective drains d_{1up} and d_{2dn}, units of Jp.
struct DrainRates {
    double Gamma1{1e-4};
    double Gamma2{1e-4};
};

std::vector<Channel> drain_channels(const DrainRates& rates);

enum class RateUnit { JpUnits, GHz };  // GHz means ns^-1 under the E/hbar convention

struct DephasingConfig {
    double gamma_deph{0.1};
    RateUnit unit{RateUnit::GHz};
    double jp_ueV{100.0};  // used only for the GHz conversion

    double rate_in_jp() const;
};

// Column-stacked generator L with d vec(rho)/dt = L vec(rho); d^2 x d^2.
Matrix liouvillian(const Matrix& h, const std::vector<Channel>& channels);

enum class Propagator { DenseExp, AdaptiveRK };

// Default tolerances sit below the contractual 1e-9 so that purity along the
// benchmark closed trajectory stays within 1e-8 end to end.
struct EvolveOptions {
    Propagator method{Propagator::AdaptiveRK};
    double rtol{1e-10};
    double atol{1e-13};
};

struct Trajectory {
    std::vector<double> thetas;  // theta = omega * t
    std::vector<Matrix> states;
    double omega{1.0};
};

struct IntegratorError : std::runtime_error {
    IntegratorError(const std::string& msg, double theta_at)
        : std::runtime_error(msg), theta(theta_at) {}
    double theta;
};

// Propagate rho0 under H plus channels, sampling at the requested theta values
// (ascending from 0); omega converts theta to time, t = theta / omega.
Trajectory evolve(const Matrix& rho0, const Matrix& h, const std::vector<Channel>& channels,
                  std::span<const double> thetas, double omega, const EvolveOptions& opts = {});

// Two-qubit GKSL evolution with projector dephasing channels S1 = |01><01|, S2 = |10><10|.
Trajectory evolve_2qb_dephasing(const Matrix& rho0, const Matrix& h2qb,
                                const DephasingConfig& deph, std::span<const double> thetas,
                                double omega, const EvolveOptions& opts = {});

// <Phi_index | rho | Phi_index>.
double occupation(const Matrix& rho, int basis_index);

} // namespace cpbs::dynamics
