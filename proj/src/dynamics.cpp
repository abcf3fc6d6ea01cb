#include "cpbs/dynamics.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace cpbs::dynamics {

namespace {

using Complex = std::complex<double>;

void validate_inputs(const Matrix& rho0, const Matrix& h, const std::vector<Channel>& channels,
                     std::span<const double> thetas, double omega) {
    const auto d = h.rows();
    if (h.cols() != d || rho0.rows() != d || rho0.cols() != d) {
        throw std::invalid_argument("evolve: state and Hamiltonian dimensions disagree");
    }
    if (!hilbert::is_hermitian(h, 1e-9 * std::max(1.0, h.cwiseAbs().maxCoeff()))) {
        throw std::invalid_argument("evolve: Hamiltonian is not Hermitian");
    }
    for (const Channel& c : channels) {
        if (c.rate < 0.0) {
            throw std::invalid_argument("evolve: negative channel rate");
        }
        if (c.op.rows() != d || c.op.cols() != d) {
            throw std::invalid_argument("evolve: jump operator dimension mismatch");
        }
    }
    if (thetas.empty() || std::abs(thetas.front()) > 1e-15) {
        throw std::invalid_argument("evolve: theta grid must start at 0");
    }
    for (std::size_t k = 1; k < thetas.size(); ++k) {
        if (!(thetas[k] > thetas[k - 1])) {
            throw std::invalid_argument("evolve: theta grid must be strictly ascending");
        }
    }
    if (!(omega > 0.0)) {
        throw std::invalid_argument("evolve: omega must be positive");
    }
}

// Right-hand side -i[H,rho] + sum Gamma (L rho L^dag - 1/2 {L^dag L, rho}),
// with L^dag and L^dag L precomputed.
struct Rhs {
    Matrix h;
    std::vector<Channel> channels;
    std::vector<Matrix> op_dag;
    std::vector<Matrix> op_dag_op;

    explicit Rhs(const Matrix& hamiltonian, const std::vector<Channel>& chans)
        : h(hamiltonian), channels(chans) {
        op_dag.reserve(channels.size());
        op_dag_op.reserve(channels.size());
        for (const Channel& c : channels) {
            op_dag.push_back(c.op.adjoint());
            op_dag_op.push_back(c.op.adjoint() * c.op);
        }
    }

    void operator()(const Matrix& rho, Matrix& out) const {
        const Complex mi(0.0, -1.0);
        out.noalias() = mi * (h * rho);
        out.noalias() -= mi * (rho * h);
        for (std::size_t k = 0; k < channels.size(); ++k) {
            const double g = channels[k].rate;
            if (g == 0.0) continue;
            out.noalias() += g * (channels[k].op * rho * op_dag[k]);
            out.noalias() -= (0.5 * g) * (op_dag_op[k] * rho);
            out.noalias() -= (0.5 * g) * (rho * op_dag_op[k]);
        }
    }
};

// Dormand–Prince 5(4) pair with PI-free step control on the max-norm error.
class Dopri5 {
  public:
    Dopri5(const Rhs& rhs, double rtol, double atol) : rhs_(rhs), rtol_(rtol), atol_(atol) {}

    // Advance rho from t to t_end, adapting internally.
    void integrate(Matrix& rho, double t, double t_end, double theta_scale) {
        if (t_end <= t) return;
        const double min_step = 1e-14 * std::max(t_end - t, std::abs(t_end));
        if (h_ <= 0.0) {
            h_ = (t_end - t) / 16.0;
        }
        Matrix k1, k2, k3, k4, k5, k6, k7, tmp, y5;
        while (t_end - t > min_step) {
            double h = std::min(h_, t_end - t);
            const bool end_clamped = h < h_;
            bool accepted = false;
            while (!accepted) {
                rhs_(rho, k1);
                tmp = rho + h * (a21 * k1);
                rhs_(tmp, k2);
                tmp = rho + h * (a31 * k1 + a32 * k2);
                rhs_(tmp, k3);
                tmp = rho + h * (a41 * k1 + a42 * k2 + a43 * k3);
                rhs_(tmp, k4);
                tmp = rho + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
                rhs_(tmp, k5);
                tmp = rho + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
                rhs_(tmp, k6);
                y5 = rho + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
                rhs_(y5, k7);

                const Matrix err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
                const double scale =
                    atol_ + rtol_ * std::max(rho.cwiseAbs().maxCoeff(), y5.cwiseAbs().maxCoeff());
                const double err_norm = err.cwiseAbs().maxCoeff() / scale;
                const double factor = err_norm > 0.0 ? 0.9 * std::pow(err_norm, -0.2) : 5.0;

                if (err_norm <= 1.0) {
                    t += h;
                    rho = y5;
                    accepted = true;
                    // keep the controller step; an end-of-segment clamp is not a rejection
                    if (!end_clamped || factor < 1.0) {
                        h_ = h * std::clamp(factor, 0.2, 5.0);
                    }
                } else {
                    h *= std::clamp(factor, 0.2, 1.0);
                    if (h < min_step) {
                        throw IntegratorError("adaptive step underflow at theta = " +
                                                  std::to_string(t * theta_scale),
                                              t * theta_scale);
                    }
                }
            }
        }
    }

  private:
    const Rhs& rhs_;
    double rtol_;
    double atol_;
    double h_{0.0};

    // Dormand–Prince tableau
    static constexpr double a21 = 1.0 / 5.0;
    static constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
    static constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
    static constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0,
                            a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
    static constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                            a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
    static constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
                            b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
    // b - b*, the embedded 4th-order error weights
    static constexpr double e1 = 35.0 / 384.0 - 5179.0 / 57600.0;
    static constexpr double e3 = 500.0 / 1113.0 - 7571.0 / 16695.0;
    static constexpr double e4 = 125.0 / 192.0 - 393.0 / 640.0;
    static constexpr double e5 = -2187.0 / 6784.0 + 92097.0 / 339200.0;
    static constexpr double e6 = 11.0 / 84.0 - 187.0 / 2100.0;
    static constexpr double e7 = -1.0 / 40.0;
};

Trajectory evolve_dense_exp(const Matrix& rho0, const Matrix& generator,
                            std::span<const double> thetas, double omega) {
    const auto d = rho0.rows();
    Trajectory traj;
    traj.omega = omega;
    traj.thetas.assign(thetas.begin(), thetas.end());
    traj.states.reserve(thetas.size());
    traj.states.push_back(rho0);

    Eigen::VectorXcd v = Eigen::Map<const Eigen::VectorXcd>(rho0.data(), d * d);
    Matrix cached_step;
    double cached_dt = -1.0;
    for (std::size_t k = 1; k < thetas.size(); ++k) {
        const double dt = (thetas[k] - thetas[k - 1]) / omega;
        if (cached_dt < 0.0 || std::abs(dt - cached_dt) > 1e-12 * dt) {
            cached_step = (generator * dt).exp();
            cached_dt = dt;
        }
        v = cached_step * v;
        traj.states.push_back(Eigen::Map<const Matrix>(v.data(), d, d));
    }
    return traj;
}

Trajectory evolve_adaptive(const Matrix& rho0, const Rhs& rhs, std::span<const double> thetas,
                           double omega, const EvolveOptions& opts) {
    Trajectory traj;
    traj.omega = omega;
    traj.thetas.assign(thetas.begin(), thetas.end());
    traj.states.reserve(thetas.size());
    traj.states.push_back(rho0);

    Dopri5 stepper(rhs, opts.rtol, opts.atol);
    Matrix rho = rho0;
    for (std::size_t k = 1; k < thetas.size(); ++k) {
        stepper.integrate(rho, thetas[k - 1] / omega, thetas[k] / omega, omega);
        traj.states.push_back(rho);
    }
    return traj;
}

} // namespace

double DephasingConfig::rate_in_jp() const {
    if (gamma_deph < 0.0) {
        throw std::invalid_argument("dephasing rate must be nonnegative");
    }
    if (unit == RateUnit::JpUnits) {
        return gamma_deph;
    }
    if (!(jp_ueV > 0.0)) {
        throw std::invalid_argument("Jp in micro-eV must be positive for GHz rates");
    }
    // rate [1/ns] -> energy-like rate in units of Jp/hbar
    return gamma_deph * kHbarUeVns / jp_ueV;
}

std::vector<Channel> drain_channels(const DrainRates& rates) {
    if (rates.Gamma1 < 0.0 || rates.Gamma2 < 0.0) {
        throw std::invalid_argument("drain rates must be nonnegative");
    }
    return {
        {rates.Gamma1, hilbert::annihilation_operator(1, hilbert::Spin::Up)},
        {rates.Gamma2, hilbert::annihilation_operator(2, hilbert::Spin::Down)},
    };
}

Matrix liouvillian(const Matrix& h, const std::vector<Channel>& channels) {
    const auto d = h.rows();
    if (h.cols() != d) {
        throw std::invalid_argument("liouvillian: Hamiltonian must be square");
    }
    if (!hilbert::is_hermitian(h, 1e-9 * std::max(1.0, h.cwiseAbs().maxCoeff()))) {
        throw std::invalid_argument("liouvillian: Hamiltonian is not Hermitian");
    }
    const Matrix id = Matrix::Identity(d, d);
    const Complex mi(0.0, -1.0);
    Matrix gen = mi * (hilbert::kron(id, h) - hilbert::kron(h.transpose(), id));
    for (const Channel& c : channels) {
        if (c.rate < 0.0) {
            throw std::invalid_argument("liouvillian: negative channel rate");
        }
        if (c.op.rows() != d || c.op.cols() != d) {
            throw std::invalid_argument("liouvillian: jump operator dimension mismatch");
        }
        const Matrix dag_op = c.op.adjoint() * c.op;
        gen += c.rate * (hilbert::kron(c.op.conjugate(), c.op) -
                         0.5 * hilbert::kron(id, dag_op) -
                         0.5 * hilbert::kron(dag_op.transpose(), id));
    }
    return gen;
}

Trajectory evolve(const Matrix& rho0, const Matrix& h, const std::vector<Channel>& channels,
                  std::span<const double> thetas, double omega, const EvolveOptions& opts) {
    validate_inputs(rho0, h, channels, thetas, omega);
    if (opts.method == Propagator::DenseExp) {
        return evolve_dense_exp(rho0, liouvillian(h, channels), thetas, omega);
    }
    const Rhs rhs(h, channels);
    return evolve_adaptive(rho0, rhs, thetas, omega, opts);
}

Trajectory evolve_2qb_dephasing(const Matrix& rho0, const Matrix& h2qb,
                                const DephasingConfig& deph, std::span<const double> thetas,
                                double omega, const EvolveOptions& opts) {
    if (rho0.rows() != 4 || rho0.cols() != 4 || h2qb.rows() != 4 || h2qb.cols() != 4) {
        throw std::invalid_argument("evolve_2qb_dephasing: expected 4x4 state and Hamiltonian");
    }
    const double rate = deph.rate_in_jp();
    Matrix s1 = Matrix::Zero(4, 4);
    s1(1, 1) = 1.0;  // |01><01|
    Matrix s2 = Matrix::Zero(4, 4);
    s2(2, 2) = 1.0;  // |10><10|
    return evolve(rho0, h2qb, {{rate, s1}, {rate, s2}}, thetas, omega, opts);
}

double occupation(const Matrix& rho, int basis_index) {
    if (rho.rows() != rho.cols()) {
        throw std::invalid_argument("occupation: state must be square");
    }
    if (basis_index < 0 || basis_index >= rho.rows()) {
        throw std::out_of_range("occupation: basis index out of range");
    }
    return rho(basis_index, basis_index).real();
}

} // namespace cpbs::dynamics
