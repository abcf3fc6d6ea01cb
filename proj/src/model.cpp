#include "cpbs/model.hpp"

#include <cmath>

namespace cpbs::model {

namespace {

using hilbert::Spin;

constexpr double kDegenerateTol = 1e-12;

} // namespace

void validate(const ModelParams& p) {
    if (!(p.Jp > 0.0)) {
        throw DegenerateParameterError("Jp must be positive");
    }
    if (std::abs(p.J - p.Jp) < kDegenerateTol * std::max(1.0, std::abs(p.Jp))) {
        throw DegenerateParameterError("J == Jp makes the cotunneling denominator vanish");
    }
    if (std::abs(2.0 * p.J + 3.0 * p.Jp) < kDegenerateTol) {
        throw DegenerateParameterError("2J + 3Jp == 0 makes a CAR denominator vanish");
    }
}

Matrix build_hamiltonian(const ModelParams& p) {
    validate(p);

    const Matrix n1u = hilbert::number_operator(1, Spin::Up);
    const Matrix n1d = hilbert::number_operator(1, Spin::Down);
    const Matrix n2u = hilbert::number_operator(2, Spin::Up);
    const Matrix n2d = hilbert::number_operator(2, Spin::Down);

    Matrix h = 0.5 * p.delta1 * (n1u - n1d) + 0.5 * p.delta2 * (n2u - n2d);
    h += p.J * (n1u * n1d + n2u * n2d);
    h += p.Jp * (n1u + n1d) * (n2u + n2d);

    const Matrix car = p.Delta * (hilbert::creation_operator(1, Spin::Up) *
                                      hilbert::creation_operator(2, Spin::Down) -
                                  hilbert::creation_operator(1, Spin::Down) *
                                      hilbert::creation_operator(2, Spin::Up));
    const Matrix ct = p.gamma * (hilbert::creation_operator(1, Spin::Up) *
                                     hilbert::annihilation_operator(2, Spin::Up) +
                                 hilbert::creation_operator(1, Spin::Down) *
                                     hilbert::annihilation_operator(2, Spin::Down));
    h += car + car.adjoint() + ct + ct.adjoint();
    return h;
}

double effective_coupling(const ModelParams& p) {
    validate(p);
    return -p.Delta * p.Delta * (1.0 / p.Jp - 1.0 / (2.0 * p.J + 3.0 * p.Jp)) -
           2.0 * p.gamma * p.gamma / (p.Jp - p.J);
}

double effective_onsite(const ModelParams& p) {
    validate(p);
    return p.Jp + 2.0 * p.gamma * p.gamma / (p.Jp - p.J) + p.Delta * p.Delta / p.Jp -
           p.Delta * p.Delta / (2.0 * p.J + 3.0 * p.Jp);
}

EffectiveModel effective_model(const ModelParams& p) {
    EffectiveModel eff;
    eff.Omega = effective_coupling(p);
    eff.eps0 = effective_onsite(p);
    eff.xi = eff.eps0 - p.Jp;
    eff.delta = 0.5 * p.delta1 + 0.5 * p.delta2;
    return eff;
}

Matrix build_2qb_hamiltonian(const ModelParams& p, TwoQubitForm form) {
    const EffectiveModel eff = effective_model(p);
    Matrix h = Matrix::Zero(4, 4);
    h(1, 2) = eff.Omega;
    h(2, 1) = eff.Omega;
    if (form == TwoQubitForm::Shifted) {
        h(0, 0) = eff.delta - eff.xi;
        h(3, 3) = -eff.delta - eff.xi;
    }
    return h;
}

Eigen::Vector2cd analytic_state(double theta) {
    Eigen::Vector2cd amps;
    amps(0) = std::cos(theta);
    amps(1) = std::complex<double>(0.0, -1.0) * std::sin(theta);
    return amps;
}

} // namespace cpbs::model
