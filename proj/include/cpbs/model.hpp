// model.hpp — full Hamiltonian assembly and the perturbative two-level / two-qubit reductions

#pragma once

#include "cpbs/hilbert.hpp"

#include <stdexcept>

namespace cpbs::model {

using hilbert::Matrix;

// All energies in units of the interdot Coulomb strength Jp (Jp = 1 canonically), hbar = 1.
struct ModelParams {
    double delta1{0.5};  // Zeeman splitting, dot 1
    double delta2{0.5};  // Zeeman splitting, dot 2
    double J{4.0};       // intradot Coulomb
    double Jp{1.0};      // interdot Coulomb
    double Delta{0.05};  // crossed Andreev reflection amplitude
    double gamma{0.005}; // cotunneling amplitude
};

struct DegenerateParameterError : std::domain_error {
    using std::domain_error::domain_error;
};

// Throws DegenerateParameterError when Jp <= 0, J == Jp or 2J + 3Jp == 0.
void validate(const ModelParams& p);

// Derived quantities of the two-level reduction over {|0110>, |1001>}.
struct EffectiveModel {
    double Omega;  // effective coupling (negative for the benchmark parameters)
    double eps0;   // effective diagonal energy; eps0 + Omega == Jp identically
    double xi;     // second-order shift, xi == eps0 - Jp
    double delta;  // delta1/2 + delta2/2
};

Matrix build_hamiltonian(const ModelParams& p);

double effective_coupling(const ModelParams& p);
double effective_onsite(const ModelParams& p);
EffectiveModel effective_model(const ModelParams& p);

// Two-qubit reduction over {|0101>, |0110>, |1001>, |1010>} mapped to {|00>,|01>,|10>,|11>}.
// Shifted keeps the diagonal (delta - xi, 0, 0, -delta - xi); FlipFlop keeps only the
// Omega/2 (sx sx + sy sy) exchange term used for the concurrence dynamics.
enum class TwoQubitForm { Shifted, FlipFlop };

Matrix build_2qb_hamiltonian(const ModelParams& p, TwoQubitForm form = TwoQubitForm::Shifted);

// Closed two-level evolution amplitudes (cos theta, -i sin theta) over {|0110>, |1001>}
// for theta = Omega t, up to the global phase exp(-i eps0 t).
Eigen::Vector2cd analytic_state(double theta);

// Indices of the two-qubit basis inside the 16-level space.
inline constexpr std::array<int, 4> kTwoQubitBasis = {5, 6, 9, 10};

} // namespace cpbs::model
