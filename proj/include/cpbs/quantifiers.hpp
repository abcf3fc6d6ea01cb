// quantifiers.hpp — entanglement indicators and the covariance observable

#pragma once

#include "cpbs/hilbert.hpp"

#include <array>

namespace cpbs::quantifiers {

using hilbert::Matrix;
using hilbert::Spin;
using hilbert::Subsystem;

// Eigenvalues below this are treated as exact zeros before logs and square roots.
inline constexpr double kEigClip = 1e-12;

// -Tr(rho log2 rho) for a density matrix of any dimension.
double vn_entropy(const Matrix& rho);

// von Neumann entropy of the reduced state of one dot.
double svne(const Matrix& rho16, Subsystem sub = Subsystem::QD1);

// S(rho_1) + S(rho_2) - S(rho_12), in bits.
double qmi(const Matrix& rho16);

// (1/2) sum_k (|L_k| - L_k) over eigenvalues of the partial transpose.
double negativity(const Matrix& rho16, Subsystem sub = Subsystem::QD1);

struct TomographicEntropies {
    double S12;
    double S1;
    double S2;
};

// Shannon entropies (log2) of the diagonal projections in the occupation bases;
// subsystem bases are the four distinct single-dot occupation projectors.
TomographicEntropies tomographic_entropies(const Matrix& rho16);

// S1 + S2 - S12.
double tei(const Matrix& rho16);

// Wootters concurrence of a two-qubit state.
double concurrence(const Matrix& rho4);

struct ProjectedConcurrence {
    double value;
    double weight;  // trace weight of the two-qubit block before renormalization
};

// Concurrence of a full-model state projected onto span{|0101>,|0110>,|1001>,|1010>}.
ProjectedConcurrence concurrence_projected(const Matrix& rho16);

// 4 |<N1s N2s'> - <N1s><N2s'>| on the full model.
double covariance(const Matrix& rho16, Spin s1, Spin s2);
// Same observable on the two-qubit reduction (N1up = |0><0| x I and so on).
double covariance_2qb(const Matrix& rho4, Spin s1, Spin s2);
// Closed-dynamics prediction 4 cos^2(theta) sin^2(theta) = sin^2(2 theta).
double covariance_analytic(double theta);

// Covariance reporting order:
// (N1up,N2dn), (N1dn,N2up), (N1dn,N2dn), (N1up,N2up).
inline constexpr std::array<std::pair<Spin, Spin>, 4> kSpinPairs = {{
    {Spin::Up, Spin::Down},
    {Spin::Down, Spin::Up},
    {Spin::Down, Spin::Down},
    {Spin::Up, Spin::Up},
}};

std::array<double, 4> covariances(const Matrix& rho16);

struct IndicatorSet {
    double svne;
    double qmi;
    double neg;
    double tei;
    std::array<double, 4> covariances;

    double sqmi() const { return 0.5 * qmi; }
    double sneg() const { return 2.0 * neg; }
};

IndicatorSet indicator_set(const Matrix& rho16);

} // namespace cpbs::quantifiers
