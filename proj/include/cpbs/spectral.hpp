// spectral.hpp — eigensystem, projection table, four-set classification, per-eigenstate covariances

#pragma once

#include "cpbs/model.hpp"
#include "cpbs/quantifiers.hpp"

#include <array>
#include <string>
#include <vector>

namespace cpbs::spectral {

using hilbert::Matrix;
using hilbert::Vector;

enum class StateClass {
    Pure,
    OneParticleEntangled,
    TwoParticleEntangled,
    ThreeParticleEntangled,
    Ambiguous,  // no particle-number sector holds enough projection weight
};

std::string to_string(StateClass c);

struct Eigensystem {
    Eigen::VectorXd energies;  // ascending; degenerate clusters ordered by dominant projection
    Matrix vectors;            // column n = |psi_n>
};

// Diagonalize a Hermitian 16x16 operator. Non-Hermitian input is rejected.
Eigensystem eigensystem(const Matrix& h);

// (n, i) entry = |<Phi_i | psi_n>|^2; rows sum to one.
Eigen::MatrixXd projection_table(const Eigensystem& sys);

// Covariances of a pure eigenstate, ordered as quantifiers::kSpinPairs.
std::array<double, 4> eigenstate_covariances(const Vector& psi);

struct ClassificationOptions {
    double svne_threshold{0.9};    // "highly entangled" cutoff on the reduced entropy
    double sector_threshold{0.99}; // minimum projection weight of the dominant sector
    double cluster_gap{1e-9};      // eigenvalues closer than this count as degenerate
};

struct EigenstateInfo {
    double energy;
    double svne;
    double tei;
    std::array<double, 4> covariances;       // raw values
    std::array<int, 4> table_covariances;    // rounded 0/1 entries of the reproduced table
    int dominant_sector;                     // particle number, -1 when ambiguous
    double sector_weight;
    StateClass label;
};

struct SpectralReport {
    model::ModelParams params;
    ClassificationOptions options;
    Eigen::VectorXd energies;
    Matrix eigenvectors;
    Eigen::MatrixXd projections;
    std::vector<EigenstateInfo> states;

    std::vector<int> members(StateClass c) const;
};

StateClass classify_eigenstate(const EigenstateInfo& info, const ClassificationOptions& opt);

SpectralReport spectral_report(const model::ModelParams& p, const ClassificationOptions& opt = {});

} // namespace cpbs::spectral
