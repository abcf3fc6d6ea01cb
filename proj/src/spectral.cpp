#include "cpbs/spectral.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace cpbs::spectral {

namespace {

int dominant_projection_index(const Vector& psi) {
    int best = 0;
    double best_w = 0.0;
    for (int i = 0; i < hilbert::kDim; ++i) {
        const double w = std::norm(psi(i));
        if (w > best_w) {
            best_w = w;
            best = i;
        }
    }
    return best;
}

} // namespace

std::string to_string(StateClass c) {
    switch (c) {
        case StateClass::Pure: return "pure";
        case StateClass::OneParticleEntangled: return "one-particle-entangled";
        case StateClass::TwoParticleEntangled: return "two-particle-entangled";
        case StateClass::ThreeParticleEntangled: return "three-particle-entangled";
        case StateClass::Ambiguous: return "ambiguous";
    }
    return "unknown";
}

Eigensystem eigensystem(const Matrix& h) {
    if (h.rows() != hilbert::kDim || h.cols() != hilbert::kDim) {
        throw std::invalid_argument("eigensystem: expected a 16x16 operator");
    }
    const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
    if ((h - h.adjoint()).cwiseAbs().maxCoeff() > 1e-9 * scale) {
        throw std::invalid_argument("eigensystem: operator is not Hermitian");
    }

    Eigen::SelfAdjointEigenSolver<Matrix> es(h);
    if (es.info() != Eigen::Success) {
        throw std::runtime_error("eigensystem: eigensolver failed");
    }

    Eigensystem sys;
    sys.energies = es.eigenvalues();
    sys.vectors = es.eigenvectors();

    // Deterministic ordering inside degenerate clusters: ascending index of the
    // dominant basis projection.
    const double gap = 1e-9 * std::max(1.0, sys.energies.cwiseAbs().maxCoeff());
    int lo = 0;
    while (lo < hilbert::kDim) {
        int hi = lo + 1;
        while (hi < hilbert::kDim && sys.energies(hi) - sys.energies(hi - 1) < gap) {
            ++hi;
        }
        if (hi - lo > 1) {
            std::vector<int> order(hi - lo);
            std::iota(order.begin(), order.end(), lo);
            std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
                return dominant_projection_index(sys.vectors.col(a)) <
                       dominant_projection_index(sys.vectors.col(b));
            });
            const Eigen::VectorXd energies = sys.energies;
            const Matrix vectors = sys.vectors;
            for (int k = lo; k < hi; ++k) {
                sys.energies(k) = energies(order[k - lo]);
                sys.vectors.col(k) = vectors.col(order[k - lo]);
            }
        }
        lo = hi;
    }
    return sys;
}

Eigen::MatrixXd projection_table(const Eigensystem& sys) {
    Eigen::MatrixXd table(hilbert::kDim, hilbert::kDim);
    for (int n = 0; n < hilbert::kDim; ++n) {
        for (int i = 0; i < hilbert::kDim; ++i) {
            table(n, i) = std::norm(sys.vectors(i, n));
        }
    }
    return table;
}

std::array<double, 4> eigenstate_covariances(const Vector& psi) {
    if (psi.size() != hilbert::kDim) {
        throw std::invalid_argument("eigenstate_covariances: expected a 16-component state");
    }
    const Matrix rho = psi * psi.adjoint();
    return quantifiers::covariances(rho);
}

StateClass classify_eigenstate(const EigenstateInfo& info, const ClassificationOptions& opt) {
    if (info.dominant_sector < 0) {
        return StateClass::Ambiguous;
    }
    if (info.svne < opt.svne_threshold) {
        return StateClass::Pure;
    }
    switch (info.dominant_sector) {
        case 1: return StateClass::OneParticleEntangled;
        case 2: return StateClass::TwoParticleEntangled;
        case 3: return StateClass::ThreeParticleEntangled;
        default: return StateClass::Pure;  // 0- and 4-particle sectors are one-dimensional
    }
}

SpectralReport spectral_report(const model::ModelParams& p, const ClassificationOptions& opt) {
    SpectralReport report;
    report.params = p;
    report.options = opt;

    const Eigensystem sys = eigensystem(model::build_hamiltonian(p));
    report.energies = sys.energies;
    report.eigenvectors = sys.vectors;
    report.projections = projection_table(sys);

    report.states.reserve(hilbert::kDim);
    for (int n = 0; n < hilbert::kDim; ++n) {
        EigenstateInfo info;
        info.energy = sys.energies(n);

        const Vector psi = sys.vectors.col(n);
        const Matrix rho = psi * psi.adjoint();
        info.svne = quantifiers::svne(rho);
        info.tei = quantifiers::tei(rho);
        info.covariances = quantifiers::covariances(rho);
        for (int k = 0; k < 4; ++k) {
            info.table_covariances[k] = info.covariances[k] >= 0.5 ? 1 : 0;
        }

        std::array<double, 5> sector_weight{};
        for (int i = 0; i < hilbert::kDim; ++i) {
            sector_weight[hilbert::particle_number(i)] += report.projections(n, i);
        }
        const auto it = std::max_element(sector_weight.begin(), sector_weight.end());
        info.sector_weight = *it;
        info.dominant_sector = info.sector_weight >= opt.sector_threshold
                                   ? static_cast<int>(it - sector_weight.begin())
                                   : -1;
        info.label = classify_eigenstate(info, opt);
        report.states.push_back(info);
    }
    return report;
}

std::vector<int> SpectralReport::members(StateClass c) const {
    std::vector<int> out;
    for (int n = 0; n < static_cast<int>(states.size()); ++n) {
        if (states[n].label == c) {
            out.push_back(n);
        }
    }
    return out;
}

} // namespace cpbs::spectral
