#include "cpbs/quantifiers.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cpbs::quantifiers {

namespace {

double shannon_term(double p) {
    return p > kEigClip ? -p * std::log2(p) : 0.0;
}

double shannon(const Eigen::VectorXd& probs) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < probs.size(); ++i) {
        s += shannon_term(probs(i));
    }
    return s;
}

Eigen::VectorXd hermitian_eigenvalues(const Matrix& m) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

void require_square(const Matrix& m, int dim, const char* where) {
    if (m.rows() != dim || m.cols() != dim) {
        throw std::invalid_argument(std::string(where) + ": expected " + std::to_string(dim) +
                                    "x" + std::to_string(dim) + " matrix");
    }
}

Matrix number_op_2qb(Spin spin, int qubit) {
    // Qubit |0> corresponds to the spin-up electron in that dot, |1> to spin-down.
    Matrix p = Matrix::Zero(2, 2);
    p(spin == Spin::Up ? 0 : 1, spin == Spin::Up ? 0 : 1) = 1.0;
    return qubit == 1 ? hilbert::kron(p, hilbert::identity2())
                      : hilbert::kron(hilbert::identity2(), p);
}

// Full-space indices of the two-qubit basis {|0101>, |0110>, |1001>, |1010>}.
constexpr std::array<int, 4> kTwoQubitEmbedding = {5, 6, 9, 10};

} // namespace

double vn_entropy(const Matrix& rho) {
    if (rho.rows() != rho.cols()) {
        throw std::invalid_argument("vn_entropy: matrix must be square");
    }
    return shannon(hermitian_eigenvalues(rho));
}

double svne(const Matrix& rho16, Subsystem sub) {
    return vn_entropy(hilbert::partial_trace(rho16, sub));
}

double qmi(const Matrix& rho16) {
    require_square(rho16, hilbert::kDim, "qmi");
    return svne(rho16, Subsystem::QD1) + svne(rho16, Subsystem::QD2) - vn_entropy(rho16);
}

double negativity(const Matrix& rho16, Subsystem sub) {
    const Eigen::VectorXd evs = hermitian_eigenvalues(hilbert::partial_transpose(rho16, sub));
    double acc = 0.0;
    for (Eigen::Index i = 0; i < evs.size(); ++i) {
        acc += std::abs(evs(i)) - evs(i);
    }
    return 0.5 * acc;
}

TomographicEntropies tomographic_entropies(const Matrix& rho16) {
    require_square(rho16, hilbert::kDim, "tomographic_entropies");
    TomographicEntropies out;
    out.S12 = shannon(rho16.diagonal().real());
    out.S1 = shannon(hilbert::partial_trace(rho16, Subsystem::QD1).diagonal().real());
    out.S2 = shannon(hilbert::partial_trace(rho16, Subsystem::QD2).diagonal().real());
    return out;
}

double tei(const Matrix& rho16) {
    const TomographicEntropies s = tomographic_entropies(rho16);
    return s.S1 + s.S2 - s.S12;
}

double concurrence(const Matrix& rho4) {
    require_square(rho4, 4, "concurrence");
    const Matrix yy = hilbert::kron(hilbert::pauli_y(), hilbert::pauli_y());
    const Matrix flipped = yy * rho4.conjugate() * yy;
    // lambda_k are the square roots of the eigenvalues of rho * rho~, descending.
    const Eigen::VectorXcd evs = Eigen::ComplexEigenSolver<Matrix>(rho4 * flipped, false)
                                     .eigenvalues();
    std::array<double, 4> lambda{};
    for (int i = 0; i < 4; ++i) {
        lambda[i] = std::sqrt(std::max(evs(i).real(), 0.0));
    }
    std::sort(lambda.begin(), lambda.end(), std::greater<>());
    return std::max(0.0, lambda[0] - lambda[1] - lambda[2] - lambda[3]);
}

ProjectedConcurrence concurrence_projected(const Matrix& rho16) {
    require_square(rho16, hilbert::kDim, "concurrence_projected");
    Matrix block(4, 4);
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            block(i, j) = rho16(kTwoQubitEmbedding[i], kTwoQubitEmbedding[j]);
        }
    }
    ProjectedConcurrence out;
    out.weight = block.trace().real();
    if (out.weight <= kEigClip) {
        out.value = 0.0;
        return out;
    }
    out.value = concurrence(block / out.weight);
    return out;
}

double covariance(const Matrix& rho16, Spin s1, Spin s2) {
    require_square(rho16, hilbert::kDim, "covariance");
    const Matrix n1 = hilbert::number_operator(1, s1);
    const Matrix n2 = hilbert::number_operator(2, s2);
    const double e12 = (rho16 * n1 * n2).trace().real();
    const double e1 = (rho16 * n1).trace().real();
    const double e2 = (rho16 * n2).trace().real();
    return 4.0 * std::abs(e12 - e1 * e2);
}

double covariance_2qb(const Matrix& rho4, Spin s1, Spin s2) {
    require_square(rho4, 4, "covariance_2qb");
    const Matrix n1 = number_op_2qb(s1, 1);
    const Matrix n2 = number_op_2qb(s2, 2);
    const double e12 = (rho4 * n1 * n2).trace().real();
    const double e1 = (rho4 * n1).trace().real();
    const double e2 = (rho4 * n2).trace().real();
    return 4.0 * std::abs(e12 - e1 * e2);
}

double covariance_analytic(double theta) {
    const double s = std::sin(2.0 * theta);
    return s * s;
}

std::array<double, 4> covariances(const Matrix& rho16) {
    std::array<double, 4> out{};
    for (std::size_t k = 0; k < kSpinPairs.size(); ++k) {
        out[k] = covariance(rho16, kSpinPairs[k].first, kSpinPairs[k].second);
    }
    return out;
}

IndicatorSet indicator_set(const Matrix& rho16) {
    IndicatorSet set;
    set.svne = svne(rho16);
    set.qmi = qmi(rho16);
    set.neg = negativity(rho16);
    set.tei = tei(rho16);
    set.covariances = covariances(rho16);
    return set;
}

} // namespace cpbs::quantifiers
