#include "cpbs/hilbert.hpp"

#include <Eigen/Eigenvalues>

#include <stdexcept>

namespace cpbs::hilbert {

namespace {

using Complex = std::complex<double>;

void require_dim(const Matrix& m, int rows, int cols, const char* where) {
    if (m.rows() != rows || m.cols() != cols) {
        throw std::invalid_argument(std::string(where) + ": expected " + std::to_string(rows) +
                                    "x" + std::to_string(cols) + " matrix, got " +
                                    std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    }
}

int level_position(int dot, Spin spin) {
    if (dot != 1 && dot != 2) {
        throw std::invalid_argument("dot label must be 1 or 2");
    }
    return 2 * (dot - 1) + (spin == Spin::Up ? 0 : 1);
}

} // namespace

int basis_index(const Occupation& occ) {
    for (int n : {occ.n1up, occ.n1dn, occ.n2up, occ.n2dn}) {
        if (n != 0 && n != 1) {
            throw std::invalid_argument("occupation numbers must be 0 or 1");
        }
    }
    return 8 * (1 - occ.n1up) + 4 * (1 - occ.n1dn) + 2 * (1 - occ.n2up) + (1 - occ.n2dn);
}

Occupation occupation_of(int index) {
    if (index < 0 || index >= kDim) {
        throw std::out_of_range("basis index must be in [0, 16)");
    }
    Occupation occ;
    occ.n1up = 1 - ((index >> 3) & 1);
    occ.n1dn = 1 - ((index >> 2) & 1);
    occ.n2up = 1 - ((index >> 1) & 1);
    occ.n2dn = 1 - (index & 1);
    return occ;
}

int particle_number(int index) {
    const Occupation occ = occupation_of(index);
    return occ.n1up + occ.n1dn + occ.n2up + occ.n2dn;
}

Matrix identity2() { return Matrix::Identity(2, 2); }

Matrix pauli_x() {
    Matrix m(2, 2);
    m << 0.0, 1.0, 1.0, 0.0;
    return m;
}

Matrix pauli_y() {
    Matrix m(2, 2);
    m << 0.0, Complex(0.0, -1.0), Complex(0.0, 1.0), 0.0;
    return m;
}

Matrix pauli_z() {
    Matrix m(2, 2);
    m << 1.0, 0.0, 0.0, -1.0;
    return m;
}

Matrix sigma_plus() {
    Matrix m = Matrix::Zero(2, 2);
    m(0, 1) = 1.0;
    return m;
}

Matrix sigma_minus() {
    Matrix m = Matrix::Zero(2, 2);
    m(1, 0) = 1.0;
    return m;
}

Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

Matrix annihilation_operator(int dot, Spin spin) {
    const int pos = level_position(dot, spin);
    Matrix op = Matrix::Identity(1, 1);
    for (int k = 0; k < 4; ++k) {
        if (k < pos) {
            op = kron(op, pauli_z());
        } else if (k == pos) {
            op = kron(op, sigma_minus());
        } else {
            op = kron(op, identity2());
        }
    }
    return op;
}

Matrix creation_operator(int dot, Spin spin) {
    return annihilation_operator(dot, spin).adjoint();
}

Matrix number_operator(int dot, Spin spin) {
    const Matrix d = annihilation_operator(dot, spin);
    return d.adjoint() * d;
}

Matrix partial_trace(const Matrix& rho, Subsystem keep) {
    require_dim(rho, kDim, kDim, "partial_trace");
    Matrix out = Matrix::Zero(kDotDim, kDotDim);
    for (int i = 0; i < kDotDim; ++i) {
        for (int j = 0; j < kDotDim; ++j) {
            Complex sum(0.0, 0.0);
            for (int k = 0; k < kDotDim; ++k) {
                if (keep == Subsystem::QD1) {
                    sum += rho(i * kDotDim + k, j * kDotDim + k);
                } else {
                    sum += rho(k * kDotDim + i, k * kDotDim + j);
                }
            }
            out(i, j) = sum;
        }
    }
    return out;
}

Matrix partial_transpose(const Matrix& rho, Subsystem sub) {
    require_dim(rho, kDim, kDim, "partial_transpose");
    Matrix out(kDim, kDim);
    for (int a = 0; a < kDotDim; ++a) {
        for (int b = 0; b < kDotDim; ++b) {
            for (int c = 0; c < kDotDim; ++c) {
                for (int d = 0; d < kDotDim; ++d) {
                    if (sub == Subsystem::QD1) {
                        out(a * kDotDim + b, c * kDotDim + d) = rho(c * kDotDim + b, a * kDotDim + d);
                    } else {
                        out(a * kDotDim + b, c * kDotDim + d) = rho(a * kDotDim + d, c * kDotDim + b);
                    }
                }
            }
        }
    }
    return out;
}

Vector basis_ket(int index) {
    if (index < 0 || index >= kDim) {
        throw std::out_of_range("basis index must be in [0, 16)");
    }
    Vector v = Vector::Zero(kDim);
    v(index) = 1.0;
    return v;
}

bool is_hermitian(const Matrix& a, double tol) {
    if (a.rows() != a.cols()) return false;
    return (a - a.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool is_density(const Matrix& rho, double trace_tol, double herm_tol, double eig_tol) {
    if (rho.rows() != rho.cols()) return false;
    if (std::abs(rho.trace().real() - 1.0) > trace_tol) return false;
    if (std::abs(rho.trace().imag()) > trace_tol) return false;
    if (!is_hermitian(rho, herm_tol)) return false;
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (rho + rho.adjoint()),
                                             Eigen::EigenvaluesOnly);
    return es.eigenvalues().minCoeff() >= -eig_tol;
}

} // namespace cpbs::hilbert
