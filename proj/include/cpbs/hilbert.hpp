// hilbert.hpp — 16-level occupation basis, Jordan–Wigner operators, subsystem algebra

#pragma once

#include <Eigen/Dense>

#include <array>
#include <complex>

namespace cpbs::hilbert {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr int kDim = 16;    // two dots x two spins, 2^4 occupation states
inline constexpr int kDotDim = 4;  // single dot (two spin levels)

enum class Spin { Up, Down };
enum class Subsystem { QD1, QD2 };

// Electron occupations of the four levels (1 = electron present).
struct Occupation {
    int n1up{0};
    int n1dn{0};
    int n2up{0};
    int n2dn{0};
};

// Basis convention: |Phi_n> has ket label (1-n1up, 1-n1dn, 1-n2up, 1-n2dn)
// read as a big-endian 4-bit number, so |0000> (all four levels filled) is
// index 0 and |1111> (empty) is index 15.
int basis_index(const Occupation& occ);
Occupation occupation_of(int index);
int particle_number(int index);

// 2x2 building blocks. Single-level basis order is (|0> = occupied, |1> = empty);
// sigma_minus = (sx - i sy)/2 = |1><0| empties a level, so N = d^dag d counts electrons.
Matrix identity2();
Matrix pauli_x();
Matrix pauli_y();
Matrix pauli_z();
Matrix sigma_plus();
Matrix sigma_minus();

Matrix kron(const Matrix& a, const Matrix& b);

// Jordan–Wigner annihilation operator with sigma_z strings preceding sigma_minus
// in the factor order (1up, 1dn, 2up, 2dn).
Matrix annihilation_operator(int dot, Spin spin);
Matrix creation_operator(int dot, Spin spin);
Matrix number_operator(int dot, Spin spin);

// Reduce a 16x16 state to the kept dot's 4 spin levels.
Matrix partial_trace(const Matrix& rho, Subsystem keep);
// Transpose only the chosen dot's indices.
Matrix partial_transpose(const Matrix& rho, Subsystem sub);

Vector basis_ket(int index);

bool is_hermitian(const Matrix& a, double tol = 1e-12);
bool is_density(const Matrix& rho, double trace_tol = 1e-10, double herm_tol = 1e-10,
                double eig_tol = 1e-8);

} // namespace cpbs::hilbert
