#pragma once

#include <array>
#include <complex>

#include <Eigen/Dense>

namespace qxy {

using Complex = std::complex<double>;
using Matrix2 = Eigen::Matrix2cd;
using Matrix4 = Eigen::Matrix4cd;
using StateVector4 = Eigen::Vector4cd;

// Fixed two-qubit product basis used by every matrix and state vector in
// this library, in this order:
//
//   index 0: |11>    index 1: |10>    index 2: |01>    index 3: |00>
//
// |1> is spin up, |0> is spin down, and the first digit belongs to qubit 1.
inline constexpr int kIndex11 = 0;
inline constexpr int kIndex10 = 1;
inline constexpr int kIndex01 = 2;
inline constexpr int kIndex00 = 3;

// Parameters of the two-qubit anisotropic XY exchange in a transverse field
// that may differ between the qubits:
//
//   H = -(1+gamma)/2 sx1 sx2 - (1-gamma)/2 sy1 sy2 - B (sz1 + lambda sz2)
//
// gamma is the exchange anisotropy, b_field the field strength B on qubit 1,
// and lambda_field the relative field strength lambda on qubit 2.
// temperature is used by the thermal-state routines only; it lives here so a
// single bundle describes one simulation point. Units are dimensionless with
// the isotropic exchange strength and Boltzmann constant set to 1.
struct Params {
    double gamma = 0.2;
    double lambda_field = 1.0;
    double b_field = 1.0;
    double temperature = 0.2;

    // Throws std::invalid_argument naming the offending field if any value
    // is non-finite or if temperature is negative.
    void validate() const;
};

// Spin-1/2 component operators for both qubits:
//   s1[k] = sigma_k/2 (x) id,   s2[k] = id (x) sigma_k/2
// with component index k in {0:x, 1:y, 2:z}.
struct SpinOperators {
    std::array<Matrix4, 3> s1;
    std::array<Matrix4, 3> s2;
};

SpinOperators build_spin_operators();

// Hamiltonian matrix in the fixed basis. All entries are purely real by
// construction (the sy1 sy2 product contributes real numbers with exact zero
// imaginary parts), and the nonzero pattern is exactly the "X" pattern: the
// main diagonal plus the anti-diagonal.
Matrix4 build_hamiltonian(const Params& p);

// The Hamiltonian conserves spin-flip parity, so it decomposes over the
// parity-even subspace {|11>, |00>} and the parity-odd subspace {|10>, |01>}.
struct BlockPair {
    Matrix2 even;  // rows/cols ordered {|11>, |00>}
    Matrix2 odd;   // rows/cols ordered {|10>, |01>}
};

// Splits an X-patterned matrix into its two parity blocks. Throws
// std::invalid_argument if any of the eight cross-parity entries exceeds
// 1e-14 in magnitude.
BlockPair block_decompose(const Matrix4& h);

// Inverse of block_decompose: embeds the blocks into a 4x4 matrix with exact
// zeros in the cross-parity positions.
Matrix4 reassemble_blocks(const BlockPair& blocks);

// True if every entry of m - m^dagger has magnitude <= tol.
bool is_hermitian(const Matrix4& m, double tol = 1e-13);

// True if the eight entries coupling {|11>,|00>} to {|10>,|01>} all have
// magnitude <= tol.
bool has_x_pattern(const Matrix4& m, double tol = 1e-14);

}  // namespace qxy
