#include "qxy/model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <unsupported/Eigen/KroneckerProduct>

namespace qxy {

namespace {

void require_finite(double value, const char* field) {
    if (!std::isfinite(value)) {
        throw std::invalid_argument(std::string("Params.") + field +
                                    " must be finite");
    }
}

Matrix2 pauli_x() {
    Matrix2 m;
    m << 0, 1,  //
        1, 0;
    return m;
}

Matrix2 pauli_y() {
    Matrix2 m;
    m << Complex(0, 0), Complex(0, -1),  //
        Complex(0, 1), Complex(0, 0);
    return m;
}

Matrix2 pauli_z() {
    Matrix2 m;
    m << 1, 0,  //
        0, -1;
    return m;
}

}  // namespace

void Params::validate() const {
    require_finite(gamma, "gamma");
    require_finite(lambda_field, "lambda_field");
    require_finite(b_field, "b_field");
    require_finite(temperature, "temperature");
    if (temperature < 0.0) {
        throw std::invalid_argument("Params.temperature must be >= 0");
    }
}

SpinOperators build_spin_operators() {
    const Matrix2 id = Matrix2::Identity();
    const std::array<Matrix2, 3> half = {0.5 * pauli_x(), 0.5 * pauli_y(),
                                         0.5 * pauli_z()};
    SpinOperators ops;
    for (int k = 0; k < 3; ++k) {
        ops.s1[k] = Eigen::kroneckerProduct(half[k], id);
        ops.s2[k] = Eigen::kroneckerProduct(id, half[k]);
    }
    return ops;
}

Matrix4 build_hamiltonian(const Params& p) {
    p.validate();
    const Matrix2 id = Matrix2::Identity();
    const Matrix4 xx = Eigen::kroneckerProduct(pauli_x(), pauli_x());
    const Matrix4 yy = Eigen::kroneckerProduct(pauli_y(), pauli_y());
    const Matrix4 z1 = Eigen::kroneckerProduct(pauli_z(), id);
    const Matrix4 z2 = Eigen::kroneckerProduct(id, pauli_z());
    return -0.5 * (1.0 + p.gamma) * xx - 0.5 * (1.0 - p.gamma) * yy -
           p.b_field * (z1 + p.lambda_field * z2);
}

BlockPair block_decompose(const Matrix4& h) {
    if (!has_x_pattern(h)) {
        throw std::invalid_argument(
            "block_decompose: matrix does not have the X pattern over the "
            "parity subspaces");
    }
    BlockPair blocks;
    blocks.even << h(kIndex11, kIndex11), h(kIndex11, kIndex00),  //
        h(kIndex00, kIndex11), h(kIndex00, kIndex00);
    blocks.odd << h(kIndex10, kIndex10), h(kIndex10, kIndex01),  //
        h(kIndex01, kIndex10), h(kIndex01, kIndex01);
    return blocks;
}

Matrix4 reassemble_blocks(const BlockPair& blocks) {
    Matrix4 m = Matrix4::Zero();
    m(kIndex11, kIndex11) = blocks.even(0, 0);
    m(kIndex11, kIndex00) = blocks.even(0, 1);
    m(kIndex00, kIndex11) = blocks.even(1, 0);
    m(kIndex00, kIndex00) = blocks.even(1, 1);
    m(kIndex10, kIndex10) = blocks.odd(0, 0);
    m(kIndex10, kIndex01) = blocks.odd(0, 1);
    m(kIndex01, kIndex10) = blocks.odd(1, 0);
    m(kIndex01, kIndex01) = blocks.odd(1, 1);
    return m;
}

bool is_hermitian(const Matrix4& m, double tol) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool has_x_pattern(const Matrix4& m, double tol) {
    const std::array<int, 2> even = {kIndex11, kIndex00};
    const std::array<int, 2> odd = {kIndex10, kIndex01};
    for (int i : even) {
        for (int j : odd) {
            if (std::abs(m(i, j)) > tol || std::abs(m(j, i)) > tol) {
                return false;
            }
        }
    }
    return true;
}

}  // namespace qxy
