#pragma once

#include <array>

#include "qxy/model.hpp"

// Brute-force numerical routines used to cross-check the closed-form physics
// in this library. Everything here is deliberately independent of the
// analytic modules: eigensolves use a hand-rolled cyclic Jacobi iteration and
// thermal states are assembled from those numerical eigenpairs, so the two
// paths share no formulas and can falsify each other.
namespace qxy::oracle {

struct DenseEigenResult {
    Eigen::Vector4d eigenvalues;   // ascending
    Eigen::Matrix4d eigenvectors;  // orthonormal columns, paired with values
};

// Cyclic Jacobi eigendecomposition of a real symmetric matrix (passed as a
// complex matrix whose imaginary parts and asymmetry must not exceed 1e-13;
// otherwise std::invalid_argument). Sweeps run until the off-diagonal
// Frobenius norm falls below 1e-15 times the matrix Frobenius norm, with a
// hard cap of 50 sweeps.
DenseEigenResult jacobi_eigen(const Matrix4& a);

// Eigenvalues of a Hermitian matrix via the 2n x 2n real-symmetric embedding
// [[Re, -Im], [Im, Re]], whose spectrum is that of the input with every
// eigenvalue doubled. Returned ascending.
std::array<double, 4> hermitian_eigenvalues(const Matrix4& a);

// Thermal (Gibbs) state exp(-a/t) / Tr exp(-a/t) of a real symmetric matrix
// at temperature t > 0 (std::domain_error otherwise), built from the Jacobi
// eigenpairs. Weights are computed relative to the smallest eigenvalue so the
// result stays finite for any t > 0.
Matrix4 gibbs_state(const Matrix4& a, double t);

// Fidelity <psi| rho |psi> between a density matrix and a pure state.
// Requires rho Hermitian (1e-13) with unit trace (1e-12) and psi normalized
// (1e-12); throws std::invalid_argument otherwise.
double direct_fidelity(const Matrix4& rho, const StateVector4& psi);

}  // namespace qxy::oracle
