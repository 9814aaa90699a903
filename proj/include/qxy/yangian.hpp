#pragma once

#include <optional>

#include "qxy/model.hpp"

namespace qxy {

// Parameters of the two-site transition generators. mu and nu weight the
// single-qubit spins; lambda_y scales the antisymmetric cross-product term.
// (lambda_y is unrelated to Params.lambda_field, which shapes the magnetic
// field; the two knobs never mix.)
struct YangianParams {
    double mu = 1.0;
    double nu = 1.0;
    double lambda_y = 0.0;

    // Throws std::invalid_argument naming the offending field if any value
    // is non-finite.
    void validate() const;
};

// Generator pair built on the spin operators:
//
//   I_a = S1_a + S2_a
//   J_a = mu S1_a + nu S2_a + i lambda_y (S1 x S2)_a
//
// with the operator cross product (S1 x S2)_c = eps_cab S1_a S2_b. Both
// families transform as vectors under total rotations:
//
//   [I_a, I_b] = i eps_abc I_c      [I_a, J_b] = i eps_abc J_c
//
// I_a is Hermitian. J_a is Hermitian only for lambda_y == 0; in general
// J(mu, nu, lambda_y)_a^dagger = J(mu, nu, -lambda_y)_a, because the cross
// product term is itself Hermitian and the explicit i flips sign under the
// adjoint. The ladder combinations are X_plus/minus = X_x +- i X_y.
struct YangianOperators {
    std::array<Matrix4, 3> i_ops;  // components {x, y, z}
    std::array<Matrix4, 3> j_ops;
    Matrix4 i_plus, i_minus;
    Matrix4 j_plus, j_minus, j3;  // j3 is the z component of J
};

YangianOperators build_generators(const YangianParams& yp);

enum class Transition { JPlus, JMinus, J3, IPlus, IMinus };

// Result of applying one generator to a normalized state. If the image norm
// is <= 1e-13 the state is annihilated and that is reported as a result, not
// an error. Otherwise `state` holds the normalized image with a canonical
// global phase (its largest-magnitude component is made real positive; ties
// break toward the lowest basis index) and `amplitude` holds the
// pre-normalization norm.
struct TransitionResult {
    bool annihilated = false;
    StateVector4 state = StateVector4::Zero();
    double amplitude = 0.0;
};

// Applies the chosen generator. Throws std::invalid_argument if the input
// state is not normalized within 1e-12.
TransitionResult apply_transition(const YangianOperators& ops, Transition t,
                                  const StateVector4& state);

// Fidelity between the thermal state at p.temperature and the normalized
// image of psi1 (the lowest odd-block eigenstate) under J+ or J-. For any
// generic generator parameters J+ maps psi1 to |11> and J- maps it to |00>,
// so these fidelities equal the corresponding diagonal entries of rho.
// Returns nullopt when the generator annihilates psi1. Throws
// std::domain_error for T <= 0 and std::invalid_argument for transitions
// other than JPlus/JMinus.
std::optional<double> transition_fidelity(const Params& p,
                                          const YangianParams& yp,
                                          Transition t);

}  // namespace qxy
