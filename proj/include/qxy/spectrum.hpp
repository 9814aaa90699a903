#pragma once

#include <string>
#include <vector>

#include "qxy/model.hpp"

namespace qxy {

// Closed-form eigendecomposition of the model Hamiltonian.
//
// With the field combinations xi = B(1 - lambda) and eta = B(1 + lambda),
// the four eigenpairs are, in this library's fixed numbering:
//
//   E1 = -sqrt(xi^2 + 1)          psi1 = (a1|10> +     |01>) / N1
//   E2 = +sqrt(xi^2 + 1)          psi2 = (a2|10> +     |01>) / N2
//   E3 = +sqrt(eta^2 + gamma^2)   psi3 = (a3|11> + gamma|00>) / N3
//   E4 = -sqrt(eta^2 + gamma^2)   psi4 = (a4|11> + gamma|00>) / N4
//
//   a1 = xi + sqrt(xi^2 + 1)      a2 = xi - sqrt(xi^2 + 1)
//   a3 = eta - sqrt(eta^2 + g^2)  a4 = eta + sqrt(eta^2 + g^2)
//
// psi1/psi2 live in the parity-odd block and psi3/psi4 in the parity-even
// block. The products a1 a2 = -1 and a3 a4 = -gamma^2 are exact algebraic
// identities; the implementation computes the cancellation-prone member of
// each pair from its partner through these identities, so orthogonality is
// exact and no catastrophic cancellation occurs for large |xi| or |eta|.
//
// Degenerate-direction convention: at gamma == 0 the even-block formulas
// collapse (psi3 or psi4 would be the zero vector), so the even eigenvectors
// are returned as the basis states {|11>, |00>} themselves, assigned by
// energy sign: psi4 takes the state with energy -|eta| (that is |11> for
// eta > 0, else |00>) and psi3 takes the other one.
struct EigenSystem {
    std::array<double, 4> energies;      // E1..E4 in the numbering above
    std::array<StateVector4, 4> states;  // psi1..psi4, normalized
    double xi = 0.0;
    double eta = 0.0;
    std::array<double, 4> a;  // a1..a4
    std::array<double, 4> n;  // normalizations N1..N4
};

EigenSystem analytic_eigensystem(const Params& p);

// E1 - E4: negative when the exchange-dominated odd-block state psi1 is the
// ground state, positive when the field-aligned even-block state psi4 is.
double energy_gap(const Params& p);

enum class GroundStateTag {
    AnisotropyGround,  // psi1 lowest (gap < -tol)
    IsotropyGround,    // psi4 lowest (gap > +tol)
    Degenerate,        // |gap| <= tol: levels cross
};

struct GroundStateClass {
    GroundStateTag tag;
    double gap;  // the E1 - E4 value that was classified
};

GroundStateClass classify_ground_state(const Params& p, double tol = 1e-12);

using Point2 = std::array<double, 2>;
using Polyline = std::vector<Point2>;

// A zero set of the energy gap in a two-parameter plane, stored as ordered
// polylines of (axis1, axis2) points. Every emitted point re-evaluates to
// |gap| <= 1e-9.
struct CrossingLocus {
    std::string axis1;
    std::string axis2;
    std::vector<Polyline> polylines;
};

// Sampling window for the analytic level-crossing curve in the
// (lambda_field, b_field) plane.
struct LocusWindow {
    double b_min = -1.5;
    double b_max = 1.5;
    int b_count = 301;
    double lambda_min = -1.5;
    double lambda_max = 1.5;
};

// Closed-form level-crossing locus at fixed gamma: the curve
// lambda = (1 - gamma^2) / (4 B^2), swept over the window's B range and
// clipped to its lambda range. For |gamma| == 1 this degenerates to the
// straight line lambda = 0 (which, unlike the generic curve, includes
// B == 0). For |gamma| != 1 there is no locus point at B == 0, so the curve
// is split into separate polylines on either side.
CrossingLocus crossing_locus_analytic(double gamma, const LocusWindow& w = {});

}  // namespace qxy
