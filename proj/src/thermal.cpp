#include "qxy/thermal.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qxy {

namespace {

void require_positive_temperature(double t, const char* who) {
    if (!(t > 0.0)) {
        throw std::domain_error(std::string(who) +
                                ": temperature must be > 0 (the T -> 0 limit "
                                "is zero_temperature_fidelity)");
    }
}

struct ShiftedWeights {
    std::array<double, 4> wt;  // exp(-(E_i - e_min)/T), in (0, 1]
    double sum;                // shifted partition function, in [1, 4]
    double e_min;
};

ShiftedWeights shifted_weights(const std::array<double, 4>& energies,
                               double t) {
    ShiftedWeights sw;
    sw.e_min = *std::min_element(energies.begin(), energies.end());
    sw.sum = 0.0;
    for (int i = 0; i < 4; ++i) {
        sw.wt[i] = std::exp(-(energies[i] - sw.e_min) / t);
        sw.sum += sw.wt[i];
    }
    return sw;
}

}  // namespace

double partition_function(const Params& p) {
    p.validate();
    require_positive_temperature(p.temperature, "partition_function");
    const EigenSystem es = analytic_eigensystem(p);
    double z = 0.0;
    for (double e : es.energies) {
        z += std::exp(-e / p.temperature);
    }
    return z;
}

ThermalState thermal_state_from_eigensystem(const EigenSystem& es,
                                            double temperature) {
    require_positive_temperature(temperature, "thermal_density_matrix");
    const ShiftedWeights sw = shifted_weights(es.energies, temperature);

    ThermalState state;
    state.temperature = temperature;
    state.log_z = -sw.e_min / temperature + std::log(sw.sum);
    state.z = std::exp(state.log_z);
    state.rho = Matrix4::Zero();
    for (int i = 0; i < 4; ++i) {
        state.probs[i] = sw.wt[i] / sw.sum;
        state.rho +=
            state.probs[i] * (es.states[i] * es.states[i].adjoint());
    }
    return state;
}

ThermalState thermal_density_matrix(const Params& p) {
    return thermal_state_from_eigensystem(analytic_eigensystem(p),
                                          p.temperature);
}

XStateEntries x_state_entries(const Params& p) {
    p.validate();
    require_positive_temperature(p.temperature, "x_state_entries");
    const EigenSystem es = analytic_eigensystem(p);
    const ShiftedWeights sw = shifted_weights(es.energies, p.temperature);
    const double g = p.gamma;

    XStateEntries xs;
    xs.z = sw.sum;

    const double b1 = sw.wt[0] / (es.n[0] * es.n[0]);
    const double b2 = sw.wt[1] / (es.n[1] * es.n[1]);
    xs.w1 = b1 * es.a[0] * es.a[0] + b2 * es.a[1] * es.a[1];
    xs.w2 = b1 + b2;
    xs.y = b1 * es.a[0] + b2 * es.a[1];

    if (g == 0.0) {
        // The b_i formulas divide by N3 N4 = 0 here; the even block is
        // diagonal, so the entries are the Boltzmann weights of the basis
        // states assigned by the degenerate-direction convention.
        const bool psi4_is_11 = es.eta > 0.0;
        xs.v1 = psi4_is_11 ? sw.wt[3] : sw.wt[2];
        xs.v2 = psi4_is_11 ? sw.wt[2] : sw.wt[3];
        xs.u = 0.0;
    } else {
        const double b3 = sw.wt[2] / (es.n[2] * es.n[2]);
        const double b4 = sw.wt[3] / (es.n[3] * es.n[3]);
        xs.v1 = b3 * es.a[2] * es.a[2] + b4 * es.a[3] * es.a[3];
        xs.v2 = (b3 + b4) * g * g;
        xs.u = (b3 * es.a[2] + b4 * es.a[3]) * g;
    }
    return xs;
}

double fidelity(const ThermalState& state, const StateVector4& pure) {
    if (std::abs(pure.squaredNorm() - 1.0) > 1e-12) {
        throw std::invalid_argument("fidelity: pure state is not normalized");
    }
    const Complex overlap = pure.dot(state.rho * pure);
    if (std::abs(overlap.imag()) > 1e-13) {
        throw std::runtime_error(
            "fidelity: overlap has a non-negligible imaginary part");
    }
    double f = overlap.real();
    if (f < -1e-12 || f > 1.0 + 1e-12) {
        throw std::runtime_error(
            "fidelity: value outside [0, 1] beyond rounding tolerance");
    }
    return std::clamp(f, 0.0, 1.0);
}

double ground_state_fidelity_closed_form(const Params& p) {
    const XStateEntries xs = x_state_entries(p);
    const double a1 = analytic_eigensystem(p).a[0];
    return (xs.w2 + 2.0 * xs.y * a1 + xs.w1 * a1 * a1) /
           (xs.z * (1.0 + a1 * a1));
}

double zero_temperature_fidelity(const Params& p) {
    switch (classify_ground_state(p).tag) {
        case GroundStateTag::AnisotropyGround:
            return 1.0;
        case GroundStateTag::IsotropyGround:
            return 0.0;
        case GroundStateTag::Degenerate:
            return 0.5;
    }
    return 0.5;  // unreachable
}

}  // namespace qxy
