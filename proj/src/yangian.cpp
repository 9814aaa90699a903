#include "qxy/yangian.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "qxy/spectrum.hpp"
#include "qxy/thermal.hpp"

namespace qxy {

namespace {

void require_finite(double value, const char* name) {
    if (!std::isfinite(value)) {
        throw std::invalid_argument(std::string("YangianParams.") + name +
                                    " must be finite");
    }
}

}  // namespace

void YangianParams::validate() const {
    require_finite(mu, "mu");
    require_finite(nu, "nu");
    require_finite(lambda_y, "lambda_y");
}

YangianOperators build_generators(const YangianParams& yp) {
    yp.validate();
    const SpinOperators spins = build_spin_operators();
    const Complex i_unit(0.0, 1.0);

    YangianOperators out;
    for (int c = 0; c < 3; ++c) {
        const int a = (c + 1) % 3;
        const int b = (c + 2) % 3;
        const Matrix4 cross = spins.s1[a] * spins.s2[b] - spins.s1[b] * spins.s2[a];
        out.i_ops[c] = spins.s1[c] + spins.s2[c];
        out.j_ops[c] = yp.mu * spins.s1[c] + yp.nu * spins.s2[c] +
                       i_unit * yp.lambda_y * cross;
    }
    out.i_plus = out.i_ops[0] + i_unit * out.i_ops[1];
    out.i_minus = out.i_ops[0] - i_unit * out.i_ops[1];
    out.j_plus = out.j_ops[0] + i_unit * out.j_ops[1];
    out.j_minus = out.j_ops[0] - i_unit * out.j_ops[1];
    out.j3 = out.j_ops[2];
    return out;
}

TransitionResult apply_transition(const YangianOperators& ops, Transition t,
                                  const StateVector4& state) {
    if (std::abs(state.norm() - 1.0) > 1e-12) {
        throw std::invalid_argument(
            "apply_transition: input state must be normalized");
    }

    const Matrix4* op = nullptr;
    switch (t) {
        case Transition::JPlus: op = &ops.j_plus; break;
        case Transition::JMinus: op = &ops.j_minus; break;
        case Transition::J3: op = &ops.j3; break;
        case Transition::IPlus: op = &ops.i_plus; break;
        case Transition::IMinus: op = &ops.i_minus; break;
    }

    const StateVector4 image = (*op) * state;
    const double norm = image.norm();

    TransitionResult result;
    result.amplitude = norm;
    if (norm <= 1e-13) {
        result.annihilated = true;
        result.amplitude = 0.0;
        return result;
    }

    StateVector4 normalized = image / norm;
    // Canonical global phase: rotate so the largest-magnitude component is
    // real positive (ties break toward the lowest basis index).
    int pivot = 0;
    double best = std::abs(normalized(0));
    for (int k = 1; k < 4; ++k) {
        const double mag = std::abs(normalized(k));
        if (mag > best + 1e-15) {
            best = mag;
            pivot = k;
        }
    }
    const Complex phase = normalized(pivot) / std::abs(normalized(pivot));
    normalized /= phase;
    result.state = normalized;
    return result;
}

std::optional<double> transition_fidelity(const Params& p,
                                          const YangianParams& yp,
                                          Transition t) {
    if (t != Transition::JPlus && t != Transition::JMinus) {
        throw std::invalid_argument(
            "transition_fidelity: only JPlus and JMinus are supported");
    }
    if (p.temperature <= 0.0) {
        throw std::domain_error(
            "transition_fidelity: temperature must be positive");
    }

    const EigenSystem es = analytic_eigensystem(p);
    const YangianOperators ops = build_generators(yp);
    const TransitionResult tr = apply_transition(ops, t, es.states[0]);
    if (tr.annihilated) {
        return std::nullopt;
    }
    const ThermalState ts = thermal_state_from_eigensystem(es, p.temperature);
    return fidelity(ts, tr.state);
}

}  // namespace qxy
