#include "qxy/spectrum.hpp"

#include <cmath>
#include <stdexcept>

namespace qxy {

namespace {

struct FieldCombos {
    double xi;
    double eta;
    double s;  // sqrt(xi^2 + 1)
    double r;  // sqrt(eta^2 + gamma^2)
};

FieldCombos field_combos(const Params& p) {
    const double xi = p.b_field * (1.0 - p.lambda_field);
    const double eta = p.b_field * (1.0 + p.lambda_field);
    return {xi, eta, std::hypot(xi, 1.0), std::hypot(eta, p.gamma)};
}

StateVector4 odd_state(double a10, double a01) {
    StateVector4 v = StateVector4::Zero();
    const double n = std::hypot(a10, a01);
    v(kIndex10) = a10 / n;
    v(kIndex01) = a01 / n;
    return v;
}

StateVector4 even_state(double a11, double a00) {
    StateVector4 v = StateVector4::Zero();
    const double n = std::hypot(a11, a00);
    v(kIndex11) = a11 / n;
    v(kIndex00) = a00 / n;
    return v;
}

StateVector4 basis_state(int index) {
    StateVector4 v = StateVector4::Zero();
    v(index) = 1.0;
    return v;
}

}  // namespace

EigenSystem analytic_eigensystem(const Params& p) {
    p.validate();
    const FieldCombos fc = field_combos(p);
    const double g = p.gamma;

    EigenSystem es;
    es.xi = fc.xi;
    es.eta = fc.eta;
    es.energies = {-fc.s, fc.s, fc.r, -fc.r};

    // Odd block: evaluate the a that adds (no cancellation), derive the
    // other from a1 a2 = -1.
    double a1, a2;
    if (fc.xi >= 0.0) {
        a1 = fc.xi + fc.s;
        a2 = -1.0 / a1;
    } else {
        a2 = fc.xi - fc.s;
        a1 = -1.0 / a2;
    }

    // Even block: same scheme with a3 a4 = -gamma^2. At gamma == 0 the
    // derived member is exactly zero (or both vanish when eta == 0 too).
    double a3, a4;
    if (fc.eta >= 0.0) {
        a4 = fc.eta + fc.r;
        a3 = (a4 == 0.0) ? 0.0 : -(g * g) / a4;
    } else {
        a3 = fc.eta - fc.r;
        a4 = -(g * g) / a3;
    }
    es.a = {a1, a2, a3, a4};

    es.states[0] = odd_state(a1, 1.0);
    es.states[1] = odd_state(a2, 1.0);
    es.n = {std::hypot(a1, 1.0), std::hypot(a2, 1.0), std::hypot(a3, g),
            std::hypot(a4, g)};

    if (g == 0.0) {
        // Degenerate-direction convention: psi4 is the basis state whose
        // diagonal energy is -|eta| (the entry for |11> is -eta).
        const bool psi4_is_11 = fc.eta > 0.0;
        es.states[3] = basis_state(psi4_is_11 ? kIndex11 : kIndex00);
        es.states[2] = basis_state(psi4_is_11 ? kIndex00 : kIndex11);
        es.n[2] = 1.0;
        es.n[3] = 1.0;
    } else {
        es.states[2] = even_state(a3, g);
        es.states[3] = even_state(a4, g);
    }
    return es;
}

double energy_gap(const Params& p) {
    p.validate();
    const FieldCombos fc = field_combos(p);
    return -fc.s + fc.r;
}

GroundStateClass classify_ground_state(const Params& p, double tol) {
    const double gap = energy_gap(p);
    if (gap < -tol) {
        return {GroundStateTag::AnisotropyGround, gap};
    }
    if (gap > tol) {
        return {GroundStateTag::IsotropyGround, gap};
    }
    return {GroundStateTag::Degenerate, gap};
}

CrossingLocus crossing_locus_analytic(double gamma, const LocusWindow& w) {
    if (!std::isfinite(gamma)) {
        throw std::invalid_argument("crossing_locus_analytic: gamma must be finite");
    }
    if (!(w.b_min < w.b_max) || w.b_count < 2) {
        throw std::invalid_argument(
            "crossing_locus_analytic: window requires b_min < b_max and "
            "b_count >= 2");
    }
    if (!(w.lambda_min < w.lambda_max)) {
        throw std::invalid_argument(
            "crossing_locus_analytic: window requires lambda_min < lambda_max");
    }

    CrossingLocus locus;
    locus.axis1 = "lambda_field";
    locus.axis2 = "b_field";

    const bool line_case = std::abs(gamma) == 1.0;
    Polyline current;
    auto flush = [&] {
        if (!current.empty()) {
            locus.polylines.push_back(current);
        }
        current.clear();
    };

    for (int i = 0; i < w.b_count; ++i) {
        const double b =
            w.b_min + static_cast<double>(i) * (w.b_max - w.b_min) /
                          static_cast<double>(w.b_count - 1);
        if (line_case) {
            current.push_back({0.0, b});
            continue;
        }
        if (b == 0.0) {
            // The curve diverges here; emit an explicit break (empty gap
            // between polylines) rather than a point or an error.
            flush();
            continue;
        }
        const double lambda = (1.0 - gamma * gamma) / (4.0 * b * b);
        if (lambda < w.lambda_min || lambda > w.lambda_max) {
            flush();
            continue;
        }
        current.push_back({lambda, b});
    }
    flush();
    return locus;
}

}  // namespace qxy
