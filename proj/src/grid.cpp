#include "qxy/grid.hpp"

#include <cmath>
#include <cstdlib>
#include <ctime>
#include <stdexcept>

#include <omp.h>

#include "qxy/spectrum.hpp"
#include "qxy/thermal.hpp"
#include "qxy/version.hpp"

namespace qxy {

std::string quantity_name(Quantity q) {
    switch (q) {
        case Quantity::Gap: return "gap";
        case Quantity::Fidelity: return "fidelity";
        case Quantity::FidelityJPlus: return "fidelity_jplus";
        case Quantity::FidelityJMinus: return "fidelity_jminus";
        case Quantity::ZeroTFidelity: return "zero_t_fidelity";
    }
    throw std::logic_error("quantity_name: unknown quantity");
}

std::optional<Quantity> parse_quantity(std::string_view name) {
    if (name == "gap") return Quantity::Gap;
    if (name == "fidelity") return Quantity::Fidelity;
    if (name == "fidelity_jplus") return Quantity::FidelityJPlus;
    if (name == "fidelity_jminus") return Quantity::FidelityJMinus;
    if (name == "zero_t_fidelity") return Quantity::ZeroTFidelity;
    return std::nullopt;
}

double Axis::value(int i) const {
    if (count <= 1) {
        return min;
    }
    return min + (max - min) * static_cast<double>(i) /
                     static_cast<double>(count - 1);
}

bool apply_axis_value(Params& p, std::string_view name, double value) {
    if (name == "gamma") { p.gamma = value; return true; }
    if (name == "lambda_field") { p.lambda_field = value; return true; }
    if (name == "b_field") { p.b_field = value; return true; }
    if (name == "temperature") { p.temperature = value; return true; }
    return false;
}

NodeResult evaluate_quantity(Quantity q, const Params& p,
                             const YangianParams& yp) {
    try {
        switch (q) {
            case Quantity::Gap:
                return {energy_gap(p), CellStatus::Value};
            case Quantity::Fidelity:
                if (p.temperature <= 0.0) {
                    return {0.0, CellStatus::Undefined};
                }
                return {ground_state_fidelity_closed_form(p), CellStatus::Value};
            case Quantity::FidelityJPlus:
            case Quantity::FidelityJMinus: {
                if (p.temperature <= 0.0) {
                    return {0.0, CellStatus::Undefined};
                }
                const Transition t = (q == Quantity::FidelityJPlus)
                                         ? Transition::JPlus
                                         : Transition::JMinus;
                const std::optional<double> f = transition_fidelity(p, yp, t);
                if (!f) {
                    return {0.0, CellStatus::Undefined};
                }
                return {*f, CellStatus::Value};
            }
            case Quantity::ZeroTFidelity:
                return {zero_temperature_fidelity(p), CellStatus::Value};
        }
    } catch (const std::domain_error&) {
        return {0.0, CellStatus::Undefined};
    } catch (const std::invalid_argument&) {
        return {0.0, CellStatus::Undefined};
    }
    return {0.0, CellStatus::Undefined};
}

namespace {

bool known_axis_name(const std::string& name) {
    Params scratch;
    return apply_axis_value(scratch, name, 0.0);
}

void validate_axis(const Axis& axis, const char* label) {
    const std::string prefix = std::string("SweepConfig.") + label;
    if (!known_axis_name(axis.name)) {
        throw std::invalid_argument(
            prefix + ".name must be one of gamma, lambda_field, b_field, "
                     "temperature (got \"" + axis.name + "\")");
    }
    if (axis.count < 2) {
        throw std::invalid_argument(prefix + ".count must be >= 2");
    }
    if (!std::isfinite(axis.min) || !std::isfinite(axis.max)) {
        throw std::invalid_argument(prefix + " range must be finite");
    }
    if (!(axis.min < axis.max)) {
        throw std::invalid_argument(prefix + " range must satisfy min < max");
    }
}

bool thermal_quantity(Quantity q) {
    return q == Quantity::Fidelity || q == Quantity::FidelityJPlus ||
           q == Quantity::FidelityJMinus;
}

Grid2D make_grid_shell(const SweepConfig& cfg) {
    Grid2D g;
    g.quantity = cfg.quantity;
    g.axis1 = cfg.axis1;
    g.axis2 = cfg.axis2;

    g.fixed["gamma"] = cfg.base.gamma;
    g.fixed["lambda_field"] = cfg.base.lambda_field;
    g.fixed["b_field"] = cfg.base.b_field;
    g.fixed["temperature"] = cfg.base.temperature;
    g.fixed["mu"] = cfg.yangian.mu;
    g.fixed["nu"] = cfg.yangian.nu;
    g.fixed["lambda_y"] = cfg.yangian.lambda_y;
    g.fixed.erase(cfg.axis1.name);
    g.fixed.erase(cfg.axis2.name);

    const std::size_t n = static_cast<std::size_t>(cfg.axis1.count) *
                          static_cast<std::size_t>(cfg.axis2.count);
    g.values.assign(n, 0.0);
    g.status.assign(n, CellStatus::Value);

    g.metadata.tool = kToolName;
    g.metadata.version = kToolVersion;
    g.metadata.timestamp = deterministic_timestamp();
    return g;
}

NodeResult evaluate_node(const SweepConfig& cfg, int i1, int i2) {
    Params p = cfg.base;
    apply_axis_value(p, cfg.axis1.name, cfg.axis1.value(i1));
    apply_axis_value(p, cfg.axis2.name, cfg.axis2.value(i2));
    return evaluate_quantity(cfg.quantity, p, cfg.yangian);
}

void store(Grid2D& g, std::size_t idx, const NodeResult& r) {
    g.values[idx] = r.value;
    g.status[idx] = r.status;
}

}  // namespace

void SweepConfig::validate() const {
    validate_axis(axis1, "axis1");
    validate_axis(axis2, "axis2");
    if (axis1.name == axis2.name) {
        throw std::invalid_argument(
            "SweepConfig.axis2.name must differ from axis1.name");
    }
    try {
        base.validate();
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(std::string("SweepConfig.base: ") + e.what());
    }
    try {
        yangian.validate();
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(std::string("SweepConfig.yangian: ") +
                                    e.what());
    }
    if (threads < 0) {
        throw std::invalid_argument("SweepConfig.threads must be >= 0");
    }
    const bool sweeps_temperature =
        axis1.name == "temperature" || axis2.name == "temperature";
    if (thermal_quantity(quantity) && !sweeps_temperature &&
        base.temperature <= 0.0) {
        throw std::invalid_argument(
            "SweepConfig.base.temperature must be > 0 for quantity " +
            quantity_name(quantity));
    }
}

std::string deterministic_timestamp() {
    std::time_t when = std::time(nullptr);
    if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH")) {
        char* end = nullptr;
        const long long parsed = std::strtoll(epoch, &end, 10);
        if (end != epoch && *end == '\0') {
            when = static_cast<std::time_t>(parsed);
        }
    }
    std::tm tm_utc{};
    gmtime_r(&when, &tm_utc);
    char buf[32];
    std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buf;
}

bool Grid2D::operator==(const Grid2D& other) const {
    auto axis_equal = [](const Axis& a, const Axis& b) {
        return a.name == b.name && a.min == b.min && a.max == b.max &&
               a.count == b.count;
    };
    return quantity == other.quantity && axis_equal(axis1, other.axis1) &&
           axis_equal(axis2, other.axis2) && fixed == other.fixed &&
           values == other.values && status == other.status &&
           metadata.tool == other.metadata.tool &&
           metadata.version == other.metadata.version &&
           metadata.timestamp == other.metadata.timestamp;
}

Grid2D run_sweep_serial(const SweepConfig& cfg) {
    cfg.validate();
    Grid2D g = make_grid_shell(cfg);
    for (int i1 = 0; i1 < cfg.axis1.count; ++i1) {
        for (int i2 = 0; i2 < cfg.axis2.count; ++i2) {
            store(g, g.index(i1, i2), evaluate_node(cfg, i1, i2));
        }
    }
    return g;
}

Grid2D run_sweep_parallel(const SweepConfig& cfg) {
    cfg.validate();
    Grid2D g = make_grid_shell(cfg);
    const int workers = cfg.threads > 0 ? cfg.threads : omp_get_max_threads();
    const int n1 = cfg.axis1.count;
    const int n2 = cfg.axis2.count;
#pragma omp parallel for collapse(2) schedule(static) num_threads(workers)
    for (int i1 = 0; i1 < n1; ++i1) {
        for (int i2 = 0; i2 < n2; ++i2) {
            store(g, g.index(i1, i2), evaluate_node(cfg, i1, i2));
        }
    }
    return g;
}

Grid2D run_sweep(const SweepConfig& cfg) {
    if (cfg.threads == 1) {
        return run_sweep_serial(cfg);
    }
    return run_sweep_parallel(cfg);
}

}  // namespace qxy
