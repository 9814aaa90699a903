#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qxy/model.hpp"
#include "qxy/yangian.hpp"

namespace qxy {

// Scalar fields the sweep drivers can evaluate on a parameter plane.
enum class Quantity {
    Gap,             // energy gap E1 - E4
    Fidelity,        // thermal ground-state fidelity (closed form)
    FidelityJPlus,   // fidelity after the raising transition of psi1
    FidelityJMinus,  // fidelity after the lowering transition of psi1
    ZeroTFidelity,   // T -> 0 limit (1, 0, or 1/2 by ground-state class)
};

// Canonical lower-case token for a quantity ("gap", "fidelity",
// "fidelity_jplus", "fidelity_jminus", "zero_t_fidelity").
std::string quantity_name(Quantity q);
std::optional<Quantity> parse_quantity(std::string_view name);

// One sampled parameter axis. `name` must be one of {gamma, lambda_field,
// b_field, temperature}.
struct Axis {
    std::string name;
    double min = 0.0;
    double max = 0.0;
    int count = 0;

    // i-th sample, uniformly spaced with both endpoints included.
    double value(int i) const;
};

// Whether to write a sampled axis value into a Params field; returns false
// for unknown names.
bool apply_axis_value(Params& p, std::string_view name, double value);

// Per-node outcome. Undefined covers annihilated transitions and nodes
// outside a quantity's domain (e.g. T <= 0 for a thermal fidelity); such
// cells export as the NA sentinel.
enum class CellStatus : std::uint8_t { Value, Undefined };

struct NodeResult {
    double value = 0.0;
    CellStatus status = CellStatus::Value;
};

// Evaluates one quantity at one parameter point. All sweep drivers funnel
// through this single function, so serial and parallel sweeps are bitwise
// identical by construction.
NodeResult evaluate_quantity(Quantity q, const Params& p,
                             const YangianParams& yp);

struct GridMetadata {
    std::string tool;
    std::string version;
    std::string timestamp;  // ISO-8601 UTC, see deterministic_timestamp()
};

// A computed scalar field over a 2-D parameter plane. values/status are
// row-major with axis1 outermost: index(i1, i2) = i1 * axis2.count + i2.
struct Grid2D {
    Quantity quantity = Quantity::Gap;
    Axis axis1;
    Axis axis2;
    std::map<std::string, double> fixed;  // off-plane parameters by name
    std::vector<double> values;
    std::vector<CellStatus> status;
    GridMetadata metadata;

    std::size_t index(int i1, int i2) const {
        return static_cast<std::size_t>(i1) * static_cast<std::size_t>(axis2.count) +
               static_cast<std::size_t>(i2);
    }

    bool operator==(const Grid2D& other) const;
};

// Sweep request: which quantity, over which plane, holding everything else
// fixed at `base`/`yangian`.
struct SweepConfig {
    Quantity quantity = Quantity::Gap;
    Axis axis1;
    Axis axis2;
    Params base;
    YangianParams yangian;
    int threads = 0;  // 0 = all available; 1 = serial; n = n workers

    // Throws std::invalid_argument naming the offending field: axis counts
    // must be >= 2, ranges non-degenerate (min < max), axis names known and
    // distinct, parameters finite, and fixed temperature positive when a
    // thermal quantity does not sweep temperature.
    void validate() const;
};

// UTC timestamp for grid metadata. Honors the SOURCE_DATE_EPOCH environment
// variable (seconds since the Unix epoch) so that exports can be made
// byte-identical across runs; falls back to the current time.
std::string deterministic_timestamp();

// Evaluates the sweep on the calling thread.
Grid2D run_sweep_serial(const SweepConfig& cfg);

// Evaluates the sweep with OpenMP worker threads, each node written into its
// preallocated slot by index. Output equals run_sweep_serial bitwise.
Grid2D run_sweep_parallel(const SweepConfig& cfg);

// Dispatches on cfg.threads: 1 runs serial, anything else parallel.
Grid2D run_sweep(const SweepConfig& cfg);

}  // namespace qxy
