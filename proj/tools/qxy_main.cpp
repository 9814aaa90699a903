#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <iostream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "qxy/contour.hpp"
#include "qxy/grid.hpp"
#include "qxy/grid_io.hpp"
#include "qxy/model.hpp"
#include "qxy/spectrum.hpp"
#include "qxy/thermal.hpp"
#include "qxy/verify.hpp"
#include "qxy/version.hpp"
#include "qxy/yangian.hpp"

namespace {

using nlohmann::json;

// Bad invocation or config content; the process exits with the usage code.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

bool flag_given(const CLI::App& sub, const std::string& flag) {
    const CLI::Option* opt = sub.get_option_no_throw(flag);
    return opt != nullptr && opt->count() > 0;
}

// Optional JSON config file; command-line flags override its values, which
// override built-in defaults.
class ConfigLayer {
  public:
    void load(const std::string& path) {
        std::ifstream in(path, std::ios::binary);
        if (!in) {
            throw qxy::IoError("cannot open config file '" + path + "'");
        }
        try {
            in >> doc_;
        } catch (const json::exception& e) {
            throw UsageError("config file '" + path + "': " + e.what());
        }
        if (!doc_.is_object()) {
            throw UsageError("config file '" + path +
                             "' must hold a JSON object");
        }
        loaded_ = true;
    }

    bool has(const char* key) const { return loaded_ && doc_.contains(key); }

    const json& at(const char* key) const { return doc_.at(key); }

    template <typename T>
    void fill(const CLI::App& sub, const std::string& flag, const char* key,
              T& target) const {
        if (flag_given(sub, flag) || !has(key)) {
            return;
        }
        try {
            target = doc_.at(key).get<T>();
        } catch (const json::exception&) {
            throw UsageError(std::string("config field '") + key +
                             "' has the wrong type");
        }
    }

  private:
    json doc_;
    bool loaded_ = false;
};

double parse_number(const std::string& text, const std::string& what) {
    char* end = nullptr;
    const double v = std::strtod(text.c_str(), &end);
    if (end == text.c_str() || *end != '\0') {
        throw UsageError(what + ": '" + text + "' is not a number");
    }
    return v;
}

qxy::Axis parse_axis_spec(const std::string& spec, const std::string& what) {
    std::vector<std::string> parts;
    std::string::size_type start = 0;
    while (true) {
        const auto colon = spec.find(':', start);
        parts.push_back(spec.substr(start, colon - start));
        if (colon == std::string::npos) {
            break;
        }
        start = colon + 1;
    }
    if (parts.size() != 4 || parts[0].empty()) {
        throw UsageError(what + ": expected name:min:max:count, got '" + spec +
                         "'");
    }
    qxy::Axis axis;
    axis.name = parts[0];
    axis.min = parse_number(parts[1], what + " min");
    axis.max = parse_number(parts[2], what + " max");
    const double count = parse_number(parts[3], what + " count");
    axis.count = static_cast<int>(count);
    if (count != axis.count) {
        throw UsageError(what + " count: '" + parts[3] +
                         "' is not an integer");
    }
    return axis;
}

qxy::Axis axis_from_json(const json& j, const std::string& what) {
    if (j.is_string()) {
        return parse_axis_spec(j.get<std::string>(), what);
    }
    try {
        qxy::Axis axis;
        axis.name = j.at("name").get<std::string>();
        axis.min = j.at("min").get<double>();
        axis.max = j.at("max").get<double>();
        axis.count = j.at("count").get<int>();
        return axis;
    } catch (const json::exception& e) {
        throw UsageError(what + ": " + e.what());
    }
}

// Resolves one sweep axis: command-line spec > config entry > default.
qxy::Axis resolve_axis(const CLI::App& sub, const ConfigLayer& cfg,
                       const std::string& flag, const char* key,
                       const std::string& spec, const qxy::Axis& fallback) {
    if (flag_given(sub, flag)) {
        return parse_axis_spec(spec, flag);
    }
    if (cfg.has(key)) {
        return axis_from_json(cfg.at(key), std::string("config field '") +
                                               key + "'");
    }
    return fallback;
}

void require_format(const std::string& format,
                    std::initializer_list<const char*> allowed) {
    for (const char* ok : allowed) {
        if (format == ok) {
            return;
        }
    }
    std::string list;
    for (const char* ok : allowed) {
        if (!list.empty()) list += "|";
        list += ok;
    }
    throw UsageError("--format must be " + list + ", got '" + format + "'");
}

const char* tag_name(qxy::GroundStateTag tag) {
    switch (tag) {
        case qxy::GroundStateTag::AnisotropyGround: return "anisotropy_ground";
        case qxy::GroundStateTag::IsotropyGround: return "isotropy_ground";
        case qxy::GroundStateTag::Degenerate: return "degenerate";
    }
    return "unknown";
}

void emit(const std::string& out_path, const std::string& payload) {
    if (out_path.empty()) {
        std::cout << payload;
    } else {
        qxy::write_text_file(out_path, payload);
    }
}

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// ---- shared option bundles -------------------------------------------------

struct ParamOpts {
    qxy::Params p;
    qxy::YangianParams yp;
    std::string config_path;
};

void add_model_flags(CLI::App* sub, ParamOpts& o, bool with_temperature) {
    sub->add_option("--gamma", o.p.gamma,
                    "coupling anisotropy between the x and y spin channels");
    sub->add_option("--lambda-field", o.p.lambda_field,
                    "field inhomogeneity: qubit 2 sees lambda * B");
    sub->add_option("--b-field", o.p.b_field, "transverse field strength");
    if (with_temperature) {
        sub->add_option("--temperature", o.p.temperature,
                        "temperature in energy units (k_B = 1)");
    }
    sub->add_option("--config", o.config_path,
                    "JSON config file; flags override its values");
}

void add_yangian_flags(CLI::App* sub, ParamOpts& o) {
    sub->add_option("--mu", o.yp.mu, "weight of the qubit-1 spin in J");
    sub->add_option("--nu", o.yp.nu, "weight of the qubit-2 spin in J");
    sub->add_option("--lambda-y", o.yp.lambda_y,
                    "strength of the cross-product term in J");
}

void merge_params(const CLI::App& sub, const ConfigLayer& cfg, ParamOpts& o) {
    cfg.fill(sub, "--gamma", "gamma", o.p.gamma);
    cfg.fill(sub, "--lambda-field", "lambda_field", o.p.lambda_field);
    cfg.fill(sub, "--b-field", "b_field", o.p.b_field);
    cfg.fill(sub, "--temperature", "temperature", o.p.temperature);
    cfg.fill(sub, "--mu", "mu", o.yp.mu);
    cfg.fill(sub, "--nu", "nu", o.yp.nu);
    cfg.fill(sub, "--lambda-y", "lambda_y", o.yp.lambda_y);
}

ConfigLayer load_config(const ParamOpts& o) {
    ConfigLayer cfg;
    if (!o.config_path.empty()) {
        cfg.load(o.config_path);
    }
    return cfg;
}

// ---- grid subcommands -------------------------------------------------------

struct GridOpts {
    ParamOpts common;
    std::string quantity_token;
    std::string axis1_spec;
    std::string axis2_spec;
    std::string out_path;
    std::string format = "csv";
    int threads = 0;
};

void add_grid_flags(CLI::App* sub, GridOpts& o, const char* default_quantity) {
    o.quantity_token = default_quantity;
    add_model_flags(sub, o.common, true);
    sub->add_option("--quantity", o.quantity_token, "scalar field to sweep");
    sub->add_option("--axis1", o.axis1_spec,
                    "outer sweep axis as name:min:max:count");
    sub->add_option("--axis2", o.axis2_spec,
                    "inner sweep axis as name:min:max:count");
    sub->add_option("--out", o.out_path, "output file path");
    sub->add_option("--format", o.format, "csv|json|svg (default csv)");
    sub->add_option("--threads", o.threads,
                    "worker threads; 0 = all available, 1 = serial");
}

int run_grid(const CLI::App& sub, GridOpts& o, const qxy::Axis& default_axis1,
             const qxy::Axis& default_axis2,
             std::initializer_list<qxy::Quantity> allowed) {
    const ConfigLayer cfg = load_config(o.common);
    merge_params(sub, cfg, o.common);
    cfg.fill(sub, "--quantity", "quantity", o.quantity_token);
    cfg.fill(sub, "--out", "out", o.out_path);
    cfg.fill(sub, "--format", "format", o.format);
    cfg.fill(sub, "--threads", "threads", o.threads);

    qxy::SweepConfig sc;
    sc.axis1 = resolve_axis(sub, cfg, "--axis1", "axis1", o.axis1_spec,
                            default_axis1);
    sc.axis2 = resolve_axis(sub, cfg, "--axis2", "axis2", o.axis2_spec,
                            default_axis2);

    const auto quantity = qxy::parse_quantity(o.quantity_token);
    if (!quantity) {
        throw UsageError("unknown quantity '" + o.quantity_token + "'");
    }
    bool ok = false;
    std::string allowed_list;
    for (qxy::Quantity q : allowed) {
        ok = ok || q == *quantity;
        if (!allowed_list.empty()) allowed_list += "|";
        allowed_list += qxy::quantity_name(q);
    }
    if (!ok) {
        throw UsageError("this subcommand sweeps quantity " + allowed_list +
                         ", got '" + o.quantity_token + "'");
    }
    sc.quantity = *quantity;
    sc.base = o.common.p;
    sc.yangian = o.common.yp;
    sc.threads = o.threads;

    require_format(o.format, {"csv", "json", "svg"});
    if (o.out_path.empty()) {
        throw UsageError("--out is required (or 'out' in the config file)");
    }

    try {
        sc.validate();
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }

    const qxy::Grid2D g = qxy::run_sweep(sc);
    std::string payload;
    if (o.format == "csv") {
        payload = qxy::grid_to_csv(g);
    } else if (o.format == "json") {
        payload = qxy::grid_to_json(g).dump();
        payload += '\n';
    } else {
        payload = qxy::render_heatmap(g);
    }
    qxy::write_text_file(o.out_path, payload);
    std::cout << "wrote " << qxy::quantity_name(sc.quantity) << " grid "
              << sc.axis1.count << "x" << sc.axis2.count << " ("
              << sc.axis1.name << " x " << sc.axis2.name << ") to "
              << o.out_path << "\n";
    return 0;
}

// ---- point subcommands ------------------------------------------------------

struct PointOpts {
    ParamOpts common;
    std::string out_path;
    std::string format = "text";
};

void add_point_flags(CLI::App* sub, PointOpts& o, bool with_temperature) {
    add_model_flags(sub, o.common, with_temperature);
    sub->add_option("--out", o.out_path,
                    "output file path (default: stdout)");
    sub->add_option("--format", o.format, "text|json (default text)");
}

int run_spectrum(const CLI::App& sub, PointOpts& o) {
    const ConfigLayer cfg = load_config(o.common);
    merge_params(sub, cfg, o.common);
    cfg.fill(sub, "--out", "out", o.out_path);
    cfg.fill(sub, "--format", "format", o.format);
    require_format(o.format, {"text", "json"});

    const qxy::Params& p = o.common.p;
    try {
        p.validate();
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    const qxy::EigenSystem es = qxy::analytic_eigensystem(p);
    const qxy::GroundStateClass cls = qxy::classify_ground_state(p);

    std::string payload;
    if (o.format == "json") {
        const json doc = {
            {"params",
             {{"gamma", p.gamma},
              {"lambda_field", p.lambda_field},
              {"b_field", p.b_field}}},
            {"energies", es.energies},
            {"coefficients", es.a},
            {"gap", cls.gap},
            {"ground_state", tag_name(cls.tag)},
        };
        payload = doc.dump(2);
        payload += '\n';
    } else {
        payload = "gamma=" + fmt17(p.gamma) +
                  " lambda_field=" + fmt17(p.lambda_field) +
                  " b_field=" + fmt17(p.b_field) + "\n";
        for (int i = 0; i < 4; ++i) {
            payload += "E" + std::to_string(i + 1) + " = " +
                       fmt17(es.energies[i]) + "   a" + std::to_string(i + 1) +
                       " = " + fmt17(es.a[i]) + "\n";
        }
        payload += "gap (E1 - E4) = " + fmt17(cls.gap) + "\n";
        payload += std::string("ground state: ") + tag_name(cls.tag) + "\n";
    }
    emit(o.out_path, payload);
    return 0;
}

int run_fidelity(const CLI::App& sub, PointOpts& o) {
    const ConfigLayer cfg = load_config(o.common);
    merge_params(sub, cfg, o.common);
    cfg.fill(sub, "--out", "out", o.out_path);
    cfg.fill(sub, "--format", "format", o.format);
    require_format(o.format, {"text", "json"});

    const qxy::Params& p = o.common.p;
    try {
        p.validate();
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    const double f = (p.temperature > 0.0)
                         ? qxy::ground_state_fidelity_closed_form(p)
                         : qxy::zero_temperature_fidelity(p);

    std::string payload;
    if (o.format == "json") {
        const json doc = {
            {"params",
             {{"gamma", p.gamma},
              {"lambda_field", p.lambda_field},
              {"b_field", p.b_field},
              {"temperature", p.temperature}}},
            {"fidelity", f},
        };
        payload = doc.dump(2);
        payload += '\n';
    } else {
        payload = "gamma=" + fmt17(p.gamma) +
                  " lambda_field=" + fmt17(p.lambda_field) +
                  " b_field=" + fmt17(p.b_field) +
                  " temperature=" + fmt17(p.temperature) + "\n";
        payload += "F = " + fmt17(f) + "\n";
    }
    emit(o.out_path, payload);
    return 0;
}

// ---- crossing subcommand ----------------------------------------------------

struct CrossingOpts {
    ParamOpts common;
    std::string axis1_spec;
    std::string axis2_spec;
    std::string out_path;
    std::string format = "csv";
    int threads = 0;
};

int run_crossing(const CLI::App& sub, CrossingOpts& o) {
    const ConfigLayer cfg = load_config(o.common);
    merge_params(sub, cfg, o.common);
    cfg.fill(sub, "--out", "out", o.out_path);
    cfg.fill(sub, "--format", "format", o.format);
    cfg.fill(sub, "--threads", "threads", o.threads);
    require_format(o.format, {"csv", "json"});
    if (o.out_path.empty()) {
        throw UsageError("--out is required (or 'out' in the config file)");
    }

    const bool grid_mode = flag_given(sub, "--axis1") ||
                           flag_given(sub, "--axis2") || cfg.has("axis1") ||
                           cfg.has("axis2");
    qxy::CrossingLocus locus;
    if (grid_mode) {
        qxy::SweepConfig sc;
        sc.quantity = qxy::Quantity::Gap;
        sc.axis1 = resolve_axis(sub, cfg, "--axis1", "axis1", o.axis1_spec,
                                {"gamma", -1.5, 1.5, 301});
        sc.axis2 = resolve_axis(sub, cfg, "--axis2", "axis2", o.axis2_spec,
                                {"b_field", -1.5, 1.5, 301});
        sc.base = o.common.p;
        sc.yangian = o.common.yp;
        sc.threads = o.threads;
        try {
            sc.validate();
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
        locus = qxy::crossing_locus_grid(qxy::run_sweep(sc));
    } else {
        try {
            o.common.p.validate();
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
        locus = qxy::crossing_locus_analytic(o.common.p.gamma);
    }

    std::size_t points = 0;
    for (const qxy::Polyline& line : locus.polylines) {
        points += line.size();
    }
    std::string payload;
    if (o.format == "csv") {
        payload = qxy::locus_to_csv(locus);
    } else {
        payload = qxy::locus_to_json(locus).dump();
        payload += '\n';
    }
    qxy::write_text_file(o.out_path, payload);
    std::cout << "wrote crossing locus (" << locus.polylines.size()
              << " segments, " << points << " points) to " << o.out_path
              << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"two-qubit XY-model spectrum, thermal fidelity and "
                 "transition-fidelity sweeps"};
    app.set_version_flag("--version", qxy::kToolVersion);
    app.require_subcommand(1);

    int exit_code = 0;

    // spectrum: closed-form eigensystem at one parameter point.
    PointOpts spectrum_opts;
    CLI::App* spectrum_cmd = app.add_subcommand(
        "spectrum", "print the four energies, eigenvector coefficients, gap "
                    "and ground-state class at one parameter point");
    add_point_flags(spectrum_cmd, spectrum_opts, false);
    spectrum_cmd->callback([&] {
        exit_code = run_spectrum(*spectrum_cmd, spectrum_opts);
    });

    // fidelity: thermal ground-state fidelity at one parameter point.
    PointOpts fidelity_opts;
    CLI::App* fidelity_cmd = app.add_subcommand(
        "fidelity", "print the fidelity between the thermal state and the "
                    "low-field ground state at one parameter point");
    add_point_flags(fidelity_cmd, fidelity_opts, true);
    fidelity_cmd->callback([&] {
        exit_code = run_fidelity(*fidelity_cmd, fidelity_opts);
    });

    // gap-grid: energy gap over a parameter plane.
    GridOpts gap_opts;
    CLI::App* gap_cmd = app.add_subcommand(
        "gap-grid", "sweep the energy gap over a 2-D parameter plane");
    add_grid_flags(gap_cmd, gap_opts, "gap");
    gap_cmd->callback([&] {
        exit_code = run_grid(*gap_cmd, gap_opts, {"gamma", -1.5, 1.5, 301},
                             {"b_field", -1.5, 1.5, 301},
                             {qxy::Quantity::Gap});
    });

    // crossing: level-crossing locus, analytic or extracted from a gap grid.
    CrossingOpts crossing_opts;
    CLI::App* crossing_cmd = app.add_subcommand(
        "crossing", "export the level-crossing locus: closed form in the "
                    "(lambda_field, b_field) plane, or extracted from a gap "
                    "grid when sweep axes are given");
    add_model_flags(crossing_cmd, crossing_opts.common, false);
    crossing_cmd->add_option("--axis1", crossing_opts.axis1_spec,
                             "gap-grid outer axis as name:min:max:count");
    crossing_cmd->add_option("--axis2", crossing_opts.axis2_spec,
                             "gap-grid inner axis as name:min:max:count");
    crossing_cmd->add_option("--out", crossing_opts.out_path,
                             "output file path");
    crossing_cmd->add_option("--format", crossing_opts.format,
                             "csv|json (default csv)");
    crossing_cmd->add_option("--threads", crossing_opts.threads,
                             "worker threads for the gap grid");
    crossing_cmd->callback([&] {
        exit_code = run_crossing(*crossing_cmd, crossing_opts);
    });

    // fidelity-grid: thermal fidelity (or its T -> 0 limit) over a plane.
    GridOpts fgrid_opts;
    CLI::App* fgrid_cmd = app.add_subcommand(
        "fidelity-grid",
        "sweep the thermal ground-state fidelity over a 2-D parameter plane");
    add_grid_flags(fgrid_cmd, fgrid_opts, "fidelity");
    fgrid_cmd->callback([&] {
        exit_code = run_grid(
            *fgrid_cmd, fgrid_opts, {"lambda_field", -2.0, 2.0, 301},
            {"b_field", -2.0, 2.0, 301},
            {qxy::Quantity::Fidelity, qxy::Quantity::ZeroTFidelity});
    });

    // yangian-grid: post-transition fidelities over a plane.
    GridOpts ygrid_opts;
    CLI::App* ygrid_cmd = app.add_subcommand(
        "yangian-grid", "sweep the post-transition fidelity (raising or "
                        "lowering generator applied to the ground state)");
    add_grid_flags(ygrid_cmd, ygrid_opts, "fidelity_jplus");
    add_yangian_flags(ygrid_cmd, ygrid_opts.common);
    ygrid_cmd->callback([&] {
        exit_code = run_grid(
            *ygrid_cmd, ygrid_opts, {"lambda_field", -2.0, 2.0, 301},
            {"b_field", -2.0, 2.0, 301},
            {qxy::Quantity::FidelityJPlus, qxy::Quantity::FidelityJMinus});
    });

    // verify: randomized oracle equivalence.
    int verify_samples = 1000;
    CLI::App* verify_cmd = app.add_subcommand(
        "verify", "cross-check the closed forms against the brute-force "
                  "diagonalization oracle on random parameters");
    verify_cmd->add_option("--verify-samples", verify_samples,
                           "random samples per suite (default 1000)");
    verify_cmd->callback([&] {
        if (verify_samples < 1) {
            throw UsageError("--verify-samples must be >= 1");
        }
        const qxy::VerifyReport report = qxy::run_verify(verify_samples);
        qxy::print_report(report, std::cout);
        exit_code = report.all_passed() ? 0 : 3;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const qxy::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return exit_code;
}
