#include "qxy/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>

#include "qxy/oracle.hpp"
#include "qxy/thermal.hpp"

namespace qxy {

bool VerifyReport::all_passed() const {
    return std::all_of(suites.begin(), suites.end(),
                       [](const SuiteResult& s) { return s.passed; });
}

namespace {

struct Drivers {
    std::function<Matrix4(const Params&)> hamiltonian;
    std::function<EigenSystem(const Params&)> eigensystem;
};

Drivers resolve(const VerifyHooks& hooks) {
    Drivers d;
    d.hamiltonian = hooks.hamiltonian
                        ? hooks.hamiltonian
                        : [](const Params& p) { return build_hamiltonian(p); };
    d.eigensystem = hooks.eigensystem ? hooks.eigensystem : [](const Params& p) {
        return analytic_eigensystem(p);
    };
    return d;
}

struct SampleStream {
    std::mt19937_64 rng;
    std::uniform_real_distribution<double> unit{0.0, 1.0};

    explicit SampleStream(std::uint64_t seed) : rng(seed) {}

    double uniform(double lo, double hi) {
        return lo + (hi - lo) * unit(rng);
    }

    Params params() {
        Params p;
        p.gamma = uniform(-2.0, 2.0);
        p.lambda_field = uniform(-2.0, 2.0);
        p.b_field = uniform(-5.0, 5.0);
        p.temperature = uniform(0.05, 10.0);
        return p;
    }
};

SuiteResult run_suite(const std::string& name, int samples, double tolerance,
                      std::uint64_t seed,
                      const std::function<double(SampleStream&)>& deviation) {
    SuiteResult result;
    result.name = name;
    result.samples = samples;
    result.tolerance = tolerance;
    SampleStream stream(seed);
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
        worst = std::max(worst, deviation(stream));
    }
    result.max_deviation = worst;
    result.passed = worst <= tolerance;
    return result;
}

double energies_deviation(const Drivers& d, SampleStream& s) {
    const Params p = s.params();
    const EigenSystem es = d.eigensystem(p);
    std::array<double, 4> analytic = es.energies;
    std::sort(analytic.begin(), analytic.end());
    const oracle::DenseEigenResult dense = oracle::jacobi_eigen(d.hamiltonian(p));
    double worst = 0.0;
    for (int i = 0; i < 4; ++i) {
        worst = std::max(worst, std::abs(analytic[i] - dense.eigenvalues(i)));
    }
    return worst;
}

double residual_deviation(const Drivers& d, SampleStream& s) {
    const Params p = s.params();
    const EigenSystem es = d.eigensystem(p);
    const Matrix4 h = d.hamiltonian(p);
    double worst = 0.0;
    for (int i = 0; i < 4; ++i) {
        const StateVector4 r = h * es.states[i] - es.energies[i] * es.states[i];
        worst = std::max(worst, r.cwiseAbs().maxCoeff());
    }
    return worst;
}

double thermal_deviation(const Drivers& d, SampleStream& s) {
    const Params p = s.params();
    const EigenSystem es = d.eigensystem(p);
    const ThermalState ts = thermal_state_from_eigensystem(es, p.temperature);
    const Matrix4 reference = oracle::gibbs_state(d.hamiltonian(p), p.temperature);
    return (ts.rho - reference).cwiseAbs().maxCoeff();
}

double fidelity_deviation(const Drivers& d, SampleStream& s) {
    const Params p = s.params();
    const EigenSystem es = d.eigensystem(p);
    const ThermalState ts = thermal_state_from_eigensystem(es, p.temperature);
    const double produced = fidelity(ts, es.states[0]);
    const double reference = oracle::direct_fidelity(ts.rho, es.states[0]);
    return std::abs(produced - reference);
}

double closed_form_deviation(const Drivers& d, SampleStream& s) {
    const Params p = s.params();
    const EigenSystem es = d.eigensystem(p);
    const ThermalState ts = thermal_state_from_eigensystem(es, p.temperature);
    const double closed = ground_state_fidelity_closed_form(p);
    const double reference = oracle::direct_fidelity(ts.rho, es.states[0]);
    return std::abs(closed - reference);
}

}  // namespace

VerifyReport run_verify(int samples, std::uint64_t seed,
                        const VerifyHooks& hooks) {
    if (samples < 1) {
        throw std::invalid_argument("run_verify: samples must be >= 1");
    }
    const Drivers d = resolve(hooks);

    // Each suite draws from its own offset of the seed so adding a suite
    // never reshuffles the others.
    VerifyReport report;
    report.suites.push_back(run_suite(
        "energies vs oracle", samples, 1e-12, seed + 1,
        [&d](SampleStream& s) { return energies_deviation(d, s); }));
    report.suites.push_back(run_suite(
        "eigenvector residuals", samples, 1e-12, seed + 2,
        [&d](SampleStream& s) { return residual_deviation(d, s); }));
    report.suites.push_back(run_suite(
        "thermal state vs oracle", samples, 1e-12, seed + 3,
        [&d](SampleStream& s) { return thermal_deviation(d, s); }));
    report.suites.push_back(run_suite(
        "fidelity vs direct", samples, 1e-13, seed + 4,
        [&d](SampleStream& s) { return fidelity_deviation(d, s); }));
    report.suites.push_back(run_suite(
        "closed form vs direct", samples, 1e-12, seed + 5,
        [&d](SampleStream& s) { return closed_form_deviation(d, s); }));
    return report;
}

void print_report(const VerifyReport& report, std::ostream& out) {
    for (const SuiteResult& suite : report.suites) {
        char line[160];
        std::snprintf(line, sizeof(line),
                      "[%s] %-24s samples=%-6d max|dev|=%.3e  tol=%.0e\n",
                      suite.passed ? "PASS" : "FAIL", suite.name.c_str(),
                      suite.samples, suite.max_deviation, suite.tolerance);
        out << line;
    }
    out << (report.all_passed() ? "verification passed"
                                : "verification FAILED")
        << " (" << report.suites.size() << " suites)\n";
}

}  // namespace qxy
