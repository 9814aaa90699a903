#pragma once

#include <cstdint>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "qxy/model.hpp"
#include "qxy/spectrum.hpp"

namespace qxy {

// One randomized cross-check suite: the production path against the
// brute-force diagonalization oracle.
struct SuiteResult {
    std::string name;
    int samples = 0;
    double max_deviation = 0.0;
    double tolerance = 0.0;
    bool passed = false;
};

struct VerifyReport {
    std::vector<SuiteResult> suites;
    bool all_passed() const;
};

// Injection points for fault testing: tests swap in a corrupted Hamiltonian
// builder or eigensolver and assert that verification catches it. Empty
// functions mean the production implementations.
struct VerifyHooks {
    std::function<Matrix4(const Params&)> hamiltonian;
    std::function<EigenSystem(const Params&)> eigensystem;
};

// Runs every suite over `samples` random parameter draws (|gamma|,
// |lambda_field| <= 2, |b_field| <= 5; temperatures in [0.05, 10] where one
// is needed). The draw sequence is fixed by `seed`, so reports are
// reproducible. Throws std::invalid_argument for samples < 1.
//
// Suites and tolerances:
//   energies vs oracle        1e-12  sorted closed-form energies vs Jacobi
//   eigenvector residuals     1e-12  max-norm of H psi - E psi
//   thermal state vs oracle   1e-12  entrywise rho vs exp(-H/T)/Z
//   fidelity vs direct        1e-13  production overlap vs oracle overlap
//   closed form vs direct     1e-12  fidelity formula vs <psi1|rho|psi1>
VerifyReport run_verify(int samples, std::uint64_t seed = 20260816ull,
                        const VerifyHooks& hooks = {});

// Prints one line per suite (status, name, sample count, max deviation,
// tolerance) and a final summary line.
void print_report(const VerifyReport& report, std::ostream& out);

}  // namespace qxy
