#pragma once

#include <string>
#include <vector>

#include "gosc/family_spec.hpp"
#include "gosc/fock.hpp"
#include "gosc/report.hpp"

namespace gosc {

struct SuiteConfig {
    FamilySpec family;
    int dim = 64;            // Fock truncation N
    int n_max = 30;          // coefficient range for identity checks
    int split_n_max = 8;
    cplx t{0.0, -1.0};       // Fourier parameter of the Hamiltonian and intertwining suites
    double q = 1.1;          // q-oscillator and q-bracket deformations
    double eta = 0.3;        // sinh deformation
    long precision_bits = 256;
    int grid = 200;          // ODE grid points
    // > 0 replaces the per-item tolerance of counted items
    double tolerance = 0.0;
};

const std::vector<std::string>& suite_names();  // includes "all"
bool is_suite(const std::string& name);

// Runs one suite (or "all") for cfg.family; items are sorted by id.
VerificationReport run_suite(const std::string& name, const SuiteConfig& cfg);

}  // namespace gosc
