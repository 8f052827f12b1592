#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace symeof {

struct SuiteOptions {
    std::uint64_t seed = 1;
    int trials = 500;
    int dim = 8;
    double tol = 1e-8;
    bool parallel = true;

    // recursion
    double r = 0.5;
    double perturb = 1e-3;
    int n_max = 1000;
    double fp_tol = 1e-12;

    // lemma2
    std::vector<double> deltas = {0.2, 0.5, 0.8};
    int seq_len = 40;
    double value_tol = 1e-4;
    double ratio_tol = 1e-3;

    // d0
    double n = 2.0;
    double kx = 1.5;
    double kp = 1.5;
    std::int64_t samples = 100000;
    int mc_dim = 25;
    double analytic_tol = 1e-10;
    double mc_tol = 1e-2;
};

struct SuiteResult {
    std::string name;
    bool pass = false;
    long checks = 0;
    double worst = 0.0;           // most adverse margin / deviation seen
    std::string detail;
    std::string counterexample;   // nonempty on failure, inputs included
    double seconds = 0.0;
};

SuiteResult run_lemma1(const SuiteOptions& opts);
SuiteResult run_lemma2(const SuiteOptions& opts);
SuiteResult run_prop1(const SuiteOptions& opts);
SuiteResult run_recursion(const SuiteOptions& opts);
SuiteResult run_d0(const SuiteOptions& opts);

// Corpus kernels behind the suites, exposed for the serial/parallel
// agreement tests and the benchmark. Per-trial results are deterministic
// functions of (seed, index), so both paths return identical vectors.
std::vector<double> lemma1_margins(std::uint64_t seed, int trials, int max_dim,
                                   bool parallel);
std::vector<double> prop1_margins(std::uint64_t seed, int trials, int max_dim,
                                  bool parallel);

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace symeof
