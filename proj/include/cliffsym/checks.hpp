#pragma once

#include "cliffsym/symprod.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace cliffsym {

struct RunConfig {
    int dim = 3;
    Engine engine = Engine::Auto;
    int quad_order = 16;
    double quad_tol = 1e-10;
    int contour_nodes = 64;
    std::uint64_t seed = 42;
};

struct SuiteReport {
    std::string name;
    int cases = 0;
    int failures = 0;
    double max_residual = 0.0;
    double tolerance = 0.0;
    std::vector<std::string> notes;
    bool pass() const { return failures == 0; }
};

const std::vector<std::string>& suite_names();
// Throws UnknownSuite. "all" is not a suite here; run each name instead.
SuiteReport run_suite(const std::string& name, const RunConfig& cfg);

}  // namespace cliffsym
