#pragma once

#include <cstdint>
#include <ostream>
#include <string>

#include "ratdyn/graph_curve.hpp"
#include "ratdyn/measure.hpp"
#include "ratdyn/rational_map.hpp"
#include "ratdyn/report.hpp"

namespace ratdyn {

enum ExitCode : int { kExitOk = 0, kExitFail = 1, kExitUsage = 2, kExitConsistency = 3 };

struct RunConfig {
    std::uint64_t seed = 1;
    double root_residual = 1e-12;  // corrector tolerance of the path tracker
    double cluster_tol = 1e-7;
    double match_tol = 1e-6;
    long max_composite_degree = kDefaultDegreeBudget;
    int cloud_size = 20000;
    int depth = 40;
    std::string out;  // empty: stdout

    GraphOptions graph_options() const;
    void validate() const;  // PreconditionError unless tolerances and budgets are positive
};

Json to_json(const RunConfig& c);

// Subcommands: analyze-graph, certify, measure, render, powermap, catalog,
// compose, iterate. Reports are JSON (render writes a binary P6 image) and go
// to `out` unless --out names a file. Returns an ExitCode.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ratdyn
