#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

#include "circprop/output.hpp"

namespace circprop::cli {

enum ExitCode : int { ok = 0, flag_error = 2, domain_error = 3, io_error = 4 };

struct RunConfig {
    std::string subcommand;
    std::string out;  ///< empty writes to stdout
    OutputFormat format = OutputFormat::csv;
    int threads = 1;
    std::optional<std::uint64_t> seed;
    bool verbose = false;

    // propagator, qubit
    std::int64_t n_sites = 0;
    std::int64_t p = 1;
    std::int64_t q = 2;
    std::string mode;

    // evolve, phase-map, trajectory
    int n_qubits = 7;
    std::string potential = "none";
    double eta = 0.75;
    double x0 = 0.0;
    std::int64_t m0 = 0;
    double sigma_l = 10.0;
    std::int64_t steps = 32;
    std::int64_t stride = 1;
    std::int64_t step_k = 1;  ///< tau_step = step_k / N
    std::string order = "potential-first";
    std::string source = "evolve";  ///< phase-map: evolve | propagator
    std::int64_t k_max = 0;

    // gauss-sum
    std::string delta_xi;  ///< "a/b"; empty lists every allowed displacement

    // theta
    double xi = 0.0;
    double tau_re = 0.0;
    double tau_im = -1.0;
    double tol = 1e-15;
    std::int64_t max_terms = 1'000'000;

    // qubit
    double tau = 1.0;
    std::int64_t dj_max = 10;
};

/// Parses argv into a config. CLI11 errors propagate as CLI::ParseError.
RunConfig parse(int argc, const char* const* argv);

/// The table a config produces, plus its provenance echo.
struct RunResult {
    Provenance provenance;
    Table table;
};

RunResult compute(const RunConfig& config);

/// Full program: parse, compute, write. Returns the process exit code.
/// Nothing is written to config.out unless the computation succeeded.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace circprop::cli
