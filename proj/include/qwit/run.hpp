#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

// Command layer behind the CLI binary: a parsed RunConfig in, one output
// table out. Identical configs (including seed) produce byte-identical files.

namespace qwit {

inline constexpr const char* kLibraryVersion = "0.1.0";

struct RunConfig {
    std::string command;
    std::uint64_t seed = 42;
    std::string seed_source = "default"; // default | flag | env:QWIT_SEED
    std::optional<std::uint64_t> trials; // unset -> per-command default; 0 -> analytic
    std::vector<double> v_list;
    std::vector<double> theta_list;
    std::optional<double> delta_t_ns;      // attack-demo shift / efficiency sweep half-range
    double window_ns = 4.0;
    std::optional<double> jitter_sigma_ns; // unset -> fitted demo value
    std::string out = "-";
    std::string format = "csv";
};

// Executes one command; diagnostics go to err. Returns 0 on success, 2 on
// configuration errors, 1 on runtime failures.
int run_command(const RunConfig& config, std::ostream& err);

} // namespace qwit
