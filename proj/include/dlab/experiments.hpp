#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "dlab/config.hpp"

namespace dlab {

class Field;
class TorusGrid;

struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunManifest {
    std::string experiment;
    Config config;      // effective config (seed override applied)
    std::uint64_t seed = 0;
    std::string artifact_version;
    double wall_time_ms = 0.0;
    int threads = 1;    // DISPERSIVE_LAB_THREADS cap
    std::vector<std::pair<std::string, std::string>> files; // name, sha256
};

const std::vector<std::string>& experiment_names();

/// Executes one experiment, writing CSV artifacts plus manifest.json into
/// out_dir. Identical (config, seed) produce byte-identical CSVs.
RunManifest run_experiment(const std::string& experiment, Config cfg,
                           const std::string& out_dir,
                           std::optional<std::uint64_t> seed_override);

/// "cos:k:amp[,cos:k:amp...]" or "random:band" (seeded) on the given grid
Field parse_datum(const std::string& spec, const TorusGrid& grid,
                  std::uint64_t seed);

std::string sha256_hex(const std::string& data);

} // namespace dlab
