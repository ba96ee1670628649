#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "repsc/dynamics.hpp"
#include "repsc/ewrecon.hpp"
#include "repsc/packet.hpp"
#include "repsc/potential.hpp"
#include "repsc/scatter.hpp"

namespace repsc {

/// Tolerances and knobs of the mehler-check command.
struct MehlerCheckConfig {
    std::vector<double> times{0.1, 0.5, 1.0};
    int random_states = 20;
    double agreement_tol = 1e-10;
    double unitarity_tol = 1e-10;
    double heisenberg_tol = 1e-6;
    double scaling_tol = 1e-6;
    double h2dot_tol = 1e-4;
    std::uint64_t seed = 1234;
};

enum class ReconMode { synthetic, scattering };

struct ReconstructConfig {
    ReconMode mode = ReconMode::synthetic;
    int angles = 8;
    int offsets_count = 13;
    double offsets_max = 3.0;
    double velocity = 11.0;
    double width = 1.4;
    bool deconvolve = true;
    int field_points = 64;
    double field_half_width = 4.0;
    bool ground_truth = true;     // compare against the configured potential
    double tolerance = 0.15;      // relative L2 target (scattering mode)
    double synthetic_tolerance = 0.05;
};

/// One artifact of record per run: every section cross-validated atomically.
struct RunConfig {
    GridSpec grid;
    PotentialSpec potential;
    PacketSpec packet_phi;
    PacketSpec packet_psi; // defaults to packet_phi
    EvolveConfig dynamics;
    ScatterConfig scatter;
    SweepConfig sweep;
    MehlerCheckConfig mehler;
    ReconstructConfig reconstruct;
    std::string output_dir = "out";
    std::uint64_t seed = 1234;
    std::vector<std::string> warnings; // non-fatal findings (strong coupling etc.)
};

/// Parse the sectioned key/value format ('#'/';' comments, comma lists).
/// Throws ConfigError carrying every violation at once.
RunConfig parse_config_text(const std::string& text);
RunConfig load_config(const std::filesystem::path& path);

} // namespace repsc
