#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "rankguard/bec_sim.hpp"
#include "rankguard/leakage.hpp"
#include "rankguard/polar.hpp"

namespace rankguard {

/// Provenance block embedded in every artifact a command writes, so a report
/// can be traced back to the exact invocation that produced it.
struct RunManifest {
    std::string command;  ///< construct|certify|extract|select|sweep|simulate|verify
    std::vector<std::string> inputs;
    std::vector<std::string> outputs;
    std::uint64_t seed = 0;
    std::string tool_version;
};

/// FNV-1a 64-bit hash, rendered as fixed-width hex.
std::uint64_t fnv1a64(std::string_view data);
std::string manifest_hash(const RunManifest& manifest);

/// Code descriptor: {n, rate|zeta, delta (scalar when uniform, else array),
/// info_set, frozen_set, z_profile}.  Index sets are 1-based.  Parsing
/// validates shape, ranges and that info/frozen partition [1:N].
std::string code_to_json(const PolarCode& code, const RunManifest* manifest = nullptr);
PolarCode code_from_json(std::string_view text);

/// Certificate: {code, n, info_set, P, rank_GP, rank_GFP, L, R, M, verified,
/// seed}.  R and M are arrays of '0'/'1' row strings.  Round-trips
/// bit-exactly.
std::string certificate_to_json(const LeakageCertificate& cert,
                                const RunManifest* manifest = nullptr);
LeakageCertificate certificate_from_json(std::string_view text);

/// Experiment config: {code, P, delta_pub, delta_priv, trials, seed,
/// reuse_mask}.
std::string config_to_json(const ExperimentConfig& config, const RunManifest* manifest = nullptr);
ExperimentConfig config_from_json(std::string_view text);

/// Simulation report mirror of SimulationReport.
std::string report_to_json(const SimulationReport& report, const RunManifest* manifest = nullptr);
SimulationReport report_from_json(std::string_view text);

std::string load_text_file(const std::filesystem::path& path);
void save_text_file(const std::filesystem::path& path, std::string_view content);

}  // namespace rankguard
