#include "rankguard/json_io.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "rankguard/errors.hpp"

namespace rankguard {

namespace {

using nlohmann::json;

json parse(std::string_view text, const char* what) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw Error(std::string(what) + ": not valid JSON");
    if (!j.is_object()) throw Error(std::string(what) + ": top level must be an object");
    return j;
}

const json& field(const json& j, const char* name, const char* what) {
    auto it = j.find(name);
    if (it == j.end()) throw Error(std::string(what) + ": missing field '" + name + "'");
    return *it;
}

std::vector<std::size_t> index_list(const json& j, const char* name, const char* what) {
    const json& f = field(j, name, what);
    if (!f.is_array()) throw Error(std::string(what) + ": '" + name + "' must be an array");
    std::vector<std::size_t> out;
    out.reserve(f.size());
    for (const json& v : f) {
        if (!v.is_number_unsigned())
            throw Error(std::string(what) + ": '" + name + "' must hold positive integers");
        out.push_back(v.get<std::size_t>());
    }
    return out;
}

void attach_manifest(json& j, const RunManifest* manifest) {
    if (!manifest) return;
    json m;
    m["command"] = manifest->command;
    m["inputs"] = manifest->inputs;
    m["outputs"] = manifest->outputs;
    m["seed"] = manifest->seed;
    m["tool_version"] = manifest->tool_version;
    j["manifest"] = m;
    j["manifest_hash"] = manifest_hash(*manifest);
}

// Column count comes from the row strings themselves (fallback_cols for the
// zero-row shape), so a stored width that disagrees with the L field parses
// fine and gets flagged by verification instead of failing here.
BitMatrix matrix_from_rows(const json& rows, std::size_t expect_rows, std::size_t fallback_cols,
                           const char* what) {
    if (!rows.is_array() || rows.size() != expect_rows)
        throw Error(std::string(what) + ": expected " + std::to_string(expect_rows) + " rows");
    std::size_t cols = fallback_cols;
    if (expect_rows > 0) {
        if (!rows[0].is_string()) throw Error(std::string(what) + ": rows must be strings");
        cols = rows[0].get<std::string>().size();
    }
    BitMatrix m(expect_rows, cols);
    for (std::size_t r = 0; r < expect_rows; ++r) {
        if (!rows[r].is_string()) throw Error(std::string(what) + ": rows must be strings");
        const std::string s = rows[r].get<std::string>();
        if (s.size() != cols)
            throw Error(std::string(what) + ": row " + std::to_string(r) + " has length " +
                        std::to_string(s.size()) + ", expected " + std::to_string(cols));
        for (std::size_t c = 0; c < cols; ++c) {
            if (s[c] == '1')
                m.set(r, c, true);
            else if (s[c] != '0')
                throw Error(std::string(what) + ": rows must contain only '0'/'1'");
        }
    }
    return m;
}

json matrix_to_rows(const BitMatrix& m) {
    json rows = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) rows.push_back(row_string(m, r));
    return rows;
}

}  // namespace

std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : data) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string manifest_hash(const RunManifest& manifest) {
    json m;
    m["command"] = manifest.command;
    m["inputs"] = manifest.inputs;
    m["outputs"] = manifest.outputs;
    m["seed"] = manifest.seed;
    m["tool_version"] = manifest.tool_version;
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(fnv1a64(m.dump())));
    return buf;
}

std::string code_to_json(const PolarCode& code, const RunManifest* manifest) {
    json j;
    j["n"] = code.n;
    if (code.rate) j["rate"] = *code.rate;
    if (code.zeta) j["zeta"] = *code.zeta;
    const bool uniform =
        std::all_of(code.delta.begin(), code.delta.end(),
                    [&code](double d) { return d == code.delta.front(); }) &&
        !code.delta.empty();
    if (uniform)
        j["delta"] = code.delta.front();
    else
        j["delta"] = code.delta;
    j["info_set"] = code.info_set;
    j["frozen_set"] = code.frozen_set;
    j["z_profile"] = code.z_profile;
    attach_manifest(j, manifest);
    return j.dump(2) + "\n";
}

PolarCode code_from_json(std::string_view text) {
    const json j = parse(text, "code descriptor");
    PolarCode code;
    const json& n = field(j, "n", "code descriptor");
    if (!n.is_number_unsigned() || n.get<std::uint64_t>() > 63)
        throw Error("code descriptor: 'n' must be a small non-negative integer");
    code.n = n.get<unsigned>();
    code.block_length = std::size_t(1) << code.n;

    const bool has_rate = j.contains("rate");
    const bool has_zeta = j.contains("zeta");
    if (has_rate == has_zeta)
        throw Error("code descriptor: exactly one of 'rate' or 'zeta' is required");
    if (has_rate) code.rate = field(j, "rate", "code descriptor").get<double>();
    if (has_zeta) code.zeta = field(j, "zeta", "code descriptor").get<double>();

    const json& delta = field(j, "delta", "code descriptor");
    if (delta.is_number()) {
        code.delta.assign(code.block_length, delta.get<double>());
    } else if (delta.is_array() && delta.size() == code.block_length) {
        code.delta.reserve(code.block_length);
        for (const json& d : delta) code.delta.push_back(d.get<double>());
    } else {
        throw Error("code descriptor: 'delta' must be a scalar or a length-N array");
    }
    for (double d : code.delta)
        if (!(d >= 0.0 && d <= 1.0)) throw Error("code descriptor: delta entries must be in [0,1]");

    code.info_set = index_list(j, "info_set", "code descriptor");
    code.frozen_set = index_list(j, "frozen_set", "code descriptor");
    const json& z = field(j, "z_profile", "code descriptor");
    if (!z.is_array() || z.size() != code.block_length)
        throw Error("code descriptor: 'z_profile' must be a length-N array");
    code.z_profile.reserve(code.block_length);
    for (const json& v : z) {
        const double zv = v.get<double>();
        if (!(zv >= 0.0 && zv <= 1.0))
            throw Error("code descriptor: z_profile entries must be in [0,1]");
        code.z_profile.push_back(zv);
    }

    // info_set and frozen_set must partition [1:N], each ascending.
    std::vector<std::uint8_t> seen(code.block_length, 0);
    for (const auto* set : {&code.info_set, &code.frozen_set}) {
        if (!std::is_sorted(set->begin(), set->end()))
            throw Error("code descriptor: index sets must be ascending");
        for (std::size_t i : *set) {
            if (i == 0 || i > code.block_length)
                throw Error("code descriptor: index " + std::to_string(i) + " outside [1:N]");
            if (seen[i - 1]++)
                throw Error("code descriptor: index " + std::to_string(i) + " appears twice");
        }
    }
    if (code.info_set.size() + code.frozen_set.size() != code.block_length)
        throw Error("code descriptor: info_set and frozen_set must partition [1:N]");
    return code;
}

std::string certificate_to_json(const LeakageCertificate& cert, const RunManifest* manifest) {
    json j;
    j["code"] = cert.code_ref;
    j["n"] = cert.n;
    j["info_set"] = cert.info_set;
    j["P"] = cert.public_set;
    j["rank_GP"] = cert.rank_gp;
    j["rank_GFP"] = cert.rank_gfp;
    j["L"] = cert.leaked_bits;
    j["R"] = matrix_to_rows(cert.extractor);
    j["M"] = matrix_to_rows(cert.leaked_combinations);
    j["verified"] = cert.verified;
    j["seed"] = cert.seed;
    attach_manifest(j, manifest);
    return j.dump(2) + "\n";
}

LeakageCertificate certificate_from_json(std::string_view text) {
    const json j = parse(text, "certificate");
    LeakageCertificate cert;
    cert.code_ref = field(j, "code", "certificate").get<std::string>();
    cert.n = field(j, "n", "certificate").get<unsigned>();
    cert.info_set = index_list(j, "info_set", "certificate");
    cert.public_set = index_list(j, "P", "certificate");
    cert.rank_gp = field(j, "rank_GP", "certificate").get<std::size_t>();
    cert.rank_gfp = field(j, "rank_GFP", "certificate").get<std::size_t>();
    cert.leaked_bits = field(j, "L", "certificate").get<std::size_t>();
    cert.extractor = matrix_from_rows(field(j, "R", "certificate"), cert.public_set.size(),
                                      cert.leaked_bits, "certificate R");
    cert.leaked_combinations = matrix_from_rows(field(j, "M", "certificate"),
                                                cert.info_set.size(), cert.leaked_bits,
                                                "certificate M");
    cert.verified = field(j, "verified", "certificate").get<bool>();
    cert.seed = field(j, "seed", "certificate").get<std::uint64_t>();
    return cert;
}

std::string config_to_json(const ExperimentConfig& config, const RunManifest* manifest) {
    json j;
    j["code"] = config.code_ref;
    j["P"] = config.public_set;
    j["delta_pub"] = config.delta_pub;
    j["delta_priv"] = config.delta_priv;
    j["trials"] = config.trials;
    j["seed"] = config.seed;
    j["reuse_mask"] = config.reuse_mask;
    attach_manifest(j, manifest);
    return j.dump(2) + "\n";
}

ExperimentConfig config_from_json(std::string_view text) {
    const json j = parse(text, "experiment config");
    ExperimentConfig config;
    config.code_ref = field(j, "code", "experiment config").get<std::string>();
    config.public_set = index_list(j, "P", "experiment config");
    config.delta_pub = field(j, "delta_pub", "experiment config").get<double>();
    config.delta_priv = field(j, "delta_priv", "experiment config").get<double>();
    config.trials = field(j, "trials", "experiment config").get<std::uint64_t>();
    config.seed = field(j, "seed", "experiment config").get<std::uint64_t>();
    config.reuse_mask = j.contains("reuse_mask") ? j["reuse_mask"].get<bool>() : false;
    return config;
}

std::string report_to_json(const SimulationReport& report, const RunManifest* manifest) {
    json j;
    j["trials"] = report.trials;
    j["frame_errors"] = report.frame_errors;
    j["bit_errors"] = report.bit_errors;
    j["fer"] = report.fer;
    j["ber"] = report.ber;
    j["adversary_checks_passed"] = report.adversary_checks_passed;
    j["seed"] = report.seed;
    attach_manifest(j, manifest);
    return j.dump(2) + "\n";
}

SimulationReport report_from_json(std::string_view text) {
    const json j = parse(text, "simulation report");
    SimulationReport report;
    report.trials = field(j, "trials", "simulation report").get<std::uint64_t>();
    report.frame_errors = field(j, "frame_errors", "simulation report").get<std::uint64_t>();
    report.bit_errors = field(j, "bit_errors", "simulation report").get<std::uint64_t>();
    report.fer = field(j, "fer", "simulation report").get<double>();
    report.ber = field(j, "ber", "simulation report").get<double>();
    report.adversary_checks_passed =
        field(j, "adversary_checks_passed", "simulation report").get<std::uint64_t>();
    report.seed = field(j, "seed", "simulation report").get<std::uint64_t>();
    return report;
}

std::string load_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void save_text_file(const std::filesystem::path& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    out << content;
    if (!out) throw Error("write failed: " + path.string());
}

}  // namespace rankguard
