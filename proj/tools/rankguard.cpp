// Command line front end: constructs codes, certifies published coordinate
// sets, applies extractors, selects low-leakage sets, and runs the channel
// simulation.  All index lists on this surface are 1-based.
//
// Exit codes: 0 success, 1 verification failure, 2 usage/validation error.

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "rankguard/bec_sim.hpp"
#include "rankguard/errors.hpp"
#include "rankguard/json_io.hpp"
#include "rankguard/leakage.hpp"
#include "rankguard/polar.hpp"
#include "rankguard/selection.hpp"
#include "rankguard/version.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace rankguard;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;

std::vector<std::size_t> parse_index_list(const std::string& text) {
    std::vector<std::size_t> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) {
        if (item.empty()) continue;
        std::size_t pos = 0;
        unsigned long long v = 0;
        try {
            v = std::stoull(item, &pos);
        } catch (const std::exception&) {
            throw Error("bad index '" + item + "' in list");
        }
        if (pos != item.size()) throw Error("bad index '" + item + "' in list");
        out.push_back(static_cast<std::size_t>(v));
    }
    return out;
}

std::vector<double> parse_delta_spec(const std::string& spec, std::size_t N) {
    if (!spec.empty() && spec.front() == '@') {
        const std::string body = load_text_file(spec.substr(1));
        std::istringstream in(body);
        std::vector<double> values;
        double v = 0.0;
        while (in >> v) values.push_back(v);
        if (values.size() == 1) return std::vector<double>(N, values[0]);
        if (values.size() != N)
            throw Error("delta file holds " + std::to_string(values.size()) +
                        " values, expected " + std::to_string(N));
        return values;
    }
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(spec, &pos);
    } catch (const std::exception&) {
        throw Error("bad delta '" + spec + "'");
    }
    if (pos != spec.size()) throw Error("bad delta '" + spec + "'");
    return std::vector<double>(N, v);
}

// A bits argument is either a literal 0/1 string or @file with one inside.
std::vector<std::uint8_t> parse_bits_spec(const std::string& spec) {
    std::string body = spec;
    if (!spec.empty() && spec.front() == '@') {
        body = load_text_file(spec.substr(1));
    }
    std::vector<std::uint8_t> bits;
    for (char c : body) {
        if (c == '0' || c == '1')
            bits.push_back(static_cast<std::uint8_t>(c - '0'));
        else if (!std::isspace(static_cast<unsigned char>(c)))
            throw Error(std::string("bits must be '0'/'1', got '") + c + "'");
    }
    return bits;
}

PolarCode load_code(const std::string& path) { return code_from_json(load_text_file(path)); }

RunManifest make_manifest(std::string command, std::vector<std::string> inputs,
                          std::vector<std::string> outputs, std::uint64_t seed) {
    RunManifest m;
    m.command = std::move(command);
    m.inputs = std::move(inputs);
    m.outputs = std::move(outputs);
    m.seed = seed;
    m.tool_version = kVersion;
    return m;
}

void print_verification(const VerificationReport& report) {
    const auto line = [](bool ok, const char* name) {
        std::cout << (ok ? "ok   " : "FAIL ") << name << "\n";
    };
    line(report.stored_ranks_match, "stored ranks");
    line(report.rank_identity, "rank identity");
    line(report.extractor_width, "extractor width");
    line(report.frozen_annihilated, "frozen annihilation");
    line(report.leaked_rank, "leaked rank");
    line(report.combinations_match, "leaked combinations");
    line(report.frames_consistent, "frame consistency");
}

int cmd_construct(unsigned n, const std::optional<double>& rate, const std::optional<double>& zeta,
                  const std::string& delta_spec, const std::string& out) {
    const std::size_t N = std::size_t(1) << n;
    const std::vector<double> delta = parse_delta_spec(delta_spec, N);
    const PolarCode code =
        rate ? build_code(n, delta, *rate) : build_code_threshold(n, delta, *zeta);
    const RunManifest manifest = make_manifest("construct", {}, {out}, 0);
    save_text_file(out, code_to_json(code, &manifest));
    std::cout << "N = " << code.block_length << ", |A| = " << code.info_set.size()
              << ", |F| = " << code.frozen_set.size() << "\n";
    std::cout << "wrote " << out << "\n";
    return kExitOk;
}

int cmd_certify(const std::string& code_path, const std::string& public_list, std::uint64_t seed,
                const std::string& out, const std::string& matrices_dir) {
    const PolarCode code = load_code(code_path);
    const std::vector<std::size_t> p = parse_index_list(public_list);
    const BitMatrix g = polar_transform(code.n);
    const LeakageCertificate cert = build_extractor(g, code, p, seed, code_path);

    std::cout << "L = " << cert.leaked_bits << " (rank_GP = " << cert.rank_gp
              << ", rank_GFP = " << cert.rank_gfp << ")\n";
    for (const std::string& line : leaked_equation_report(cert)) std::cout << line << "\n";
    std::cout << "verified: " << (cert.verified ? "yes" : "NO") << "\n";
    std::cout << "note: the guarantee assumes frozen bits drawn fresh and uniform per frame\n";

    std::vector<std::string> outputs;
    if (!out.empty()) outputs.push_back(out);
    const RunManifest manifest = make_manifest("certify", {code_path}, outputs, seed);
    if (!out.empty()) save_text_file(out, certificate_to_json(cert, &manifest));

    if (!matrices_dir.empty()) {
        fs::create_directories(matrices_dir);
        const auto p0 = to_zero_based(cert.public_set, code.block_length);
        const auto a0 = to_zero_based(code.info_set, code.block_length);
        const auto f0 = to_zero_based(code.frozen_set, code.block_length);
        std::vector<std::size_t> all(code.block_length);
        for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
        const fs::path dir(matrices_dir);
        save_text_file(dir / "published.txt", to_text(select_submatrix(g, all, p0)));
        save_text_file(dir / "published_info.txt", to_text(select_submatrix(g, a0, p0)));
        save_text_file(dir / "published_frozen.txt", to_text(select_submatrix(g, f0, p0)));
        save_text_file(dir / "extractor.txt", to_text(cert.extractor));
        save_text_file(dir / "combinations.txt", to_text(cert.leaked_combinations));
        json meta;
        meta["manifest_hash"] = manifest_hash(manifest);
        meta["command"] = "certify";
        save_text_file(dir / "manifest.json", meta.dump(2) + "\n");
    }
    return cert.verified ? kExitOk : kExitVerifyFailed;
}

int cmd_extract(const std::string& cert_path, const std::string& code_path,
                const std::string& bits_spec, const std::string& out) {
    const PolarCode code = load_code(code_path);
    LeakageCertificate cert = certificate_from_json(load_text_file(cert_path));
    const VerificationReport audit = verify_certificate(cert, code);
    if (!audit.ok()) {
        std::cerr << "certificate failed re-audit: " << audit.first_failure() << "\n";
        return kExitVerifyFailed;
    }
    cert.verified = true;

    std::vector<std::uint8_t> bits = parse_bits_spec(bits_spec);
    std::vector<std::uint8_t> recovered;
    if (bits.size() == code.block_length) {
        recovered = adversary_observe(bits, cert);
    } else if (bits.size() == cert.public_set.size()) {
        recovered = vec_mat_multiply(bits, cert.extractor);
    } else {
        throw Error("bits length " + std::to_string(bits.size()) + " matches neither N = " +
                    std::to_string(code.block_length) + " nor |P| = " +
                    std::to_string(cert.public_set.size()));
    }

    const std::vector<std::string> equations = leaked_equation_report(cert);
    std::string recovered_str;
    for (std::uint8_t b : recovered) recovered_str += static_cast<char>('0' + b);
    std::cout << "recovered " << recovered.size() << " combination bit(s): " << recovered_str
              << "\n";
    for (std::size_t i = 0; i < equations.size(); ++i)
        std::cout << equations[i] << " = " << int(recovered[i]) << "\n";

    if (!out.empty()) {
        const RunManifest manifest =
            make_manifest("extract", {cert_path, code_path}, {out}, cert.seed);
        json j;
        j["recovered"] = recovered_str;
        j["equations"] = equations;
        j["manifest"] = {{"command", manifest.command},
                         {"inputs", manifest.inputs},
                         {"outputs", manifest.outputs},
                         {"seed", manifest.seed},
                         {"tool_version", manifest.tool_version}};
        j["manifest_hash"] = manifest_hash(manifest);
        save_text_file(out, j.dump(2) + "\n");
    }
    return kExitOk;
}

json selection_to_json(const SelectionResult& r) {
    json j;
    j["P"] = r.public_set;
    j["L"] = r.leaked_bits;
    j["bound"] = r.bound;
    j["work"] = r.work;
    switch (r.method) {
        case SelectionMethod::greedy: j["method"] = "greedy"; break;
        case SelectionMethod::brute_force: j["method"] = "brute_force"; break;
        case SelectionMethod::exhaustive_sweep: j["method"] = "exhaustive_sweep"; break;
    }
    if (r.budget_exceeds_frozen) j["warning"] = "k exceeds the frozen set size";
    return j;
}

int cmd_select(const std::string& code_path, std::size_t k, const std::string& method,
               std::uint64_t cap, const std::string& out) {
    const PolarCode code = load_code(code_path);
    const BitMatrix g = polar_transform(code.n);
    json j;
    std::string summary;
    if (method == "greedy" || method == "both") {
        const SelectionResult r = score_greedy(g, code, k);
        if (r.budget_exceeds_frozen)
            std::cerr << "warning: k = " << k << " exceeds |F| = " << code.frozen_set.size()
                      << "\n";
        j["greedy"] = selection_to_json(r);
        summary += "greedy: L = " + std::to_string(r.leaked_bits) +
                   ", bound = " + std::to_string(r.bound) + "\n";
    }
    if (method == "brute" || method == "both") {
        const SelectionResult r = brute_force_min_leakage(g, code, k, cap);
        j["brute_force"] = selection_to_json(r);
        summary += "brute_force: L = " + std::to_string(r.leaked_bits) +
                   ", work = " + std::to_string(r.work) + "\n";
    }
    if (j.empty()) throw Error("method must be greedy, brute or both");
    if (method == "both")
        j["gap"] = j["greedy"]["L"].get<std::uint64_t>() -
                   j["brute_force"]["L"].get<std::uint64_t>();

    std::cout << summary;
    if (!out.empty()) {
        const RunManifest manifest = make_manifest("select", {code_path}, {out}, 0);
        j["manifest"] = {{"command", manifest.command},
                         {"inputs", manifest.inputs},
                         {"outputs", manifest.outputs},
                         {"seed", manifest.seed},
                         {"tool_version", manifest.tool_version}};
        j["manifest_hash"] = manifest_hash(manifest);
        save_text_file(out, j.dump(2) + "\n");
    }
    return kExitOk;
}

int cmd_sweep(const std::string& code_path, std::size_t k_max, std::uint64_t cap,
              const std::string& out) {
    const PolarCode code = load_code(code_path);
    const auto rows = sweep_report(code, k_max, cap);
    const RunManifest manifest = make_manifest("sweep", {code_path}, {out}, 0);
    const std::string csv =
        "# manifest_hash=" + manifest_hash(manifest) + "\n" + sweep_to_csv(rows);
    if (out.empty())
        std::cout << csv;
    else {
        save_text_file(out, csv);
        std::cout << "wrote " << out << " (" << rows.size() << " rows)\n";
    }
    return kExitOk;
}

int cmd_simulate(const std::string& config_path, std::optional<std::uint64_t> seed_override,
                 std::optional<std::uint64_t> trials_override, bool force_reuse_mask,
                 const std::string& out) {
    ExperimentConfig config = config_from_json(load_text_file(config_path));
    if (trials_override) config.trials = *trials_override;
    if (force_reuse_mask) config.reuse_mask = true;
    fs::path code_path(config.code_ref);
    if (code_path.is_relative()) code_path = fs::path(config_path).parent_path() / code_path;
    const PolarCode code = load_code(code_path.string());

    const std::uint64_t seed = seed_override.value_or(config.seed);
    const LeakageCertificate cert =
        build_extractor(code, config.public_set, kDefaultAuditSeed, config.code_ref);
    if (!cert.verified) {
        std::cerr << "internal certificate audit failed\n";
        return kExitVerifyFailed;
    }
    const ChannelAssignment assign{config.public_set, config.delta_pub, config.delta_priv};
    if (config.reuse_mask)
        std::cerr << "NEGATIVE DEMO: the frozen mask is reused across frames; published "
                     "coordinates are no longer protected by fresh randomness\n";
    const SimulationReport report =
        run_experiment(code, assign, cert, config.trials, seed, config.reuse_mask);

    std::cout << "trials = " << report.trials << ", FER = " << report.fer
              << ", BER = " << report.ber
              << ", adversary_checks_passed = " << report.adversary_checks_passed << "\n";
    std::cout << "leakage L = " << cert.leaked_bits << " bit(s) per frame\n";

    if (!out.empty()) {
        const RunManifest manifest = make_manifest("simulate", {config_path}, {out}, seed);
        save_text_file(out, report_to_json(report, &manifest));
    }
    return kExitOk;
}

int cmd_verify(const std::string& cert_path, const std::string& code_path) {
    const PolarCode code = load_code(code_path);
    const LeakageCertificate cert = certificate_from_json(load_text_file(cert_path));
    try {
        const VerificationReport report = verify_certificate(cert, code);
        print_verification(report);
        if (report.ok()) {
            std::cout << "PASS\n";
            return kExitOk;
        }
        std::cout << "FAIL: " << report.first_failure() << "\n";
        return kExitVerifyFailed;
    } catch (const DimensionMismatch& e) {
        std::cout << "FAIL: " << e.what() << "\n";
        return kExitVerifyFailed;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rank-certified leakage control for published polar-code coordinates"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    // construct
    auto* construct = app.add_subcommand("construct", "build a code descriptor");
    unsigned n = 0;
    std::optional<double> rate, zeta;
    std::string delta_spec = "0.5";
    std::string out;
    construct->add_option("--n", n, "log2 blocklength")->required();
    auto* rate_opt = construct->add_option("--rate", rate, "target rate in [0,1]");
    auto* zeta_opt = construct->add_option("--zeta", zeta, "reliability threshold in [0,1)");
    rate_opt->excludes(zeta_opt);
    construct->add_option("--delta", delta_spec, "erasure probability (scalar or @file)");
    construct->add_option("--out", out, "output descriptor path")->required();

    // certify
    auto* certify = app.add_subcommand("certify", "certify leakage of a published set");
    std::string code_path, public_list, matrices_dir, cert_path, bits_spec, config_path, method =
        "greedy";
    std::uint64_t seed = kDefaultAuditSeed;
    std::uint64_t cap = 10'000'000;
    std::size_t budget = 0;
    certify->add_option("--code", code_path, "code descriptor")->required();
    certify->add_option("--public", public_list, "comma-separated 1-based coordinates");
    certify->add_option("--seed", seed, "audit seed recorded in the certificate");
    certify->add_option("--out", out, "certificate output path");
    certify->add_option("--matrices", matrices_dir, "dump the audit matrices to a directory");

    // extract
    auto* extract = app.add_subcommand("extract", "apply a stored extractor to published bits");
    extract->add_option("--cert", cert_path, "certificate path")->required();
    extract->add_option("--code", code_path, "code descriptor")->required();
    extract->add_option("--bits", bits_spec, "published bits ('0101' or @file)")->required();
    extract->add_option("--out", out, "recovered-combination output path");

    // select
    auto* select = app.add_subcommand("select", "choose a published set of size k");
    select->add_option("--code", code_path, "code descriptor")->required();
    select->add_option("--k", budget, "budget")->required();
    select->add_option("--method", method, "greedy | brute | both")
        ->check(CLI::IsMember({"greedy", "brute", "both"}));
    select->add_option("--cap", cap, "candidate cap for brute force");
    select->add_option("--out", out, "selection output path");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "greedy vs optimal table over budgets 1..k");
    sweep->add_option("--code", code_path, "code descriptor")->required();
    sweep->add_option("--k", budget, "maximum budget")->required();
    sweep->add_option("--cap", cap, "candidate cap for brute force");
    sweep->add_option("--out", out, "CSV output path");

    // simulate
    auto* simulate = app.add_subcommand("simulate", "run the channel experiment from a config");
    std::optional<std::uint64_t> seed_override, trials_override;
    bool force_reuse_mask = false;
    simulate->add_option("--config", config_path, "experiment config")->required();
    simulate->add_option("--seed", seed_override, "override the config seed");
    simulate->add_option("--trials", trials_override, "override the config trial count");
    simulate->add_flag("--reuse-mask", force_reuse_mask,
                       "negative demo: reuse one frozen mask for every frame");
    simulate->add_option("--out", out, "report output path");

    // verify
    auto* verify = app.add_subcommand("verify", "re-audit a stored certificate");
    verify->add_option("--cert", cert_path, "certificate path")->required();
    verify->add_option("--code", code_path, "code descriptor")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (construct->parsed()) {
            if (!rate && !zeta) throw Error("one of --rate or --zeta is required");
            return cmd_construct(n, rate, zeta, delta_spec, out);
        }
        if (certify->parsed()) return cmd_certify(code_path, public_list, seed, out, matrices_dir);
        if (extract->parsed()) return cmd_extract(cert_path, code_path, bits_spec, out);
        if (select->parsed()) return cmd_select(code_path, budget, method, cap, out);
        if (sweep->parsed()) return cmd_sweep(code_path, budget, cap, out);
        if (simulate->parsed())
            return cmd_simulate(config_path, seed_override, trials_override, force_reuse_mask,
                                out);
        if (verify->parsed()) return cmd_verify(cert_path, code_path);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
