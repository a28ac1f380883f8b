/*
 * Copyright The repscope authors
 * SPDX-License-Identifier: Apache-2.0
 */

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <string>

#include <CLI11.hpp>

#include "repscope/analyzer.hpp"
#include "repscope/metrics.hpp"
#include "repscope/oracle.hpp"
#include "repscope/pipeline.hpp"
#include "repscope/trace.hpp"
#include "repscope/workload.hpp"

namespace {

using namespace repscope;

constexpr int kExitOk = 0;
constexpr int kExitIo = 1;
constexpr int kExitBadTrace = 2;
constexpr int kExitUsage = 64;

uint64_t parse_seed(const std::string& text) {
    if (text == "random") return std::random_device{}();
    return std::stoull(text);
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open output file: " + path);
    out << content;
    if (!out) throw Error("write failed: " + path);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open input file: " + path);
    return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

struct GenFlags {
    GenConfig config;
    std::string groups;
    std::string alphabet = "distinct";
    std::string seed = "1";

    void apply() {
        if (!groups.empty()) {
            config.group_sizes.clear();
            size_t pos = 0;
            while (pos < groups.size()) {
                size_t next = groups.find(',', pos);
                if (next == std::string::npos) next = groups.size();
                config.group_sizes.push_back(
                    static_cast<uint32_t>(std::stoul(groups.substr(pos, next - pos))));
                pos = next + 1;
            }
        }
        if (alphabet == "distinct")
            config.alphabet = GenConfig::Alphabet::Distinct;
        else if (alphabet == "correlated")
            config.alphabet = GenConfig::Alphabet::Correlated;
        else if (alphabet == "neardup")
            config.alphabet = GenConfig::Alphabet::NearDuplicate;
        else
            throw ConfigInvalid("unknown alphabet '" + alphabet + "'");
        config.seed = parse_seed(seed);
    }
};

void add_gen_flags(CLI::App* cmd, GenFlags& flags) {
    cmd->add_option("--contexts", flags.config.contexts, "allocation contexts to synthesize");
    cmd->add_option("--objects", flags.config.objects_per_context, "objects per context (X)");
    cmd->add_option("--groups", flags.groups, "comma-separated replica group sizes, summing to X");
    cmd->add_option("--object-size", flags.config.object_size, "object size in bytes");
    cmd->add_option("--reads", flags.config.reads_per_object, "reads per object");
    cmd->add_option("--writes", flags.config.writes_per_object, "initializing stores per object");
    cmd->add_option("--threads", flags.config.threads, "threads to spread contexts over");
    cmd->add_option("--alphabet", flags.alphabet, "value model: distinct|correlated|neardup");
    cmd->add_option("--corr", flags.config.correlation, "cross-group collision rate (correlated)");
    cmd->add_option("--distinct-words", flags.config.distinct_words,
                    "words that differ between groups (neardup)");
    cmd->add_option("--seed", flags.seed, "64-bit seed, or 'random'");
}

struct DetectFlags {
    DetectConfig config;
    std::string seed = "424242";
    uint64_t skip_malformed = 0;

    void apply() { config.sampler.seed = parse_seed(seed); }
};

void add_detect_flags(CLI::App* cmd, DetectFlags& flags, bool own_seed = true) {
    cmd->add_option("--period", flags.config.sampler.period, "loads per sample")
        ->check(CLI::PositiveNumber);
    cmd->add_option("--jitter", flags.config.sampler.jitter, "period jitter fraction in [0,1)");
    cmd->add_option("--watchpoints", flags.config.watchpoints,
                    "simulated debug registers (0 = unlimited)");
    cmd->add_option("--queue-capacity", flags.config.queue_capacity,
                    "sample tuples kept per context queue (0 = unbounded)");
    cmd->add_option(own_seed ? "--seed" : "--detect-seed", flags.seed,
                    "64-bit detection seed, or 'random'");
}

int run(int argc, char** argv) {
    CLI::App app{"trace-driven object replica detection"};
    app.require_subcommand(1);

    // gen
    auto* gen_cmd = app.add_subcommand("gen", "synthesize a workload trace");
    GenFlags gen_flags;
    add_gen_flags(gen_cmd, gen_flags);
    std::string gen_out;
    gen_cmd->add_option("--out", gen_out, "trace file to write (default stdout)");

    // detect
    auto* detect_cmd = app.add_subcommand("detect", "replay a trace and write a profile");
    DetectFlags detect_flags;
    add_detect_flags(detect_cmd, detect_flags);
    std::string detect_in, detect_out;
    detect_cmd->add_option("--in", detect_in, "trace file")->required();
    detect_cmd->add_option("--out", detect_out, "profile file to write (default stdout)");
    detect_cmd->add_option("--skip-malformed", detect_flags.skip_malformed,
                           "malformed records to tolerate");

    // oracle
    auto* oracle_cmd = app.add_subcommand("oracle", "exhaustive ground truth for a trace");
    std::string oracle_in, oracle_out;
    oracle_cmd->add_option("--in", oracle_in, "trace file")->required();
    oracle_cmd->add_option("--out", oracle_out, "report file to write (default stdout)");

    // report
    auto* report_cmd = app.add_subcommand("report", "rank a profile and emit a report");
    std::string report_in, report_out, report_format = "text", alpha_from;
    double threshold = kDefaultSuspectThreshold;
    report_cmd->add_option("--in", report_in, "profile file")->required();
    report_cmd->add_option("--format", report_format, "json|folded|text");
    report_cmd->add_option("--threshold", threshold, "suspect threshold on theta");
    report_cmd->add_option("--alpha-from", alpha_from, "oracle report supplying per-context alpha");
    report_cmd->add_option("--out", report_out, "output file (default stdout)");

    // bounds
    auto* bounds_cmd = app.add_subcommand("bounds", "evaluate the replication bounds");
    double b_theta = 0.0, b_alpha = 0.0;
    uint64_t b_x = 2;
    bounds_cmd->add_option("--theta", b_theta, "replication factor")->required();
    bounds_cmd->add_option("--alpha", b_alpha, "chance-equality rate");
    bounds_cmd->add_option("--x", b_x, "object count")->required();

    // e2e
    auto* e2e_cmd = app.add_subcommand("e2e", "gen + detect + oracle + report in one run");
    GenFlags e2e_gen;
    DetectFlags e2e_detect;
    add_gen_flags(e2e_cmd, e2e_gen);
    add_detect_flags(e2e_cmd, e2e_detect, /*own_seed=*/false);
    double e2e_threshold = kDefaultSuspectThreshold;
    std::string e2e_out;
    e2e_cmd->add_option("--threshold", e2e_threshold, "suspect threshold on theta");
    e2e_cmd->add_option("--out-dir", e2e_out, "directory for trace/profile/oracle/report files");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    if (gen_cmd->parsed()) {
        gen_flags.apply();
        std::vector<TraceEvent> events = generate(gen_flags.config);
        if (gen_out.empty()) {
            for (const auto& ev : events) std::cout << write_event(ev) << '\n';
        } else {
            save_trace(gen_out, events);
        }
        return kExitOk;
    }

    if (detect_cmd->parsed()) {
        detect_flags.apply();
        std::vector<TraceEvent> events = load_trace(detect_in, detect_flags.skip_malformed);
        Profile profile = detect(events, detect_flags.config);
        if (detect_out.empty())
            std::cout << profile.to_json();
        else
            write_file(detect_out, profile.to_json());
        return kExitOk;
    }

    if (oracle_cmd->parsed()) {
        std::vector<TraceEvent> events = load_trace(oracle_in);
        std::string json = oracle_to_json(exhaustive_oracle(events));
        if (oracle_out.empty())
            std::cout << json;
        else
            write_file(oracle_out, json);
        return kExitOk;
    }

    if (report_cmd->parsed()) {
        Profile profile = Profile::from_json(read_file(report_in));
        AlphaSource alpha;
        if (!alpha_from.empty()) alpha = AlphaSource::from_oracle_json(read_file(alpha_from));
        RankedReport ranked = rank(profile, threshold, alpha);
        std::string out;
        if (report_format == "json")
            out = emit_json(ranked);
        else if (report_format == "folded")
            out = emit_folded(ranked);
        else if (report_format == "text")
            out = emit_text(ranked);
        else
            throw ConfigInvalid("unknown format '" + report_format + "'");
        if (ranked.entries.empty()) std::cerr << "note: no context recorded any comparison\n";
        if (report_out.empty())
            std::cout << out;
        else
            write_file(report_out, out);
        return kExitOk;
    }

    if (bounds_cmd->parsed()) {
        BoundValue a = prob_a(b_theta, b_alpha);
        BoundValue omega = lower_bound(b_theta, b_alpha);
        BoundValue gamma = upper_bound(b_theta, b_alpha, b_x);
        std::printf("A     %.6g%s\n", a.value, a.clamped ? " (clamped)" : "");
        std::printf("omega %.6g%s\n", omega.value, omega.clamped ? " (clamped)" : "");
        std::printf("gamma %.6g%s\n", gamma.value, gamma.clamped ? " (capped)" : "");
        return kExitOk;
    }

    if (e2e_cmd->parsed()) {
        e2e_gen.apply();
        e2e_detect.apply();
        E2EResult result = run_e2e(e2e_gen.config, e2e_detect.config, e2e_threshold);
        if (!e2e_out.empty()) {
            std::filesystem::create_directories(e2e_out);
            save_trace(e2e_out + "/trace.jsonl", result.trace);
            write_file(e2e_out + "/profile.json", result.profile.to_json());
            write_file(e2e_out + "/oracle.json", oracle_to_json(result.oracle));
            write_file(e2e_out + "/report.json", emit_json(result.report));
            write_file(e2e_out + "/report.folded", emit_folded(result.report));
            write_file(e2e_out + "/summary.json", result.summary_json);
        }
        std::cout << result.summary_json;
        return kExitOk;
    }
    return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const repscope::ConfigInvalid& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const repscope::AlphaOutOfRange& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const repscope::TooFewObjects& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const repscope::MalformedRecord& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadTrace;
    } catch (const repscope::OverlapError& e) {
        std::cerr << "error: malformed trace: " << e.what() << "\n";
        return kExitBadTrace;
    } catch (const repscope::UnknownObject& e) {
        std::cerr << "error: malformed trace: " << e.what() << "\n";
        return kExitBadTrace;
    } catch (const repscope::LabelMismatch& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadTrace;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
}
