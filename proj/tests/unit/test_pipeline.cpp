/*
 * Copyright The repscope authors
 * SPDX-License-Identifier: Apache-2.0
 */

#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

#include "repscope/analyzer.hpp"
#include "repscope/pipeline.hpp"
#include "repscope/workload.hpp"

using namespace repscope;

TEST_CASE("detect is deterministic") {
    GenConfig gen;
    gen.contexts = 2;
    gen.objects_per_context = 16;
    gen.group_sizes = {10, 6};
    gen.reads_per_object = 8;
    gen.threads = 2;
    gen.seed = 5;
    auto trace = generate(gen);

    DetectConfig config;
    config.sampler.period = 3;
    config.sampler.seed = 99;

    CHECK(detect(trace, config).to_json() == detect(trace, config).to_json());
}

TEST_CASE("multi-thread traces merge per-thread results") {
    GenConfig gen;
    gen.contexts = 4;
    gen.objects_per_context = 12;
    gen.group_sizes = {8, 4};
    gen.reads_per_object = 6;
    gen.seed = 8;

    DetectConfig config;
    config.sampler.period = 1;
    config.sampler.jitter = 0.0;
    config.watchpoints = 0;
    config.queue_capacity = 0;

    gen.threads = 1;
    Profile single = detect(generate(gen), config);
    gen.threads = 3;
    Profile multi = detect(generate(gen), config);

    // same per-context counters regardless of which thread ran the context
    CHECK(single.to_json() == multi.to_json());
}

TEST_CASE("e2e summary reports containment and errors") {
    GenConfig gen;
    gen.contexts = 1;
    gen.objects_per_context = 40;
    gen.group_sizes = {30, 10};
    gen.reads_per_object = 16;
    gen.object_size = 128;
    gen.seed = 12;

    DetectConfig config;
    config.sampler.period = 2;
    config.sampler.seed = 4;

    E2EResult result = run_e2e(gen, config, 0.6);
    CHECK(result.summary_json.find("theta_exact") != std::string::npos);
    CHECK(result.summary_json.find("\"containment\": \"ok\"") != std::string::npos);
    CHECK(result.report.entries.size() == 1);

    // one-group config: estimate and oracle agree at 1.0
    GenConfig one = gen;
    one.group_sizes = {40};
    E2EResult r1 = run_e2e(one, config, 0.6);
    REQUIRE(r1.report.entries.size() == 1);
    CHECK(r1.report.entries[0].theta == 1.0);
    CHECK(r1.oracle.contexts[0].theta_exact == 1.0);
    CHECK(r1.report.entries[0].suspect);

    // all-distinct singletons: nothing suspect
    GenConfig distinct = gen;
    distinct.group_sizes.assign(40, 1);
    E2EResult r2 = run_e2e(distinct, config, 0.6);
    for (const auto& e : r2.report.entries) CHECK_FALSE(e.suspect);
}

#ifdef REPSCOPE_CLI_BIN
namespace {

int run_cli(const std::string& args) {
    const int status = std::system((std::string(REPSCOPE_CLI_BIN) + " " + args).c_str());
    return WEXITSTATUS(status);
}

}  // namespace

TEST_CASE("cli exit codes") {
    CHECK(run_cli("gen --objects 4 --reads 2 --out /tmp/repscope_cli_test.jsonl 2>/dev/null") == 0);
    CHECK(run_cli("detect --in /tmp/repscope_cli_test.jsonl --out /tmp/repscope_cli_test.json "
                  "2>/dev/null") == 0);
    // usage error: zero period
    CHECK(run_cli("detect --in /tmp/repscope_cli_test.jsonl --period 0 2>/dev/null") == 64);
    // usage error: bad jitter
    CHECK(run_cli("detect --in /tmp/repscope_cli_test.jsonl --jitter 1.5 2>/dev/null") == 64);
    // i/o error: missing input
    CHECK(run_cli("detect --in /tmp/definitely_missing.jsonl 2>/dev/null") == 1);
    // malformed trace beyond the skip budget
    {
        std::ofstream bad("/tmp/repscope_cli_bad.jsonl");
        bad << "{\"k\":\"frame\",\"id\":1,\"m\":\"m\",\"f\":\"f\",\"l\":1}\n";
        bad << "this is not a record\n";
    }
    CHECK(run_cli("detect --in /tmp/repscope_cli_bad.jsonl 2>/dev/null") == 2);
    CHECK(run_cli("detect --in /tmp/repscope_cli_bad.jsonl --skip-malformed 1 2>/dev/null") == 0);
    // bounds math on stdout
    CHECK(run_cli("bounds --theta 0.8 --alpha 0.1 --x 100 >/dev/null") == 0);
    CHECK(run_cli("bounds --theta 0.8 --alpha 1.0 --x 100 2>/dev/null") == 64);
}
#endif
