/*
 * Copyright The repscope authors
 * SPDX-License-Identifier: Apache-2.0
 */

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "repscope/analyzer.hpp"
#include "repscope/metrics.hpp"
#include "repscope/oracle.hpp"
#include "repscope/pipeline.hpp"
#include "repscope/trace.hpp"
#include "repscope/workload.hpp"

namespace py = pybind11;
using namespace repscope;

namespace {

GenConfig::Alphabet alphabet_from_string(const std::string& name) {
    if (name == "distinct") return GenConfig::Alphabet::Distinct;
    if (name == "correlated") return GenConfig::Alphabet::Correlated;
    if (name == "neardup") return GenConfig::Alphabet::NearDuplicate;
    throw ConfigInvalid("unknown alphabet '" + name + "'");
}

}  // namespace

PYBIND11_MODULE(_repscope, m) {
    m.doc() = "Object replica detection on memory traces: sampled comparison "
              "simulation, exhaustive oracle, and replication bounds.";

    py::register_exception<ConfigInvalid>(m, "ConfigInvalid", PyExc_ValueError);
    py::register_exception<AlphaOutOfRange>(m, "AlphaOutOfRange", PyExc_ValueError);
    py::register_exception<TooFewObjects>(m, "TooFewObjects", PyExc_ValueError);
    py::register_exception<NoComparisons>(m, "NoComparisons", PyExc_ValueError);
    py::register_exception<MalformedRecord>(m, "MalformedRecord", PyExc_ValueError);
    py::register_exception<LabelMismatch>(m, "LabelMismatch", PyExc_RuntimeError);

    py::class_<GenConfig>(m, "GenConfig")
        .def(py::init<>())
        .def_readwrite("contexts", &GenConfig::contexts)
        .def_readwrite("objects_per_context", &GenConfig::objects_per_context)
        .def_readwrite("group_sizes", &GenConfig::group_sizes)
        .def_readwrite("object_size", &GenConfig::object_size)
        .def_readwrite("reads_per_object", &GenConfig::reads_per_object)
        .def_readwrite("writes_per_object", &GenConfig::writes_per_object)
        .def_readwrite("threads", &GenConfig::threads)
        .def_readwrite("correlation", &GenConfig::correlation)
        .def_readwrite("distinct_words", &GenConfig::distinct_words)
        .def_readwrite("free_objects", &GenConfig::free_objects)
        .def_readwrite("emit_ground_truth", &GenConfig::emit_ground_truth)
        .def_readwrite("seed", &GenConfig::seed)
        .def_property(
            "alphabet",
            [](const GenConfig& c) {
                switch (c.alphabet) {
                    case GenConfig::Alphabet::Distinct: return "distinct";
                    case GenConfig::Alphabet::Correlated: return "correlated";
                    case GenConfig::Alphabet::NearDuplicate: return "neardup";
                }
                return "distinct";
            },
            [](GenConfig& c, const std::string& name) { c.alphabet = alphabet_from_string(name); });

    py::class_<DetectConfig>(m, "DetectConfig")
        .def(py::init<>())
        .def_property(
            "period", [](const DetectConfig& c) { return c.sampler.period; },
            [](DetectConfig& c, uint64_t v) { c.sampler.period = v; })
        .def_property(
            "jitter", [](const DetectConfig& c) { return c.sampler.jitter; },
            [](DetectConfig& c, double v) { c.sampler.jitter = v; })
        .def_property(
            "seed", [](const DetectConfig& c) { return c.sampler.seed; },
            [](DetectConfig& c, uint64_t v) { c.sampler.seed = v; })
        .def_readwrite("watchpoints", &DetectConfig::watchpoints)
        .def_readwrite("queue_capacity", &DetectConfig::queue_capacity);

    m.def("generate_trace", [](const GenConfig& config) {
        std::string out;
        for (const auto& ev : generate(config)) {
            out += write_event(ev);
            out += '\n';
        }
        return out;
    }, py::arg("config"), "Synthesize a workload trace; returns line-delimited records.");

    m.def("detect_text", [](const std::string& trace_text, const DetectConfig& config) {
        std::vector<TraceEvent> events;
        size_t pos = 0;
        while (pos < trace_text.size()) {
            size_t next = trace_text.find('\n', pos);
            if (next == std::string::npos) next = trace_text.size();
            if (next > pos) events.push_back(parse_event(trace_text.substr(pos, next - pos)));
            pos = next + 1;
        }
        return detect(events, config).to_json();
    }, py::arg("trace_text"), py::arg("config"),
       "Replay a trace (line-delimited records) and return the profile JSON.");

    m.def("detect_file", [](const std::string& trace_path, const DetectConfig& config) {
        return detect(load_trace(trace_path), config).to_json();
    }, py::arg("trace_path"), py::arg("config"));

    m.def("oracle_file", [](const std::string& trace_path) {
        return oracle_to_json(exhaustive_oracle(load_trace(trace_path)));
    }, py::arg("trace_path"), "Exhaustive ground truth for a trace file, as JSON.");

    m.def("report_from_json",
          [](const std::string& profile_json, const std::string& format, double threshold,
             const std::string& oracle_json) {
              Profile profile = Profile::from_json(profile_json);
              AlphaSource alpha;
              if (!oracle_json.empty()) alpha = AlphaSource::from_oracle_json(oracle_json);
              RankedReport report = rank(profile, threshold, alpha);
              if (format == "json") return emit_json(report);
              if (format == "folded") return emit_folded(report);
              if (format == "text") return emit_text(report);
              throw ConfigInvalid("unknown format '" + format + "'");
          },
          py::arg("profile_json"), py::arg("format") = "json",
          py::arg("threshold") = kDefaultSuspectThreshold, py::arg("oracle_json") = "");

    m.def("run_e2e",
          [](const GenConfig& gen_config, const DetectConfig& detect_config, double threshold) {
              E2EResult r = run_e2e(gen_config, detect_config, threshold);
              py::dict out;
              out["profile_json"] = r.profile.to_json();
              out["oracle_json"] = oracle_to_json(r.oracle);
              out["report_json"] = emit_json(r.report);
              out["folded"] = emit_folded(r.report);
              out["summary_json"] = r.summary_json;
              return out;
          },
          py::arg("gen_config"), py::arg("detect_config"),
          py::arg("threshold") = kDefaultSuspectThreshold);

    m.def("theta", &theta, py::arg("equivalent"), py::arg("different"));
    m.def("prob_a", [](double t, double a) { return prob_a(t, a).value; }, py::arg("theta"),
          py::arg("alpha"));
    m.def("lower_bound", [](double t, double a) { return lower_bound(t, a).value; },
          py::arg("theta"), py::arg("alpha"));
    m.def("upper_bound", [](double t, double a, uint64_t x) { return upper_bound(t, a, x).value; },
          py::arg("theta"), py::arg("alpha"), py::arg("x"));

    m.attr("SUSPECT_THRESHOLD") = kDefaultSuspectThreshold;
    m.attr("__version__") = "0.1.0";
}
