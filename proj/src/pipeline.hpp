#ifndef ADAVU_PIPELINE_HPP
#define ADAVU_PIPELINE_HPP

#include <optional>
#include <string>
#include <vector>

#include "events.hpp"

namespace adavu::pipeline {

// Exit codes shared by the pipeline, the C API and the CLI:
// 0 success, 1 I/O or format trouble, 2 domain validation failures.
inline constexpr int kExitOk = 0;
inline constexpr int kExitEnvironment = 1;
inline constexpr int kExitValidation = 2;

struct Config {
    std::string ontology_dir;
    std::string mapping_db;
    std::string audio_events;
    std::string annotation;
    std::string skeleton;
    std::string model;      // recognizer model to load (predict/transcribe)
    std::string out_model;  // recognizer model to write (train)
    std::string in_xml;     // LabanXML input (render)
    std::string adavu_name; // e.g. "Natta 1", enables performance validation
    std::string title;      // score title; defaults from the XML output name
    std::optional<int> bar_length;
    std::optional<double> tolerance_s;
    std::optional<double> period_s;
    std::string out_xml;
    std::string out_svg;
    std::string report_path; // empty = caller prints the report
};

struct Outcome {
    int exit_code = kExitOk;
    std::string report_json; // always set, even on failures
};

// Subcommand bodies. Fatal problems are converted into the exit code and an
// "error" object inside the report; they do not throw.
Outcome transcribe(const Config& config);
Outcome analyze_sync(const Config& config);
Outcome validate_ontology(const Config& config);
Outcome render(const Config& config);
Outcome train(const Config& config);
Outcome predict(const Config& config);

// Audio analysis used by analyze-sync and transcribe: period (given or
// inferred), onset classification, tempo estimate from the classified full
// beats, bar labels.
struct AudioAnalysis {
    std::vector<events::AudioEvent> beats;
    events::MeterEstimate meter;
    std::vector<std::string> diagnostics;
};

AudioAnalysis analyze_audio(const std::vector<events::Onset>& onsets,
                            std::optional<double> period_s,
                            std::optional<int> bar_length);

} // namespace adavu::pipeline

#endif
