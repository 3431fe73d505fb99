// Command-line front end for the adavu shared library. Subcommands map 1:1
// onto the pipeline entry points of the C API; the report JSON goes to stdout
// (or --report), errors and diagnostics to stderr.

#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "adavu.h"

namespace {

struct Flags {
    std::string ontology, mapping_db, audio_events, annotation, skeleton;
    std::string model, out_model, in_xml, adavu, title;
    std::string out_xml, out_svg, report;
    int bar_length = 0;
    double tolerance = -1.0;
    double period = 0.0;
};

adavu_options options_of(const Flags& f) {
    adavu_options o;
    adavu_options_init(&o);
    auto set = [](const char*& dst, const std::string& src) {
        if (!src.empty())
            dst = src.c_str();
    };
    set(o.ontology_dir, f.ontology);
    set(o.mapping_db, f.mapping_db);
    set(o.audio_events, f.audio_events);
    set(o.annotation, f.annotation);
    set(o.skeleton, f.skeleton);
    set(o.model, f.model);
    set(o.out_model, f.out_model);
    set(o.in_xml, f.in_xml);
    set(o.adavu_name, f.adavu);
    set(o.title, f.title);
    set(o.out_xml, f.out_xml);
    set(o.out_svg, f.out_svg);
    set(o.report_path, f.report);
    o.bar_length = f.bar_length;
    o.tolerance_s = f.tolerance;
    o.period_s = f.period;
    return o;
}

using PipelineFn = adavu_status (*)(const adavu_options*, char**);

int run(PipelineFn fn, const Flags& flags) {
    adavu_options options = options_of(flags);
    char* report = nullptr;
    adavu_status status = fn(&options, &report);
    if (report) {
        if (flags.report.empty())
            std::fputs(report, stdout);
        adavu_string_free(report);
    }
    if (status != ADAVU_OK)
        std::fprintf(stderr, "adavu: %s: %s\n", adavu_status_name(status),
                     adavu_last_error());
    return adavu_status_exit_code(status);
}

void add_common_flags(CLI::App* cmd, Flags& f) {
    cmd->add_option("--ontology", f.ontology, "Directory with the ontology JSON files");
    cmd->add_option("--mapping-db", f.mapping_db, "Posture-to-Laban mapping database");
    cmd->add_option("--audio-events", f.audio_events, "Audio event CSV (id,time_s,bol)");
    cmd->add_option("--annotation", f.annotation,
                    "Video annotation CSV (posture_name,start_frame,end_frame,"
                    "beat_number,bols)");
    cmd->add_option("--skeleton", f.skeleton, "Skeleton stream CSV");
    cmd->add_option("--model", f.model, "Recognizer model JSON");
    cmd->add_option("--bar-length", f.bar_length, "Beats per bar (default 8)");
    cmd->add_option("--tolerance", f.tolerance, "Sync tolerance in seconds (default 0)");
    cmd->add_option("--period", f.period, "Tempo period override in seconds");
    cmd->add_option("--out-xml", f.out_xml, "LabanXML output path");
    cmd->add_option("--out-svg", f.out_svg, "SVG staff output path");
    cmd->add_option("--report", f.report, "Write the JSON report here instead of stdout");
    cmd->add_option("--adavu", f.adavu, "Adavu name for performance validation");
    cmd->add_option("--title", f.title, "Score title");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Transcribes annotated Bharatanatyam Adavu recordings into "
                 "Labanotation (LabanXML + SVG staff)"};
    app.require_subcommand(1);
    app.set_version_flag("--version", adavu_version());

    Flags flags;

    CLI::App* transcribe = app.add_subcommand(
        "transcribe", "Annotation (or skeleton+model) to LabanXML and SVG");
    add_common_flags(transcribe, flags);

    CLI::App* analyze = app.add_subcommand(
        "analyze-sync", "Tempo, bar structure and beat/posture sync report");
    add_common_flags(analyze, flags);

    CLI::App* validate = app.add_subcommand(
        "validate-ontology", "Check the ontology registry for consistency");
    add_common_flags(validate, flags);

    CLI::App* render = app.add_subcommand("render", "LabanXML to SVG staff");
    add_common_flags(render, flags);
    render->add_option("--in-xml", flags.in_xml, "LabanXML input path");

    CLI::App* train = app.add_subcommand(
        "train", "Train the posture recognizer from skeleton + annotation");
    add_common_flags(train, flags);
    train->add_option("--out-model", flags.out_model, "Model JSON output path");

    CLI::App* predict = app.add_subcommand(
        "predict", "Classify skeleton frames with a trained model");
    add_common_flags(predict, flags);

    CLI11_PARSE(app, argc, argv);

    if (transcribe->parsed())
        return run(adavu_transcribe, flags);
    if (analyze->parsed())
        return run(adavu_analyze_sync, flags);
    if (validate->parsed())
        return run(adavu_validate_ontology, flags);
    if (render->parsed())
        return run(adavu_render, flags);
    if (train->parsed())
        return run(adavu_train, flags);
    if (predict->parsed())
        return run(adavu_predict, flags);
    return 1;
}
