#include "pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include <json.hpp>

#include "error.hpp"
#include "labanxml.hpp"
#include "laban.hpp"
#include "ontology.hpp"
#include "recognizer.hpp"
#include "svg_staff.hpp"

namespace adavu::pipeline {

namespace {

using json = nlohmann::ordered_json;
using namespace events;

constexpr int kDefaultBarLength = 8; // Adi taalam

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error(ErrorKind::Io, "cannot write " + path);
    out << content;
    if (!out)
        throw Error(ErrorKind::Io, "error while writing " + path);
}

std::string stem_of(const std::string& path) {
    size_t slash = path.find_last_of("/\\");
    size_t begin = slash == std::string::npos ? 0 : slash + 1;
    size_t dot = path.find_last_of('.');
    if (dot == std::string::npos || dot < begin)
        dot = path.size();
    return path.substr(begin, dot - begin);
}

int exit_code_for(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::Io:
    case ErrorKind::Parse:
        return kExitEnvironment;
    case ErrorKind::Validation:
    case ErrorKind::Domain:
    case ErrorKind::NotFound:
        return kExitValidation;
    }
    return kExitEnvironment;
}

json meter_to_json(const MeterEstimate& m) {
    json j;
    j["period_s"] = m.period_s;
    j["bpm"] = m.bpm;
    j["bar_length"] = m.bar_length;
    j["bar_count"] = m.bar_count;
    j["full_beat_count"] = m.full_beat_ids.size();
    j["half_beat_count"] = m.half_beat_ids.size();
    j["full_beat_ids"] = m.full_beat_ids;
    j["half_beat_ids"] = m.half_beat_ids;
    return j;
}

json beat_to_json(const AudioEvent& e) {
    json j;
    j["id"] = e.id;
    j["kind"] = audio_kind_name(e.kind);
    j["time_s"] = e.time_s;
    if (e.bol)
        j["bol"] = *e.bol;
    if (e.bar_index)
        j["bar"] = *e.bar_index;
    if (e.beat_in_bar)
        j["beat_in_bar"] = *e.beat_in_bar;
    if (e.bar_label)
        j["bar_label"] = bar_label_name(*e.bar_label);
    return j;
}

json sync_to_json(const SyncEvent& e) {
    json j;
    j["kind"] = sync_kind_name(e.kind);
    j["audio_id"] = e.audio_id;
    if (e.video_id)
        j["video_id"] = *e.video_id;
    if (e.posture_id)
        j["posture_id"] = *e.posture_id;
    if (e.bol)
        j["bol"] = *e.bol;
    j["lag_s"] = e.lag_s;
    return j;
}

// Runs a subcommand body, turning thrown errors into the report/exit-code
// contract.
template <typename Body>
Outcome run(const Config& config, Body&& body) {
    json report = json::object();
    Outcome outcome;
    try {
        outcome.exit_code = body(report);
    } catch (const Error& e) {
        report["error"] = {{"kind", error_kind_name(e.kind())}, {"message", e.what()}};
        outcome.exit_code = exit_code_for(e.kind());
    } catch (const std::exception& e) {
        report["error"] = {{"kind", "internal"}, {"message", e.what()}};
        outcome.exit_code = kExitEnvironment;
    }
    report["exit_code"] = outcome.exit_code;
    outcome.report_json = report.dump(2) + "\n";
    if (!config.report_path.empty()) {
        try {
            write_file(config.report_path, outcome.report_json);
        } catch (const Error&) {
            outcome.exit_code = std::max(outcome.exit_code, kExitEnvironment);
        }
    }
    return outcome;
}

// Collapses per-frame predictions into one posture per hold: consecutive
// frames predicted as the same class become a single sequence entry.
std::vector<std::string> collapse_runs(const std::vector<std::string>& per_frame) {
    std::vector<std::string> seq;
    for (const auto& id : per_frame)
        if (seq.empty() || seq.back() != id)
            seq.push_back(id);
    return seq;
}

} // namespace

AudioAnalysis analyze_audio(const std::vector<Onset>& onsets,
                            std::optional<double> period_s,
                            std::optional<int> bar_length) {
    AudioAnalysis analysis;
    if (onsets.empty())
        return analysis;

    double period;
    if (period_s) {
        period = *period_s;
        if (period <= 0.0)
            throw Error(ErrorKind::Domain, "period override must be positive");
    } else if (onsets.size() >= 3) {
        period = infer_period(onsets, &analysis.diagnostics);
    } else {
        // too short to infer anything; classify everything as full beats
        period = onsets.size() == 2 ? onsets[1].time_s - onsets[0].time_s : 1.0;
        analysis.diagnostics.push_back(
            "fewer than 3 onsets: tempo period is a placeholder");
    }

    ClassifyResult classified = classify_onsets(onsets, period);
    analysis.diagnostics.insert(analysis.diagnostics.end(),
                                classified.diagnostics.begin(),
                                classified.diagnostics.end());

    std::vector<AudioEvent> fulls;
    for (const auto& e : classified.events)
        if (e.is_full_beat())
            fulls.push_back(e);

    analysis.meter.bar_length = bar_length.value_or(kDefaultBarLength);
    if (fulls.size() >= 3) {
        TempoResult tempo = estimate_tempo(fulls);
        analysis.meter.period_s = tempo.period_s;
        analysis.meter.bpm = tempo.bpm;
        analysis.diagnostics.insert(analysis.diagnostics.end(),
                                    tempo.diagnostics.begin(), tempo.diagnostics.end());
    } else {
        analysis.meter.period_s = period;
        analysis.meter.bpm = 60.0 / period;
    }

    BarResult barred = label_bar_structure(std::move(classified.events),
                                           analysis.meter.bar_length);
    analysis.meter.bar_count = barred.bar_count;
    analysis.diagnostics.insert(analysis.diagnostics.end(), barred.diagnostics.begin(),
                                barred.diagnostics.end());
    analysis.beats = std::move(barred.events);

    for (const auto& e : analysis.beats) {
        if (e.is_full_beat())
            analysis.meter.full_beat_ids.push_back(e.id);
        else if (e.is_half_beat())
            analysis.meter.half_beat_ids.push_back(e.id);
    }
    return analysis;
}

Outcome analyze_sync(const Config& config) {
    return run(config, [&](json& report) {
        if (config.audio_events.empty())
            throw Error(ErrorKind::Domain, "analyze-sync needs --audio-events");

        auto onsets = load_audio_events_csv(config.audio_events);
        report["audio_events"] = config.audio_events;
        report["onset_count"] = onsets.size();

        std::vector<std::string> diagnostics;
        if (onsets.empty()) {
            report["meter"] = nullptr;
            report["sync"] = json::object({{"events", json::array()},
                                           {"synced_beats", 0},
                                           {"unsynced_beats", 0}});
            report["diagnostics"] = diagnostics;
            return kExitOk;
        }

        AudioAnalysis analysis =
            analyze_audio(onsets, config.period_s, config.bar_length);
        diagnostics = analysis.diagnostics;
        report["meter"] = meter_to_json(analysis.meter);

        json sync = json::object();
        std::set<int> synced_ids;
        bool have_video = !config.annotation.empty();
        if (have_video) {
            auto records = load_annotation_csv(config.annotation);
            auto video = build_video_events(records);
            SyncResult result =
                detect_sync(analysis.beats, video, config.tolerance_s.value_or(0.0));
            diagnostics.insert(diagnostics.end(), result.diagnostics.begin(),
                               result.diagnostics.end());

            json list = json::array();
            int posture_syncs = 0;
            std::vector<double> lags;
            for (const auto& s : result.events) {
                list.push_back(sync_to_json(s));
                if (s.kind == SyncKind::PostureAtFullBeat ||
                    s.kind == SyncKind::PostureAtHalfBeat) {
                    ++posture_syncs;
                    synced_ids.insert(s.audio_id);
                    lags.push_back(s.lag_s);
                }
            }
            int beat_total = 0;
            for (const auto& e : analysis.beats)
                if (e.is_full_beat() || e.is_half_beat())
                    ++beat_total;
            sync["events"] = std::move(list);
            sync["synced_beats"] = posture_syncs;
            sync["unsynced_beats"] = beat_total - posture_syncs;
            if (!lags.empty()) {
                std::sort(lags.begin(), lags.end());
                json stats;
                stats["min_s"] = lags.front();
                stats["max_s"] = lags.back();
                stats["median_s"] = lags.size() % 2 == 1
                                        ? lags[lags.size() / 2]
                                        : 0.5 * (lags[lags.size() / 2 - 1] +
                                                 lags[lags.size() / 2]);
                sync["lag"] = std::move(stats);
            }
        }

        json beats = json::array();
        for (const auto& e : analysis.beats) {
            json b = beat_to_json(e);
            if (have_video && (e.is_full_beat() || e.is_half_beat()))
                b["synced"] = synced_ids.count(e.id) > 0;
            beats.push_back(std::move(b));
        }
        report["beats"] = std::move(beats);
        report["sync"] = std::move(sync);
        report["diagnostics"] = diagnostics;
        return kExitOk;
    });
}

Outcome transcribe(const Config& config) {
    return run(config, [&](json& report) {
        if (config.mapping_db.empty())
            throw Error(ErrorKind::Domain, "transcribe needs --mapping-db");
        if (config.annotation.empty() && (config.skeleton.empty() || config.model.empty()))
            throw Error(ErrorKind::Domain,
                        "transcribe needs --annotation, or --skeleton with --model");

        laban::MappingDb db = laban::MappingDb::load(config.mapping_db);
        std::vector<std::string> diagnostics;

        std::vector<std::string> sequence;
        std::vector<AnnotationRecord> records;
        if (!config.annotation.empty()) {
            records = load_annotation_csv(config.annotation);
            for (const auto& r : records)
                sequence.push_back(r.posture_name);
            report["annotation"] = config.annotation;
        } else {
            auto skeletons = reco::load_skeleton_csv(config.skeleton);
            reco::CentroidModel model = reco::CentroidModel::load(config.model);
            std::vector<std::string> per_frame;
            for (const auto& s : skeletons)
                per_frame.push_back(reco::predict(model, s).posture_id);
            sequence = collapse_runs(per_frame);
            report["skeleton"] = config.skeleton;
            report["recognized_frames"] = per_frame.size();
        }
        report["postures"] = sequence;

        // exit 2 with the offending record named, before any output is written
        for (size_t i = 0; i < sequence.size(); ++i)
            if (!db.contains(sequence[i]))
                throw Error(ErrorKind::Validation,
                            "posture '" + sequence[i] + "' (sequence position " +
                                std::to_string(i + 1) + ") is not in the mapping database");

        std::string title = config.title;
        if (title.empty())
            title = config.out_xml.empty() ? "score" : stem_of(config.out_xml);
        laban::LabanScore score = laban::build_score(sequence, db, title);
        report["title"] = title;
        report["measures"] = score.frames.size();

        json outputs = json::object();
        if (!config.out_xml.empty()) {
            write_file(config.out_xml, labanxml::generate_xml(score));
            outputs["xml"] = config.out_xml;
        }
        if (!config.out_svg.empty()) {
            std::vector<std::string> svg_warnings;
            write_file(config.out_svg, svg::render_svg(score, {}, &svg_warnings));
            diagnostics.insert(diagnostics.end(), svg_warnings.begin(),
                               svg_warnings.end());
            outputs["svg"] = config.out_svg;
        }
        report["outputs"] = std::move(outputs);

        // optional audio: tempo, bars and beat/posture sync for the report
        if (!config.audio_events.empty() && !records.empty()) {
            auto onsets = load_audio_events_csv(config.audio_events);
            if (!onsets.empty()) {
                AudioAnalysis analysis =
                    analyze_audio(onsets, config.period_s, config.bar_length);
                diagnostics.insert(diagnostics.end(), analysis.diagnostics.begin(),
                                   analysis.diagnostics.end());
                report["meter"] = meter_to_json(analysis.meter);
                auto video = build_video_events(records);
                SyncResult sync = detect_sync(analysis.beats, video,
                                              config.tolerance_s.value_or(0.0));
                diagnostics.insert(diagnostics.end(), sync.diagnostics.begin(),
                                   sync.diagnostics.end());
                json list = json::array();
                for (const auto& s : sync.events)
                    list.push_back(sync_to_json(s));
                report["sync_events"] = std::move(list);
            }
        }

        // optional ontology cross-check of the annotated performance
        int exit_code = kExitOk;
        if (!config.ontology_dir.empty() && !config.adavu_name.empty() &&
            !records.empty()) {
            ontology::ValidationReport reg_report;
            ontology::Registry registry =
                ontology::load_ontology(config.ontology_dir, reg_report);
            for (const auto& e : reg_report.errors)
                diagnostics.push_back("ontology: " + e);
            const ontology::AdavuDef* adavu = registry.find_adavu(config.adavu_name);
            if (!adavu)
                throw Error(ErrorKind::NotFound,
                            "adavu '" + config.adavu_name + "' is not in the registry");
            ontology::PerformanceCheck check =
                ontology::validate_performance(records, *adavu, registry);
            json validation;
            validation["adavu"] = config.adavu_name;
            validation["beats_checked"] = check.beats_checked;
            json mismatches = json::array();
            for (const auto& m : check.mismatches)
                mismatches.push_back(json{{"beat", m.beat},
                                          {"expected", m.expected},
                                          {"actual", m.actual}});
            validation["mismatches"] = std::move(mismatches);
            validation["warnings"] = check.warnings;
            report["validation"] = std::move(validation);
            if (!check.mismatches.empty())
                exit_code = kExitValidation;
        }

        report["diagnostics"] = diagnostics;
        return exit_code;
    });
}

Outcome validate_ontology(const Config& config) {
    return run(config, [&](json& report) {
        if (config.ontology_dir.empty())
            throw Error(ErrorKind::Domain, "validate-ontology needs --ontology");
        ontology::ValidationReport vr;
        ontology::Registry registry = ontology::load_ontology(config.ontology_dir, vr);
        report["ontology_dir"] = config.ontology_dir;
        report["sollukattus"] = registry.sollukattus.size();
        report["adavus"] = registry.adavus.size();
        report["postures"] = registry.postures.size();
        report["errors"] = vr.errors;
        report["warnings"] = vr.warnings;

        if (!config.mapping_db.empty()) {
            laban::MappingDb db = laban::MappingDb::load(config.mapping_db);
            report["mapping_db_postures"] = db.size();
            json missing = json::array();
            for (const auto& p : registry.postures)
                if (!db.contains(p.posture_id))
                    missing.push_back(p.posture_id);
            report["postures_without_laban_record"] = std::move(missing);
        }
        return vr.errors.empty() ? kExitOk : kExitValidation;
    });
}

Outcome render(const Config& config) {
    return run(config, [&](json& report) {
        if (config.in_xml.empty())
            throw Error(ErrorKind::Domain, "render needs --in-xml");
        if (config.out_svg.empty())
            throw Error(ErrorKind::Domain, "render needs --out-svg");
        std::ifstream in(config.in_xml);
        if (!in)
            throw Error(ErrorKind::Io, "cannot open " + config.in_xml);
        std::string text((std::istreambuf_iterator<char>(in)),
                         std::istreambuf_iterator<char>());

        std::vector<std::string> warnings;
        laban::LabanScore score = labanxml::parse_xml(text, &warnings);
        report["in_xml"] = config.in_xml;
        report["title"] = score.title;
        report["measures"] = score.frames.size();

        std::vector<std::string> svg_warnings;
        write_file(config.out_svg, svg::render_svg(score, {}, &svg_warnings));
        warnings.insert(warnings.end(), svg_warnings.begin(), svg_warnings.end());
        report["out_svg"] = config.out_svg;
        report["diagnostics"] = warnings;
        return kExitOk;
    });
}

Outcome train(const Config& config) {
    return run(config, [&](json& report) {
        if (config.skeleton.empty() || config.annotation.empty())
            throw Error(ErrorKind::Domain, "train needs --skeleton and --annotation");
        if (config.out_model.empty())
            throw Error(ErrorKind::Domain, "train needs --out-model");

        auto skeletons = reco::load_skeleton_csv(config.skeleton);
        auto records = load_annotation_csv(config.annotation);

        // frames inside an annotated hold get that posture as label
        std::vector<reco::LabeledFrame> labeled;
        for (const auto& s : skeletons) {
            for (const auto& r : records) {
                if (s.frame >= r.start_frame && s.frame <= r.end_frame) {
                    labeled.emplace_back(s, r.posture_name);
                    break;
                }
            }
        }
        if (labeled.empty())
            throw Error(ErrorKind::Validation,
                        "no skeleton frame falls inside an annotated posture range");

        reco::CentroidModel model = reco::train(labeled);
        model.save(config.out_model);

        report["skeleton"] = config.skeleton;
        report["annotation"] = config.annotation;
        report["labeled_frames"] = labeled.size();
        report["classes"] = model.classes.size();
        report["out_model"] = config.out_model;
        return kExitOk;
    });
}

Outcome predict(const Config& config) {
    return run(config, [&](json& report) {
        if (config.skeleton.empty() || config.model.empty())
            throw Error(ErrorKind::Domain, "predict needs --skeleton and --model");
        auto skeletons = reco::load_skeleton_csv(config.skeleton);
        reco::CentroidModel model = reco::CentroidModel::load(config.model);

        json predictions = json::array();
        std::vector<std::string> per_frame;
        for (const auto& s : skeletons) {
            reco::Prediction p = reco::predict(model, s);
            per_frame.push_back(p.posture_id);
            predictions.push_back(json{{"frame", s.frame},
                                       {"posture_id", p.posture_id},
                                       {"distance", p.distance}});
        }
        report["model"] = config.model;
        report["skeleton"] = config.skeleton;
        report["predictions"] = std::move(predictions);
        report["posture_sequence"] = collapse_runs(per_frame);
        return kExitOk;
    });
}

} // namespace adavu::pipeline
