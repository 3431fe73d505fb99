// extern-C surface of the shared library. Thin translation layer: opaque
// handles wrap the C++ objects, exceptions become status codes, messages land
// in a thread-local slot.

#include "adavu.h"

#include <cstring>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "error.hpp"
#include "labanxml.hpp"
#include "laban.hpp"
#include "ontology.hpp"
#include "pipeline.hpp"
#include "svg_staff.hpp"

namespace {

thread_local std::string g_last_error;

adavu_status status_of(const adavu::Error& e) {
    switch (e.kind()) {
    case adavu::ErrorKind::Io: return ADAVU_ERROR_IO;
    case adavu::ErrorKind::Parse: return ADAVU_ERROR_PARSE;
    case adavu::ErrorKind::Validation: return ADAVU_ERROR_VALIDATION;
    case adavu::ErrorKind::Domain: return ADAVU_ERROR_DOMAIN;
    case adavu::ErrorKind::NotFound: return ADAVU_ERROR_NOT_FOUND;
    }
    return ADAVU_ERROR_INTERNAL;
}

template <typename Fn>
adavu_status guarded(Fn&& fn) {
    try {
        g_last_error.clear();
        return fn();
    } catch (const adavu::Error& e) {
        g_last_error = e.what();
        return status_of(e);
    } catch (const std::exception& e) {
        g_last_error = e.what();
        return ADAVU_ERROR_INTERNAL;
    } catch (...) {
        g_last_error = "unknown error";
        return ADAVU_ERROR_INTERNAL;
    }
}

char* copy_string(const std::string& s) {
    char* out = new char[s.size() + 1];
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

adavu::pipeline::Config config_of(const adavu_options& o) {
    adavu::pipeline::Config c;
    auto set = [](std::string& dst, const char* src) {
        if (src)
            dst = src;
    };
    set(c.ontology_dir, o.ontology_dir);
    set(c.mapping_db, o.mapping_db);
    set(c.audio_events, o.audio_events);
    set(c.annotation, o.annotation);
    set(c.skeleton, o.skeleton);
    set(c.model, o.model);
    set(c.out_model, o.out_model);
    set(c.in_xml, o.in_xml);
    set(c.adavu_name, o.adavu_name);
    set(c.title, o.title);
    set(c.out_xml, o.out_xml);
    set(c.out_svg, o.out_svg);
    set(c.report_path, o.report_path);
    if (o.bar_length > 0)
        c.bar_length = o.bar_length;
    if (o.tolerance_s >= 0.0)
        c.tolerance_s = o.tolerance_s;
    if (o.period_s > 0.0)
        c.period_s = o.period_s;
    return c;
}

adavu_status status_of_exit_code(int exit_code, const std::string& report_json) {
    if (exit_code == adavu::pipeline::kExitOk)
        return ADAVU_OK;
    // recover the precise kind from the report for a faithful status
    try {
        auto doc = nlohmann::json::parse(report_json);
        if (doc.contains("error")) {
            std::string kind = doc["error"].value("kind", "");
            g_last_error = doc["error"].value("message", "");
            if (kind == "io") return ADAVU_ERROR_IO;
            if (kind == "parse") return ADAVU_ERROR_PARSE;
            if (kind == "validation") return ADAVU_ERROR_VALIDATION;
            if (kind == "domain") return ADAVU_ERROR_DOMAIN;
            if (kind == "not-found") return ADAVU_ERROR_NOT_FOUND;
            return ADAVU_ERROR_INTERNAL;
        }
    } catch (...) {
    }
    g_last_error = "validation failures; see report";
    return exit_code == adavu::pipeline::kExitEnvironment ? ADAVU_ERROR_IO
                                                          : ADAVU_ERROR_VALIDATION;
}

template <typename Fn>
adavu_status run_pipeline(const adavu_options* options, char** report_json, Fn&& fn) {
    return guarded([&]() -> adavu_status {
        if (!options)
            throw adavu::Error(adavu::ErrorKind::Domain, "options must not be null");
        adavu::pipeline::Outcome outcome = fn(config_of(*options));
        if (report_json)
            *report_json = copy_string(outcome.report_json);
        return status_of_exit_code(outcome.exit_code, outcome.report_json);
    });
}

} // namespace

struct adavu_registry {
    adavu::ontology::Registry registry;
    adavu::ontology::ValidationReport report;
};

struct adavu_mapping_db {
    adavu::laban::MappingDb db;
};

struct adavu_score {
    adavu::laban::LabanScore score;
};

extern "C" {

const char* adavu_version(void) { return "1.0.0"; }

const char* adavu_status_name(adavu_status status) {
    switch (status) {
    case ADAVU_OK: return "ok";
    case ADAVU_ERROR_IO: return "io-error";
    case ADAVU_ERROR_PARSE: return "parse-error";
    case ADAVU_ERROR_VALIDATION: return "validation-error";
    case ADAVU_ERROR_DOMAIN: return "domain-error";
    case ADAVU_ERROR_NOT_FOUND: return "not-found";
    case ADAVU_ERROR_INTERNAL: return "internal-error";
    }
    return "unknown";
}

const char* adavu_last_error(void) { return g_last_error.c_str(); }

void adavu_string_free(char* text) { delete[] text; }

adavu_status adavu_registry_load(const char* ontology_dir, adavu_registry** out) {
    return guarded([&]() -> adavu_status {
        if (!ontology_dir || !out)
            throw adavu::Error(adavu::ErrorKind::Domain, "null argument");
        auto handle = std::make_unique<adavu_registry>();
        handle->registry = adavu::ontology::load_ontology(ontology_dir, handle->report);
        *out = handle.release();
        return ADAVU_OK;
    });
}

void adavu_registry_free(adavu_registry* registry) { delete registry; }

int adavu_registry_sollukattu_count(const adavu_registry* r) {
    return r ? static_cast<int>(r->registry.sollukattus.size()) : 0;
}

int adavu_registry_adavu_count(const adavu_registry* r) {
    return r ? static_cast<int>(r->registry.adavus.size()) : 0;
}

int adavu_registry_posture_count(const adavu_registry* r) {
    return r ? static_cast<int>(r->registry.postures.size()) : 0;
}

int adavu_registry_error_count(const adavu_registry* r) {
    return r ? static_cast<int>(r->report.errors.size()) : 0;
}

int adavu_registry_warning_count(const adavu_registry* r) {
    return r ? static_cast<int>(r->report.warnings.size()) : 0;
}

const char* adavu_registry_error(const adavu_registry* r, int index) {
    if (!r || index < 0 || index >= static_cast<int>(r->report.errors.size()))
        return nullptr;
    return r->report.errors[static_cast<size_t>(index)].c_str();
}

const char* adavu_registry_warning(const adavu_registry* r, int index) {
    if (!r || index < 0 || index >= static_cast<int>(r->report.warnings.size()))
        return nullptr;
    return r->report.warnings[static_cast<size_t>(index)].c_str();
}

adavu_status adavu_mapping_db_load(const char* path, adavu_mapping_db** out) {
    return guarded([&]() -> adavu_status {
        if (!path || !out)
            throw adavu::Error(adavu::ErrorKind::Domain, "null argument");
        auto handle = std::make_unique<adavu_mapping_db>();
        handle->db = adavu::laban::MappingDb::load(path);
        *out = handle.release();
        return ADAVU_OK;
    });
}

void adavu_mapping_db_free(adavu_mapping_db* db) { delete db; }

int adavu_mapping_db_size(const adavu_mapping_db* db) {
    return db ? db->db.size() : 0;
}

int adavu_mapping_db_contains(const adavu_mapping_db* db, const char* posture_id) {
    return db && posture_id && db->db.contains(posture_id) ? 1 : 0;
}

adavu_status adavu_score_build(const adavu_mapping_db* db,
                               const char* const* posture_ids, int count,
                               const char* title, adavu_score** out) {
    return guarded([&]() -> adavu_status {
        if (!db || !out || (count > 0 && !posture_ids) || count < 0)
            throw adavu::Error(adavu::ErrorKind::Domain, "null argument");
        std::vector<std::string> ids;
        ids.reserve(static_cast<size_t>(count));
        for (int i = 0; i < count; ++i) {
            if (!posture_ids[i])
                throw adavu::Error(adavu::ErrorKind::Domain, "null posture id");
            ids.emplace_back(posture_ids[i]);
        }
        auto handle = std::make_unique<adavu_score>();
        handle->score =
            adavu::laban::build_score(ids, db->db, title ? title : "score");
        *out = handle.release();
        return ADAVU_OK;
    });
}

adavu_status adavu_score_parse_xml(const char* xml_text, adavu_score** out) {
    return guarded([&]() -> adavu_status {
        if (!xml_text || !out)
            throw adavu::Error(adavu::ErrorKind::Domain, "null argument");
        auto handle = std::make_unique<adavu_score>();
        handle->score = adavu::labanxml::parse_xml(xml_text);
        *out = handle.release();
        return ADAVU_OK;
    });
}

void adavu_score_free(adavu_score* score) { delete score; }

int adavu_score_measure_count(const adavu_score* score) {
    return score ? static_cast<int>(score->score.frames.size()) : 0;
}

adavu_status adavu_score_to_xml(const adavu_score* score, char** out_text) {
    return guarded([&]() -> adavu_status {
        if (!score || !out_text)
            throw adavu::Error(adavu::ErrorKind::Domain, "null argument");
        *out_text = copy_string(adavu::labanxml::generate_xml(score->score));
        return ADAVU_OK;
    });
}

adavu_status adavu_score_to_svg(const adavu_score* score, char** out_text) {
    return guarded([&]() -> adavu_status {
        if (!score || !out_text)
            throw adavu::Error(adavu::ErrorKind::Domain, "null argument");
        *out_text = copy_string(adavu::svg::render_svg(score->score));
        return ADAVU_OK;
    });
}

void adavu_options_init(adavu_options* options) {
    if (!options)
        return;
    std::memset(options, 0, sizeof(*options));
    options->tolerance_s = -1.0; // default: 0 s, but distinguish "unset"
}

adavu_status adavu_transcribe(const adavu_options* options, char** report_json) {
    return run_pipeline(options, report_json, adavu::pipeline::transcribe);
}

adavu_status adavu_analyze_sync(const adavu_options* options, char** report_json) {
    return run_pipeline(options, report_json, adavu::pipeline::analyze_sync);
}

adavu_status adavu_validate_ontology(const adavu_options* options, char** report_json) {
    return run_pipeline(options, report_json, adavu::pipeline::validate_ontology);
}

adavu_status adavu_render(const adavu_options* options, char** report_json) {
    return run_pipeline(options, report_json, adavu::pipeline::render);
}

adavu_status adavu_train(const adavu_options* options, char** report_json) {
    return run_pipeline(options, report_json, adavu::pipeline::train);
}

adavu_status adavu_predict(const adavu_options* options, char** report_json) {
    return run_pipeline(options, report_json, adavu::pipeline::predict);
}

int adavu_status_exit_code(adavu_status status) {
    switch (status) {
    case ADAVU_OK: return 0;
    case ADAVU_ERROR_IO:
    case ADAVU_ERROR_PARSE:
    case ADAVU_ERROR_INTERNAL: return 1;
    case ADAVU_ERROR_VALIDATION:
    case ADAVU_ERROR_DOMAIN:
    case ADAVU_ERROR_NOT_FOUND: return 2;
    }
    return 1;
}

} // extern "C"
