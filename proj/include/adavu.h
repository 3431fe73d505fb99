/*
 * adavu: Bharatanatyam Adavu transcription toolchain.
 *
 * C interface of the shared library. All objects are opaque handles created
 * and destroyed through these functions; every fallible call returns an
 * adavu_status and leaves a human-readable explanation in adavu_last_error()
 * (thread local). Strings returned through char** are heap-allocated and must
 * be released with adavu_string_free().
 */

#ifndef ADAVU_H
#define ADAVU_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum adavu_status {
    ADAVU_OK = 0,
    ADAVU_ERROR_IO = 1,         /* file missing / unreadable / unwritable */
    ADAVU_ERROR_PARSE = 2,      /* malformed CSV / JSON / XML */
    ADAVU_ERROR_VALIDATION = 3, /* well-formed input breaking a domain rule */
    ADAVU_ERROR_DOMAIN = 4,     /* bad argument */
    ADAVU_ERROR_NOT_FOUND = 5,  /* unknown posture / adavu / sollukattu */
    ADAVU_ERROR_INTERNAL = 6
} adavu_status;

const char* adavu_version(void);
const char* adavu_status_name(adavu_status status);

/* Message of the last failure on this thread; empty string if none. */
const char* adavu_last_error(void);

void adavu_string_free(char* text);

/* ------------------------------------------------------------------ */
/* Ontology registry                                                   */
/* ------------------------------------------------------------------ */

typedef struct adavu_registry adavu_registry;

/* Loads sollukattus.json, adavus.json, postures.json from a directory.
 * Semantic validation findings do not fail the load; inspect the issue
 * accessors. */
adavu_status adavu_registry_load(const char* ontology_dir, adavu_registry** out);
void adavu_registry_free(adavu_registry* registry);

int adavu_registry_sollukattu_count(const adavu_registry* registry);
int adavu_registry_adavu_count(const adavu_registry* registry);
int adavu_registry_posture_count(const adavu_registry* registry);
int adavu_registry_error_count(const adavu_registry* registry);
int adavu_registry_warning_count(const adavu_registry* registry);
/* Borrowed pointer, valid while the registry lives; NULL if out of range. */
const char* adavu_registry_error(const adavu_registry* registry, int index);
const char* adavu_registry_warning(const adavu_registry* registry, int index);

/* ------------------------------------------------------------------ */
/* Laban mapping database and scores                                   */
/* ------------------------------------------------------------------ */

typedef struct adavu_mapping_db adavu_mapping_db;
typedef struct adavu_score adavu_score;

adavu_status adavu_mapping_db_load(const char* path, adavu_mapping_db** out);
void adavu_mapping_db_free(adavu_mapping_db* db);
int adavu_mapping_db_size(const adavu_mapping_db* db);
int adavu_mapping_db_contains(const adavu_mapping_db* db, const char* posture_id);

/* Encodes a posture sequence into a score with measures 0..count-1. */
adavu_status adavu_score_build(const adavu_mapping_db* db,
                               const char* const* posture_ids, int count,
                               const char* title, adavu_score** out);
adavu_status adavu_score_parse_xml(const char* xml_text, adavu_score** out);
void adavu_score_free(adavu_score* score);

int adavu_score_measure_count(const adavu_score* score);
adavu_status adavu_score_to_xml(const adavu_score* score, char** out_text);
adavu_status adavu_score_to_svg(const adavu_score* score, char** out_text);

/* ------------------------------------------------------------------ */
/* Pipeline (mirrors the CLI subcommands)                               */
/* ------------------------------------------------------------------ */

typedef struct adavu_options {
    const char* ontology_dir; /* directory with the three ontology files */
    const char* mapping_db;   /* posture -> Laban JSON database */
    const char* audio_events; /* CSV: id,time_s,bol */
    const char* annotation;   /* CSV: posture_name,start_frame,end_frame,beat_number,bols */
    const char* skeleton;     /* CSV: frame,j1_x,...,j20_z */
    const char* model;        /* recognizer model JSON to load */
    const char* out_model;    /* recognizer model JSON to write (train) */
    const char* in_xml;       /* LabanXML input (render) */
    const char* adavu_name;   /* e.g. "Natta 1"; enables performance validation */
    const char* title;        /* score title; default derives from out_xml */
    const char* out_xml;
    const char* out_svg;
    const char* report_path;  /* JSON report destination; NULL keeps it in memory */
    int bar_length;           /* beats per bar; 0 = default (8) */
    double tolerance_s;       /* sync tolerance; negative = default (0) */
    double period_s;          /* tempo period override; 0 or negative = infer */
} adavu_options;

void adavu_options_init(adavu_options* options);

/* Each call fills *report_json (JSON text, adavu_string_free to release) even
 * when it fails. The status maps to the CLI exit codes: OK = 0, IO/PARSE = 1,
 * VALIDATION/DOMAIN/NOT_FOUND = 2. */
adavu_status adavu_transcribe(const adavu_options* options, char** report_json);
adavu_status adavu_analyze_sync(const adavu_options* options, char** report_json);
adavu_status adavu_validate_ontology(const adavu_options* options, char** report_json);
adavu_status adavu_render(const adavu_options* options, char** report_json);
adavu_status adavu_train(const adavu_options* options, char** report_json);
adavu_status adavu_predict(const adavu_options* options, char** report_json);

/* Exit code a CLI should use for a status. */
int adavu_status_exit_code(adavu_status status);

#ifdef __cplusplus
}
#endif

#endif /* ADAVU_H */
