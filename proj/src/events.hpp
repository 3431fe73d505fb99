#ifndef ADAVU_EVENTS_HPP
#define ADAVU_EVENTS_HPP

#include <optional>
#include <string>
#include <vector>

namespace adavu::events {

// ---------------------------------------------------------------------------
// Event types
//
// An Adavu performance is analyzed as three event streams: audio (beats and
// vocalized bols), video (held key postures and the motion between them) and
// sync events asserting that a beat and a held posture coincide.
// ---------------------------------------------------------------------------

enum class AudioKind {
    FullBeatBol,    // beat on the tempo grid, with a vocalized bol
    HalfBeatBol,    // beat at mid-period, with a bol
    QuarterBeatBol, // bol between a full and a half beat
    FullBeatNoBol,  // stick-only beat on the grid
    HalfBeatNoBol,  // stick-only beat at mid-period
    BolOnly,        // bol with no beating
};

enum class BarLabel { Downbeat, Upbeat };

struct AudioEvent {
    int id = 0; // ordinal >= 1 within the stream
    AudioKind kind = AudioKind::FullBeatBol;
    double time_s = 0.0;
    std::optional<std::string> bol;
    std::optional<BarLabel> bar_label;
    std::optional<int> bar_index;  // 1-based
    std::optional<int> beat_in_bar; // 1..bar_length, full beats only

    bool is_full_beat() const {
        return kind == AudioKind::FullBeatBol || kind == AudioKind::FullBeatNoBol;
    }
    bool is_half_beat() const {
        return kind == AudioKind::HalfBeatBol || kind == AudioKind::HalfBeatNoBol;
    }
};

enum class VideoKind { NoMotion, Transition, Trajectory };

struct VideoEvent {
    int id = 0; // ordinal >= 1 within the stream, all kinds counted together
    VideoKind kind = VideoKind::NoMotion;
    long frame_start = 0;
    long frame_end = 0; // inclusive, >= frame_start
    std::optional<std::string> posture_id;       // NoMotion only
    std::optional<std::string> trajectory_label; // Trajectory only
};

enum class SyncKind {
    PostureAtFullBeat,
    PostureAtHalfBeat,
    BolAtFullBeat,
    BolAtHalfBeat,
};

struct SyncEvent {
    SyncKind kind = SyncKind::PostureAtFullBeat;
    int audio_id = 0;
    std::optional<int> video_id;           // PostureAt* only
    std::optional<std::string> posture_id; // PostureAt* only
    std::optional<std::string> bol;        // BolAt* only
    double lag_s = 0.0; // beat instant minus posture-interval midpoint
};

struct MeterEstimate {
    double period_s = 0.0; // T
    double bpm = 0.0;      // 60 / T
    int bar_length = 0;    // beats per bar (lambda)
    int bar_count = 0;     // complete bars
    std::vector<int> full_beat_ids;
    std::vector<int> half_beat_ids;
};

// An annotated beating before classification: a time stamp plus an optional
// vocalized bol. Empty bol means a stick-only beat.
struct Onset {
    double time_s = 0.0;
    std::optional<std::string> bol;
};

// One row of the video annotation file (posture held over a frame range).
struct AnnotationRecord {
    std::string posture_name;
    long start_frame = 0;
    long end_frame = 0;
    std::optional<int> beat_number;
    std::vector<std::string> bols;
};

// ---------------------------------------------------------------------------
// Frame <-> time. Video runs at a fixed 30 fps; a frame f spans
// [f/30, (f+1)/30) seconds.
// ---------------------------------------------------------------------------

inline constexpr double kFramesPerSecond = 30.0;

double frame_to_time(long frame);   // frame / 30, throws Domain if negative
long time_to_frame(double time_s);  // round(t * 30), ties away from zero

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

struct TempoResult {
    double period_s = 0.0;
    double bpm = 0.0;
    std::vector<std::string> diagnostics; // intervals deviating > 20% from median
};

// Median of consecutive inter-beat intervals. Needs at least 3 strictly
// increasing full-beat events.
TempoResult estimate_tempo(const std::vector<AudioEvent>& full_beats);

// Picks a tempo period directly from raw onsets so classification can run
// when no period is supplied. Candidates are the median inter-onset interval
// and its double; the grid that leaves no full-beat slot empty wins, smaller
// period on a tie. A stream with a half beat in every single period is
// indistinguishable from double-tempo full beats; callers can override.
double infer_period(const std::vector<Onset>& onsets,
                    std::vector<std::string>* diagnostics = nullptr);

struct ClassifyResult {
    std::vector<AudioEvent> events;
    std::vector<std::string> diagnostics; // onsets matching no grid slot
};

// Classifies onsets against a beat grid of the given period. The first onset
// anchors the grid; the anchor then rolls forward to each accepted full beat,
// which tolerates the drift of a human beat player. Offsets within 0.25*T of
// a full slot are full beats, within 0.25*T of the mid-period are half beats;
// anything else with a bol becomes a quarter beat, without a bol a diagnostic.
ClassifyResult classify_onsets(const std::vector<Onset>& onsets, double period_s);

struct BarResult {
    std::vector<AudioEvent> events;
    int bar_count = 0; // complete bars
    std::vector<std::string> diagnostics;
};

// Numbers full beats 1..bar_length per bar. Downbeat/Upbeat labels are only
// assigned inside complete bars; an incomplete trailing bar is a diagnostic.
// Half and quarter beats inherit the bar of the preceding full beat.
BarResult label_bar_structure(std::vector<AudioEvent> events, int bar_length);

// One NoMotion event per record plus a Transition event for every gap between
// consecutive records. Overlapping records are a validation error.
std::vector<VideoEvent> build_video_events(const std::vector<AnnotationRecord>& records);

struct SyncResult {
    std::vector<SyncEvent> events;
    std::vector<std::string> diagnostics; // beats matching no posture interval
};

// Emits PostureAtFull/HalfBeat for every full/half beat whose instant falls
// inside a NoMotion event's time span (widened by tolerance_s on both ends),
// and BolAtFull/HalfBeat for every beat carrying a bol.
SyncResult detect_sync(const std::vector<AudioEvent>& audio,
                       const std::vector<VideoEvent>& video,
                       double tolerance_s);

// Stream invariants (ordering, bol presence per kind, frame ranges). Returns
// human-readable violations; empty means valid.
std::vector<std::string> check_audio_stream(const std::vector<AudioEvent>& events);
std::vector<std::string> check_video_stream(const std::vector<VideoEvent>& events);

// ---------------------------------------------------------------------------
// File formats
// ---------------------------------------------------------------------------

// Audio event CSV, header `id,time_s,bol`; empty bol cell = stick beat.
std::vector<Onset> load_audio_events_csv(const std::string& path);

// Video annotation CSV, header
// `posture_name,start_frame,end_frame,beat_number,bols`; bols are
// space-separated inside the cell, empty cell = none.
std::vector<AnnotationRecord> load_annotation_csv(const std::string& path);

const char* audio_kind_name(AudioKind k);
const char* video_kind_name(VideoKind k);
const char* sync_kind_name(SyncKind k);
const char* bar_label_name(BarLabel l);

} // namespace adavu::events

#endif
