#include "events.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "csv.hpp"
#include "error.hpp"

namespace adavu::events {

namespace {

constexpr double kGridTolerance = 0.25; // fraction of T accepted around a slot

std::string fmt(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

double median(std::vector<double> v) {
    std::sort(v.begin(), v.end());
    size_t n = v.size();
    if (n % 2 == 1)
        return v[n / 2];
    return 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

std::vector<double> consecutive_intervals(const std::vector<double>& times) {
    std::vector<double> d;
    d.reserve(times.size() > 0 ? times.size() - 1 : 0);
    for (size_t i = 1; i < times.size(); ++i)
        d.push_back(times[i] - times[i - 1]);
    return d;
}

// Time span covered by a video event: frame f lasts until the next frame
// starts, so the range [s, e] covers [s/30, (e+1)/30).
struct Interval {
    double begin;
    double end;
};

Interval event_interval(const VideoEvent& e, double tolerance_s) {
    return {static_cast<double>(e.frame_start) / kFramesPerSecond - tolerance_s,
            static_cast<double>(e.frame_end + 1) / kFramesPerSecond + tolerance_s};
}

} // namespace

double frame_to_time(long frame) {
    if (frame < 0)
        throw Error(ErrorKind::Domain, "frame number must be non-negative, got " +
                                           std::to_string(frame));
    return static_cast<double>(frame) / kFramesPerSecond;
}

long time_to_frame(double time_s) {
    if (time_s < 0.0)
        throw Error(ErrorKind::Domain, "time must be non-negative, got " + fmt(time_s));
    return std::lround(time_s * kFramesPerSecond);
}

TempoResult estimate_tempo(const std::vector<AudioEvent>& full_beats) {
    if (full_beats.size() < 3)
        throw Error(ErrorKind::Domain,
                    "tempo estimation needs at least 3 full beats, got " +
                        std::to_string(full_beats.size()));
    std::vector<double> times;
    times.reserve(full_beats.size());
    for (const auto& e : full_beats) {
        if (!times.empty() && e.time_s <= times.back())
            throw Error(ErrorKind::Domain,
                        "full-beat times must be strictly increasing near t=" +
                            fmt(e.time_s));
        times.push_back(e.time_s);
    }

    auto intervals = consecutive_intervals(times);
    TempoResult result;
    result.period_s = median(intervals);
    result.bpm = 60.0 / result.period_s;
    for (size_t i = 0; i < intervals.size(); ++i) {
        if (std::abs(intervals[i] - result.period_s) > 0.2 * result.period_s)
            result.diagnostics.push_back(
                "interval " + std::to_string(i + 1) + " (" + fmt(intervals[i]) +
                " s) deviates more than 20% from the median period " +
                fmt(result.period_s) + " s");
    }
    return result;
}

namespace {

struct GridScore {
    int skipped_fulls = 0;
    int rejects = 0;
    int halves = 0;
};

// Dry-run of the rolling-anchor classifier, counting full-beat slots that no
// onset filled. An undershot period shows up as skipped slots.
GridScore score_grid(const std::vector<Onset>& onsets, double period) {
    GridScore s;
    double anchor = onsets.front().time_s;
    for (size_t i = 1; i < onsets.size(); ++i) {
        double d = onsets[i].time_s - anchor;
        long m = std::lround(d / period);
        if (m >= 1 && std::abs(d - m * period) <= kGridTolerance * period) {
            s.skipped_fulls += static_cast<int>(m - 1);
            anchor = onsets[i].time_s;
            continue;
        }
        // offset from the nearest mid-period slot, in [-T/2, T/2)
        double h = d - (std::floor(d / period) * period + 0.5 * period);
        if (std::abs(h) <= kGridTolerance * period) {
            ++s.halves;
            continue;
        }
        ++s.rejects;
    }
    return s;
}

} // namespace

double infer_period(const std::vector<Onset>& onsets,
                    std::vector<std::string>* diagnostics) {
    if (onsets.size() < 3)
        throw Error(ErrorKind::Domain,
                    "period inference needs at least 3 onsets, got " +
                        std::to_string(onsets.size()));
    std::vector<double> times;
    for (const auto& o : onsets)
        times.push_back(o.time_s);
    double base = median(consecutive_intervals(times));
    if (base <= 0.0)
        throw Error(ErrorKind::Domain, "onset times must be strictly increasing");

    GridScore s1 = score_grid(onsets, base);
    GridScore s2 = score_grid(onsets, 2.0 * base);
    int bad1 = s1.skipped_fulls + s1.rejects;
    int bad2 = s2.skipped_fulls + s2.rejects;
    double period = (bad2 < bad1) ? 2.0 * base : base;
    if (diagnostics) {
        if (period != base)
            diagnostics->push_back(
                "median inter-onset interval " + fmt(base) +
                " s leaves " + std::to_string(bad1) +
                " unfilled full-beat slots; using doubled period " + fmt(period) + " s");
        if (std::min(bad1, bad2) > 0)
            diagnostics->push_back("beat grid is irregular: " +
                                   std::to_string(std::min(bad1, bad2)) +
                                   " slots unexplained at period " + fmt(period) + " s");
    }
    return period;
}

ClassifyResult classify_onsets(const std::vector<Onset>& onsets, double period_s) {
    if (period_s <= 0.0)
        throw Error(ErrorKind::Domain, "period must be positive, got " + fmt(period_s));

    ClassifyResult result;
    if (onsets.empty())
        return result;

    for (size_t i = 1; i < onsets.size(); ++i)
        if (onsets[i].time_s <= onsets[i - 1].time_s)
            throw Error(ErrorKind::Domain,
                        "onsets must be strictly increasing in time near t=" +
                            fmt(onsets[i].time_s));

    const double tol = kGridTolerance * period_s;
    double anchor = onsets.front().time_s;
    int next_id = 1;

    auto push = [&](AudioKind kind, const Onset& o) {
        AudioEvent e;
        e.id = next_id++;
        e.kind = kind;
        e.time_s = o.time_s;
        e.bol = o.bol;
        result.events.push_back(std::move(e));
    };

    push(onsets.front().bol ? AudioKind::FullBeatBol : AudioKind::FullBeatNoBol,
         onsets.front());

    for (size_t i = 1; i < onsets.size(); ++i) {
        const Onset& o = onsets[i];
        double d = o.time_s - anchor;
        long m = std::lround(d / period_s);
        if (m >= 1 && std::abs(d - m * period_s) <= tol) {
            push(o.bol ? AudioKind::FullBeatBol : AudioKind::FullBeatNoBol, o);
            anchor = o.time_s;
            continue;
        }
        double h = d - (std::floor(d / period_s) * period_s + 0.5 * period_s);
        if (std::abs(h) <= tol) {
            push(o.bol ? AudioKind::HalfBeatBol : AudioKind::HalfBeatNoBol, o);
            continue;
        }
        if (o.bol) {
            push(AudioKind::QuarterBeatBol, o);
        } else {
            result.diagnostics.push_back("onset at " + fmt(o.time_s) +
                                         " s matches no grid slot (period " +
                                         fmt(period_s) + " s); dropped");
        }
    }
    return result;
}

BarResult label_bar_structure(std::vector<AudioEvent> events, int bar_length) {
    if (bar_length <= 1)
        throw Error(ErrorKind::Domain, "bar length must be at least 2, got " +
                                           std::to_string(bar_length));
    BarResult result;

    int total_fulls = 0;
    for (const auto& e : events)
        if (e.is_full_beat())
            ++total_fulls;
    int complete_bars = total_fulls / bar_length;

    int full_index = 0; // 0-based over full beats
    std::optional<int> current_bar;
    for (auto& e : events) {
        e.bar_label.reset();
        if (e.is_full_beat()) {
            int bar = full_index / bar_length + 1;
            int pos = full_index % bar_length + 1;
            e.bar_index = bar;
            e.beat_in_bar = pos;
            if (bar <= complete_bars) {
                if (pos == 1)
                    e.bar_label = BarLabel::Downbeat;
                else if (pos == bar_length)
                    e.bar_label = BarLabel::Upbeat;
            }
            current_bar = bar;
            ++full_index;
        } else {
            e.bar_index = current_bar;
            e.beat_in_bar.reset();
        }
    }

    result.bar_count = complete_bars;
    if (total_fulls % bar_length != 0)
        result.diagnostics.push_back(
            "final bar " + std::to_string(complete_bars + 1) + " is incomplete: " +
            std::to_string(total_fulls % bar_length) + " of " +
            std::to_string(bar_length) + " beats");
    result.events = std::move(events);
    return result;
}

std::vector<VideoEvent> build_video_events(const std::vector<AnnotationRecord>& records) {
    std::vector<VideoEvent> out;
    int next_id = 1;
    for (size_t i = 0; i < records.size(); ++i) {
        const auto& r = records[i];
        if (r.start_frame < 0 || r.end_frame < r.start_frame)
            throw Error(ErrorKind::Validation,
                        "record '" + r.posture_name + "' has invalid frame range " +
                            std::to_string(r.start_frame) + "-" +
                            std::to_string(r.end_frame));
        if (i > 0) {
            const auto& prev = records[i - 1];
            if (r.start_frame <= prev.end_frame)
                throw Error(ErrorKind::Validation,
                            "records '" + prev.posture_name + "' (" +
                                std::to_string(prev.start_frame) + "-" +
                                std::to_string(prev.end_frame) + ") and '" +
                                r.posture_name + "' (" + std::to_string(r.start_frame) +
                                "-" + std::to_string(r.end_frame) + ") overlap");
            if (r.start_frame > prev.end_frame + 1) {
                VideoEvent t;
                t.id = next_id++;
                t.kind = VideoKind::Transition;
                t.frame_start = prev.end_frame + 1;
                t.frame_end = r.start_frame - 1;
                out.push_back(std::move(t));
            }
        }
        VideoEvent k;
        k.id = next_id++;
        k.kind = VideoKind::NoMotion;
        k.frame_start = r.start_frame;
        k.frame_end = r.end_frame;
        k.posture_id = r.posture_name;
        out.push_back(std::move(k));
    }
    return out;
}

SyncResult detect_sync(const std::vector<AudioEvent>& audio,
                       const std::vector<VideoEvent>& video,
                       double tolerance_s) {
    if (tolerance_s < 0.0)
        throw Error(ErrorKind::Domain, "tolerance must be non-negative");

    SyncResult result;
    for (const auto& beat : audio) {
        bool full = beat.is_full_beat();
        bool half = beat.is_half_beat();
        if (full || half) {
            const VideoEvent* best = nullptr;
            double best_lag = 0.0;
            for (const auto& v : video) {
                if (v.kind != VideoKind::NoMotion)
                    continue;
                Interval iv = event_interval(v, tolerance_s);
                if (beat.time_s < iv.begin || beat.time_s >= iv.end)
                    continue;
                double lag = beat.time_s - 0.5 * (iv.begin + iv.end);
                if (!best || std::abs(lag) < std::abs(best_lag)) {
                    best = &v;
                    best_lag = lag;
                }
            }
            if (best) {
                SyncEvent s;
                s.kind = full ? SyncKind::PostureAtFullBeat : SyncKind::PostureAtHalfBeat;
                s.audio_id = beat.id;
                s.video_id = best->id;
                s.posture_id = best->posture_id;
                s.lag_s = best_lag;
                result.events.push_back(std::move(s));
            } else {
                result.diagnostics.push_back(
                    "beat " + std::to_string(beat.id) + " at " + fmt(beat.time_s) +
                    " s lies inside no key-posture interval");
            }
        }
        if (beat.bol && (full || half)) {
            SyncEvent s;
            s.kind = full ? SyncKind::BolAtFullBeat : SyncKind::BolAtHalfBeat;
            s.audio_id = beat.id;
            s.bol = beat.bol;
            result.events.push_back(std::move(s));
        }
    }
    return result;
}

std::vector<std::string> check_audio_stream(const std::vector<AudioEvent>& events) {
    std::vector<std::string> problems;
    for (size_t i = 0; i < events.size(); ++i) {
        const auto& e = events[i];
        bool needs_bol = e.kind == AudioKind::FullBeatBol ||
                         e.kind == AudioKind::HalfBeatBol ||
                         e.kind == AudioKind::QuarterBeatBol ||
                         e.kind == AudioKind::BolOnly;
        if (needs_bol && !e.bol)
            problems.push_back("event " + std::to_string(e.id) + " (" +
                               audio_kind_name(e.kind) + ") is missing its bol");
        if (!needs_bol && e.bol)
            problems.push_back("event " + std::to_string(e.id) + " (" +
                               audio_kind_name(e.kind) + ") must not carry a bol");
        if (i > 0 && events[i].time_s <= events[i - 1].time_s)
            problems.push_back("event " + std::to_string(e.id) +
                               " breaks strict time ordering");
    }
    return problems;
}

std::vector<std::string> check_video_stream(const std::vector<VideoEvent>& events) {
    std::vector<std::string> problems;
    for (size_t i = 0; i < events.size(); ++i) {
        const auto& e = events[i];
        if (e.frame_start > e.frame_end)
            problems.push_back("event " + std::to_string(e.id) +
                               " has start frame after end frame");
        if ((e.kind == VideoKind::NoMotion) != e.posture_id.has_value())
            problems.push_back("event " + std::to_string(e.id) +
                               " posture id must be present exactly for no-motion events");
        if (e.kind != VideoKind::Trajectory && e.trajectory_label)
            problems.push_back("event " + std::to_string(e.id) +
                               " carries a trajectory label without trajectory kind");
        if (i > 0 && e.frame_start <= events[i - 1].frame_end)
            problems.push_back("event " + std::to_string(e.id) +
                               " overlaps the previous event");
    }
    return problems;
}

std::vector<Onset> load_audio_events_csv(const std::string& path) {
    csv::Table t = csv::read_file(path, {"id", "time_s", "bol"});
    std::vector<Onset> onsets;
    onsets.reserve(t.rows.size());
    for (size_t i = 0; i < t.rows.size(); ++i) {
        const auto& row = t.rows[i];
        Onset o;
        try {
            o.time_s = std::stod(row[1]);
        } catch (const std::exception&) {
            throw Error(ErrorKind::Parse, path + ":" + std::to_string(t.line_numbers[i]) +
                                              ": bad time value '" + row[1] + "'");
        }
        if (!row[2].empty())
            o.bol = row[2];
        if (!onsets.empty() && o.time_s <= onsets.back().time_s)
            throw Error(ErrorKind::Parse,
                        path + ":" + std::to_string(t.line_numbers[i]) +
                            ": times must be strictly increasing");
        onsets.push_back(std::move(o));
    }
    return onsets;
}

std::vector<AnnotationRecord> load_annotation_csv(const std::string& path) {
    csv::Table t = csv::read_file(
        path, {"posture_name", "start_frame", "end_frame", "beat_number", "bols"});
    std::vector<AnnotationRecord> records;
    records.reserve(t.rows.size());
    for (size_t i = 0; i < t.rows.size(); ++i) {
        const auto& row = t.rows[i];
        AnnotationRecord r;
        r.posture_name = row[0];
        try {
            r.start_frame = std::stol(row[1]);
            r.end_frame = std::stol(row[2]);
            if (!row[3].empty())
                r.beat_number = std::stoi(row[3]);
        } catch (const std::exception&) {
            throw Error(ErrorKind::Parse, path + ":" + std::to_string(t.line_numbers[i]) +
                                              ": bad numeric value");
        }
        if (!row[4].empty()) {
            std::istringstream bols(row[4]);
            std::string b;
            while (bols >> b)
                r.bols.push_back(b);
        }
        if (!records.empty() && r.start_frame < records.back().start_frame)
            throw Error(ErrorKind::Parse,
                        path + ":" + std::to_string(t.line_numbers[i]) +
                            ": records must be sorted by start frame");
        records.push_back(std::move(r));
    }
    return records;
}

const char* audio_kind_name(AudioKind k) {
    switch (k) {
    case AudioKind::FullBeatBol: return "full-beat-bol";
    case AudioKind::HalfBeatBol: return "half-beat-bol";
    case AudioKind::QuarterBeatBol: return "quarter-beat-bol";
    case AudioKind::FullBeatNoBol: return "full-beat-no-bol";
    case AudioKind::HalfBeatNoBol: return "half-beat-no-bol";
    case AudioKind::BolOnly: return "bol-only";
    }
    return "unknown";
}

const char* video_kind_name(VideoKind k) {
    switch (k) {
    case VideoKind::NoMotion: return "no-motion";
    case VideoKind::Transition: return "transition";
    case VideoKind::Trajectory: return "trajectory";
    }
    return "unknown";
}

const char* sync_kind_name(SyncKind k) {
    switch (k) {
    case SyncKind::PostureAtFullBeat: return "posture-at-full-beat";
    case SyncKind::PostureAtHalfBeat: return "posture-at-half-beat";
    case SyncKind::BolAtFullBeat: return "bol-at-full-beat";
    case SyncKind::BolAtHalfBeat: return "bol-at-half-beat";
    }
    return "unknown";
}

const char* bar_label_name(BarLabel l) {
    return l == BarLabel::Downbeat ? "downbeat" : "upbeat";
}

} // namespace adavu::events
