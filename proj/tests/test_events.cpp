#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "error.hpp"
#include "events.hpp"
#include "helpers.hpp"

using namespace adavu;
using namespace adavu::events;

namespace {

// Kuditta Mettu recording: 16 full beats over two 8-beat bars.
const std::vector<double> kKudittaMettuTimes = {
    2.681, 3.912, 5.108, 6.269, 7.523, 8.742, 9.891, 11.064,
    12.271, 13.386, 14.512, 15.603, 16.764, 17.902, 19.028, 20.178};
const std::vector<const char*> kKudittaMettuBols = {
    "tei", "hat", "tei", "hi", "tei", "hat", "tei", "hi",
    "tei", "hat", "tei", "hi", "tei", "hat", "tei", "hi"};

// Tatta_C recording: full beats (tei) with half beats (ya) at mid-period;
// periods 4 and 8 have no half beat.
const std::vector<double> kTattaCTimes = {6.571, 7.395, 8.185, 8.962, 9.752,
                                          10.565, 11.366, 13.003, 13.815, 14.628,
                                          15.441, 16.184, 17.031, 17.809};
const std::vector<const char*> kTattaCBols = {"tei", "ya", "tei", "ya", "tei",
                                              "ya", "tei", "tei", "ya", "tei",
                                              "ya", "tei", "ya", "tei"};

// Key-posture (no-motion) frame ranges of the same Kuditta Mettu take.
const std::vector<std::pair<long, long>> kKudittaMettuKFrames = {
    {70, 99},   {104, 124}, {146, 172}, {177, 191}, {215, 245}, {250, 262},
    {288, 314}, {318, 345}, {359, 386}, {391, 410}, {430, 451}, {456, 470},
    {493, 521}, {526, 542}, {565, 587}, {591, 620}};

std::vector<Onset> make_onsets(const std::vector<double>& times,
                               const std::vector<const char*>& bols) {
    std::vector<Onset> onsets;
    for (size_t i = 0; i < times.size(); ++i)
        onsets.push_back({times[i], std::string(bols[i])});
    return onsets;
}

std::vector<AudioEvent> full_beats_at(const std::vector<double>& times) {
    std::vector<AudioEvent> events;
    for (size_t i = 0; i < times.size(); ++i) {
        AudioEvent e;
        e.id = static_cast<int>(i) + 1;
        e.kind = AudioKind::FullBeatBol;
        e.time_s = times[i];
        e.bol = "tei";
        events.push_back(std::move(e));
    }
    return events;
}

} // namespace

TEST_CASE("frame/time mapping at 30 fps") {
    CHECK(frame_to_time(0) == 0.0);
    CHECK(frame_to_time(359) == doctest::Approx(11.9667).epsilon(1e-4));
    CHECK(time_to_frame(2.681) == 80); // 80.43 rounds down
    CHECK(time_to_frame(0.0) == 0);
    // ties round away from zero
    CHECK(time_to_frame(0.05) == 2); // 1.5 -> 2
    CHECK_THROWS_AS(frame_to_time(-1), Error);
    CHECK_THROWS_AS(time_to_frame(-0.1), Error);
}

TEST_CASE("tempo estimation on the recorded streams") {
    SUBCASE("Kuditta Mettu: T about 1.16 s") {
        TempoResult t = estimate_tempo(full_beats_at(kKudittaMettuTimes));
        CHECK(t.period_s == doctest::Approx(1.161).epsilon(0.002));
        CHECK(t.period_s > 1.10);
        CHECK(t.period_s < 1.25);
        CHECK(t.bpm == doctest::Approx(60.0 / t.period_s));
    }
    SUBCASE("Tatta_C full beats: T about 1.61 s, bar gap spans one period") {
        std::vector<double> fulls = {6.571, 8.185, 9.752, 11.366,
                                     13.003, 14.628, 16.184, 17.809};
        TempoResult t = estimate_tempo(full_beats_at(fulls));
        CHECK(t.period_s == doctest::Approx(1.614).epsilon(0.002));
        CHECK(t.period_s > 1.50);
        CHECK(t.period_s < 1.70);
        // the 11.366 -> 13.003 gap is a single period, so no deviation flagged
        CHECK(t.diagnostics.empty());
    }
    SUBCASE("exact synthetic periodicity") {
        std::vector<double> times;
        for (int i = 0; i < 8; ++i)
            times.push_back(1.0 * i);
        TempoResult t = estimate_tempo(full_beats_at(times));
        CHECK(t.period_s == doctest::Approx(1.0));
    }
    SUBCASE("too few beats") {
        CHECK_THROWS_AS(estimate_tempo(full_beats_at({1.0, 2.0})), Error);
    }
}

TEST_CASE("onset classification") {
    SUBCASE("Tatta_C splits into 8 full and 6 half beats") {
        auto onsets = make_onsets(kTattaCTimes, kTattaCBols);
        double period = infer_period(onsets);
        CHECK(period == doctest::Approx(1.624).epsilon(0.01));

        ClassifyResult r = classify_onsets(onsets, period);
        REQUIRE(r.events.size() == 14);
        int fulls = 0, halves = 0;
        for (const auto& e : r.events) {
            if (e.is_full_beat()) {
                ++fulls;
                CHECK(*e.bol == "tei");
            }
            if (e.is_half_beat()) {
                ++halves;
                CHECK(*e.bol == "ya");
            }
        }
        CHECK(fulls == 8);
        CHECK(halves == 6);
        CHECK(r.diagnostics.empty());

        // half-beat offset from its full beat stays near T/2
        double t_est = estimate_tempo([&] {
            std::vector<AudioEvent> f;
            for (const auto& e : r.events)
                if (e.is_full_beat())
                    f.push_back(e);
            return f;
        }()).period_s;
        double prev_full = 0.0;
        for (const auto& e : r.events) {
            if (e.is_full_beat())
                prev_full = e.time_s;
            else if (e.is_half_beat()) {
                double offset = e.time_s - prev_full;
                CHECK(offset >= 0.4 * t_est);
                CHECK(offset <= 0.6 * t_est);
            }
        }
    }
    SUBCASE("Kuditta Mettu classifies as 16 full beats, no halves") {
        auto onsets = make_onsets(kKudittaMettuTimes, kKudittaMettuBols);
        double period = infer_period(onsets);
        CHECK(period == doctest::Approx(1.161).epsilon(0.01));
        ClassifyResult r = classify_onsets(onsets, period);
        REQUIRE(r.events.size() == 16);
        for (const auto& e : r.events)
            CHECK(e.kind == AudioKind::FullBeatBol);
    }
    SUBCASE("single onset anchors as a full beat") {
        ClassifyResult r = classify_onsets({{0.0, std::string("tei")}}, 1.0);
        REQUIRE(r.events.size() == 1);
        CHECK(r.events[0].kind == AudioKind::FullBeatBol);
        CHECK(r.events[0].id == 1);
    }
    SUBCASE("empty input is an empty stream") {
        ClassifyResult r = classify_onsets({}, 1.0);
        CHECK(r.events.empty());
        CHECK(r.diagnostics.empty());
    }
    // the full and half bands tile the period except right after an accepted
    // full beat, so the off-grid cases live in that double-strike zone
    SUBCASE("off-grid onset with a bol becomes a quarter beat") {
        std::vector<Onset> onsets = {{0.0, std::string("tei")},
                                     {0.2, std::string("ta")},
                                     {1.0, std::string("tei")}};
        ClassifyResult r = classify_onsets(onsets, 1.0);
        REQUIRE(r.events.size() == 3);
        CHECK(r.events[1].kind == AudioKind::QuarterBeatBol);
    }
    SUBCASE("off-grid onset without a bol goes to diagnostics") {
        std::vector<Onset> onsets = {{0.0, std::string("tei")},
                                     {0.2, std::nullopt},
                                     {1.0, std::string("tei")}};
        ClassifyResult r = classify_onsets(onsets, 1.0);
        CHECK(r.events.size() == 2);
        CHECK(r.diagnostics.size() == 1);
    }
    SUBCASE("stick-only onsets become no-bol events") {
        std::vector<Onset> onsets = {{0.0, std::string("tei")},
                                     {0.5, std::nullopt},
                                     {1.0, std::nullopt}};
        ClassifyResult r = classify_onsets(onsets, 1.0);
        REQUIRE(r.events.size() == 3);
        CHECK(r.events[1].kind == AudioKind::HalfBeatNoBol);
        CHECK(r.events[2].kind == AudioKind::FullBeatNoBol);
    }
}

TEST_CASE("classify then re-estimate reproduces a jittered grid period") {
    // 400 full beats, positions jittered up to 5% of T around the true grid
    for (unsigned seed : {11u, 23u, 37u, 41u, 59u, 61u, 73u, 89u, 97u, 101u, 113u, 127u}) {
        std::mt19937 rng(seed);
        std::uniform_real_distribution<double> period_dist(0.8, 2.0);
        double period = period_dist(rng);
        std::uniform_real_distribution<double> jitter(-0.05 * period, 0.05 * period);

        std::vector<Onset> onsets;
        for (int i = 0; i < 400; ++i)
            onsets.push_back({10.0 + i * period + jitter(rng), std::string("tei")});

        ClassifyResult r = classify_onsets(onsets, period);
        std::vector<AudioEvent> fulls;
        for (const auto& e : r.events)
            if (e.is_full_beat())
                fulls.push_back(e);
        REQUIRE(fulls.size() >= 3);
        TempoResult t = estimate_tempo(fulls);
        CHECK(std::abs(t.period_s - period) / period < 0.01);
    }
}

TEST_CASE("bar structure labeling") {
    SUBCASE("two 8-beat bars: downbeats at events 1 and 9, upbeats at 8 and 16") {
        auto onsets = make_onsets(kKudittaMettuTimes, kKudittaMettuBols);
        auto events = classify_onsets(onsets, 1.161).events;
        BarResult r = label_bar_structure(std::move(events), 8);
        CHECK(r.bar_count == 2);
        CHECK(r.diagnostics.empty());
        int downbeats = 0, upbeats = 0;
        for (const auto& e : r.events) {
            if (e.bar_label == BarLabel::Downbeat) {
                ++downbeats;
                CHECK((e.id == 1 || e.id == 9));
                CHECK(*e.beat_in_bar == 1);
            }
            if (e.bar_label == BarLabel::Upbeat) {
                ++upbeats;
                CHECK((e.id == 8 || e.id == 16));
                CHECK(*e.beat_in_bar == 8);
            }
        }
        CHECK(downbeats == 2);
        CHECK(upbeats == 2);
    }
    SUBCASE("six beats in a 6-beat bar form one bar") {
        std::vector<Onset> onsets;
        for (int i = 0; i < 6; ++i)
            onsets.push_back({1.0 * i, std::string("tei")});
        BarResult r = label_bar_structure(classify_onsets(onsets, 1.0).events, 6);
        CHECK(r.bar_count == 1);
        CHECK(r.events.front().bar_label == BarLabel::Downbeat);
        CHECK(r.events.back().bar_label == BarLabel::Upbeat);
    }
    SUBCASE("incomplete final bar gets positions but no bar labels") {
        std::vector<Onset> onsets;
        for (int i = 0; i < 14; ++i)
            onsets.push_back({1.0 * i, std::string("tei")});
        BarResult r = label_bar_structure(classify_onsets(onsets, 1.0).events, 8);
        CHECK(r.bar_count == 1);
        REQUIRE(r.diagnostics.size() == 1);
        int downbeats = 0, upbeats = 0;
        for (const auto& e : r.events) {
            if (e.bar_label == BarLabel::Downbeat)
                ++downbeats;
            if (e.bar_label == BarLabel::Upbeat)
                ++upbeats;
        }
        CHECK(downbeats == 1);
        CHECK(upbeats == 1);
        // beats 9..14 carry positions 1..6 of bar 2
        for (int i = 8; i < 14; ++i) {
            CHECK(*r.events[i].bar_index == 2);
            CHECK(*r.events[i].beat_in_bar == i - 7);
        }
    }
    SUBCASE("downbeat ids sit at 1 mod bar length over full-beat ordinals") {
        std::vector<Onset> onsets;
        for (int i = 0; i < 24; ++i)
            onsets.push_back({0.5 * i, std::string("tei")});
        BarResult r = label_bar_structure(classify_onsets(onsets, 0.5).events, 8);
        int ordinal = 0;
        for (const auto& e : r.events) {
            if (!e.is_full_beat())
                continue;
            ++ordinal;
            if (e.bar_label == BarLabel::Downbeat)
                CHECK(ordinal % 8 == 1);
        }
        CHECK(r.bar_count == 3);
    }
    SUBCASE("bar length below 2 is a domain error") {
        CHECK_THROWS_AS(label_bar_structure({}, 1), Error);
    }
    SUBCASE("halves inherit the preceding full beat's bar") {
        auto onsets = make_onsets(kTattaCTimes, kTattaCBols);
        BarResult r = label_bar_structure(classify_onsets(onsets, 1.624).events, 8);
        CHECK(r.bar_count == 1);
        for (const auto& e : r.events)
            if (e.is_half_beat())
                CHECK(*e.bar_index == 1);
    }
}

TEST_CASE("video events from annotation records") {
    SUBCASE("five posture holds produce four transitions in the gaps") {
        std::vector<AnnotationRecord> records = {
            {"Natta1P1", 70, 89, 0, {}},
            {"Natta1P2", 101, 134, 1, {"tei", "yum"}},
            {"Natta1P1", 144, 174, 2, {"tat", "ta"}},
            {"Natta1P3", 189, 218, 3, {"tei", "yum"}},
            {"Natta1P1", 231, 261, 4, {"ta"}},
        };
        auto events = build_video_events(records);
        REQUIRE(events.size() == 9);
        std::vector<std::pair<long, long>> gaps;
        int no_motion = 0;
        for (const auto& e : events) {
            if (e.kind == VideoKind::NoMotion)
                ++no_motion;
            else
                gaps.emplace_back(e.frame_start, e.frame_end);
        }
        CHECK(no_motion == 5);
        CHECK(gaps == std::vector<std::pair<long, long>>{
                          {90, 100}, {135, 143}, {175, 188}, {219, 230}});
        CHECK(check_video_stream(events).empty());
    }
    SUBCASE("interval partition: events cover the span with no overlap") {
        std::vector<AnnotationRecord> records = {
            {"A", 0, 10, 0, {}}, {"B", 15, 20, 1, {}}, {"C", 21, 30, 2, {}}};
        auto events = build_video_events(records);
        long expected_next = 0;
        for (const auto& e : events) {
            CHECK(e.frame_start == expected_next);
            expected_next = e.frame_end + 1;
        }
        CHECK(expected_next == 31);
    }
    SUBCASE("single record yields one no-motion event") {
        auto events = build_video_events({{"A", 5, 9, 0, {}}});
        REQUIRE(events.size() == 1);
        CHECK(events[0].kind == VideoKind::NoMotion);
        CHECK(events[0].posture_id == "A");
    }
    SUBCASE("overlap names both records") {
        std::vector<AnnotationRecord> records = {{"A", 0, 10, 0, {}},
                                                 {"B", 10, 20, 1, {}}};
        try {
            build_video_events(records);
            FAIL("expected a validation error");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::Validation);
            std::string msg = e.what();
            CHECK(msg.find("'A'") != std::string::npos);
            CHECK(msg.find("'B'") != std::string::npos);
        }
    }
}

TEST_CASE("sync detection") {
    auto onsets = make_onsets(kKudittaMettuTimes, kKudittaMettuBols);
    auto beats = label_bar_structure(classify_onsets(onsets, 1.161).events, 8).events;

    std::vector<AnnotationRecord> records;
    for (size_t i = 0; i < kKudittaMettuKFrames.size(); ++i)
        records.push_back({"P" + std::to_string(i + 1), kKudittaMettuKFrames[i].first,
                           kKudittaMettuKFrames[i].second, static_cast<int>(i + 1),
                           {kKudittaMettuBols[i]}});
    auto video = build_video_events(records);

    SUBCASE("all 16 beats land inside their key-posture span at tolerance 0") {
        SyncResult r = detect_sync(beats, video, 0.0);
        int posture_syncs = 0, bol_syncs = 0;
        for (const auto& s : r.events) {
            if (s.kind == SyncKind::PostureAtFullBeat)
                ++posture_syncs;
            if (s.kind == SyncKind::BolAtFullBeat) {
                ++bol_syncs;
                CHECK(s.bol.has_value());
            }
        }
        CHECK(posture_syncs == 16);
        CHECK(bol_syncs == 16);
        CHECK(r.diagnostics.empty());

        // brute force over all audio x video pairs, written out directly
        std::vector<int> contained_ids;
        for (const auto& b : beats) {
            bool inside = false;
            for (const auto& v : video) {
                if (v.kind != VideoKind::NoMotion)
                    continue;
                double begin = v.frame_start / 30.0;
                double end = (v.frame_end + 1) / 30.0;
                if (b.time_s >= begin && b.time_s < end)
                    inside = true;
            }
            if (inside)
                contained_ids.push_back(b.id);
        }
        std::vector<int> synced_ids;
        for (const auto& s : r.events)
            if (s.kind == SyncKind::PostureAtFullBeat)
                synced_ids.push_back(s.audio_id);
        CHECK(contained_ids == synced_ids);

        // every reported sync re-checks as containment
        for (const auto& s : r.events) {
            if (s.kind != SyncKind::PostureAtFullBeat)
                continue;
            const VideoEvent* v = nullptr;
            for (const auto& cand : video)
                if (cand.id == *s.video_id)
                    v = &cand;
            REQUIRE(v != nullptr);
            double t = beats[static_cast<size_t>(s.audio_id - 1)].time_s;
            CHECK(t >= v->frame_start / 30.0);
            CHECK(t < (v->frame_end + 1) / 30.0);
        }
    }
    SUBCASE("disjoint intervals go to diagnostics") {
        std::vector<AudioEvent> one;
        AudioEvent b;
        b.id = 1;
        b.kind = AudioKind::FullBeatBol;
        b.time_s = 5.0;
        b.bol = "tei";
        one.push_back(b);
        VideoEvent nm;
        nm.id = 1;
        nm.kind = VideoKind::NoMotion;
        nm.frame_start = 180;
        nm.frame_end = 210;
        nm.posture_id = "P";
        SyncResult r = detect_sync(one, {nm}, 0.0);
        REQUIRE(r.events.size() == 1); // the bol sync is still emitted
        CHECK(r.events[0].kind == SyncKind::BolAtFullBeat);
        CHECK(r.diagnostics.size() == 1);
    }
    SUBCASE("tolerance widens the intervals") {
        std::vector<AudioEvent> one;
        AudioEvent b;
        b.id = 1;
        b.kind = AudioKind::FullBeatNoBol;
        b.time_s = 5.9;
        one.push_back(b);
        VideoEvent nm;
        nm.id = 1;
        nm.kind = VideoKind::NoMotion;
        nm.frame_start = 180;
        nm.frame_end = 210;
        nm.posture_id = "P";
        CHECK(detect_sync(one, {nm}, 0.0).events.empty());
        SyncResult r = detect_sync(one, {nm}, 0.2);
        REQUIRE(r.events.size() == 1);
        CHECK(r.events[0].kind == SyncKind::PostureAtFullBeat);
        CHECK(r.events[0].lag_s < 0.0); // beat leads the posture interval
    }
    SUBCASE("half beats sync as half-beat events") {
        auto tatta = make_onsets(kTattaCTimes, kTattaCBols);
        auto tbeats = classify_onsets(tatta, 1.624).events;
        VideoEvent nm;
        nm.id = 1;
        nm.kind = VideoKind::NoMotion;
        nm.frame_start = time_to_frame(7.3);
        nm.frame_end = time_to_frame(7.5);
        nm.posture_id = "P";
        SyncResult r = detect_sync(tbeats, {nm}, 0.0);
        bool found = false;
        for (const auto& s : r.events)
            if (s.kind == SyncKind::PostureAtHalfBeat)
                found = true;
        CHECK(found);
    }
    SUBCASE("empty inputs produce an empty result") {
        SyncResult r = detect_sync({}, {}, 0.0);
        CHECK(r.events.empty());
        CHECK(r.diagnostics.empty());
    }
}

TEST_CASE("audio stream invariants catch bol/kind mismatches") {
    AudioEvent e;
    e.id = 1;
    e.kind = AudioKind::FullBeatBol;
    e.time_s = 1.0;
    CHECK(!check_audio_stream({e}).empty()); // bol required but missing
    e.bol = "tei";
    CHECK(check_audio_stream({e}).empty());
    e.kind = AudioKind::FullBeatNoBol;
    CHECK(!check_audio_stream({e}).empty()); // bol forbidden but present

    // a vocalization without any beating is representable too
    AudioEvent v;
    v.id = 2;
    v.kind = AudioKind::BolOnly;
    v.time_s = 2.0;
    v.bol = "tam";
    e.bol.reset();
    CHECK(check_audio_stream({e, v}).empty());
    CHECK(!v.is_full_beat());
    CHECK(!v.is_half_beat());
}

TEST_CASE("csv loaders") {
    SUBCASE("audio events from the recorded fixture") {
        auto onsets = load_audio_events_csv(
            testutil::data_path("fixtures/kuditta_mettu_audio.csv"));
        REQUIRE(onsets.size() == 16);
        CHECK(onsets[0].time_s == doctest::Approx(2.681));
        CHECK(*onsets[0].bol == "tei");
        CHECK(*onsets[15].bol == "hi");
    }
    SUBCASE("annotation from the Natta fixture") {
        auto records =
            load_annotation_csv(testutil::data_path("fixtures/natta1_annotation.csv"));
        REQUIRE(records.size() == 5);
        CHECK(records[0].posture_name == "Natta1P1");
        CHECK(records[0].bols.empty());
        CHECK(records[1].bols == std::vector<std::string>{"tei", "yum"});
        CHECK(*records[4].beat_number == 4);
    }
    SUBCASE("missing file is an io error") {
        CHECK_THROWS_AS(load_audio_events_csv("/nonexistent/x.csv"), Error);
    }
}
