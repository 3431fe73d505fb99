#ifndef ADAVU_TESTS_HELPERS_HPP
#define ADAVU_TESTS_HELPERS_HPP

#include <random>
#include <string>
#include <vector>

#include "laban.hpp"
#include "recognizer.hpp"

namespace testutil {

#ifndef ADAVU_DATA_DIR
#error "ADAVU_DATA_DIR must be defined by the build"
#endif

inline std::string data_path(const std::string& rel) {
    return std::string(ADAVU_DATA_DIR) + "/" + rel;
}

inline std::string tmp_path(const std::string& name) {
    return std::string(ADAVU_TEST_TMPDIR) + "/" + name;
}

// Random score whose content is limited to what LabanXML carries, so the
// round-trip identity is exact. Supports always get a direction (a frame
// needs one) and levels obey direction > 0 => level > 0.
inline adavu::laban::LabanScore random_score(std::mt19937& rng, int max_frames = 6) {
    using adavu::laban::LabanLimb;
    std::uniform_int_distribution<int> frame_count(0, max_frames);
    std::uniform_int_distribution<int> direction(0, 11);
    std::uniform_int_distribution<int> nonzero_direction(1, 11);
    std::uniform_int_distribution<int> level(1, 3);
    std::uniform_int_distribution<int> folding(0, 6);
    std::uniform_int_distribution<int> touch(0, 10);
    std::uniform_int_distribution<int> title_len(1, 12);
    std::uniform_int_distribution<int> letter(0, 25);

    adavu::laban::LabanScore score;
    int chars = title_len(rng);
    for (int i = 0; i < chars; ++i)
        score.title.push_back(static_cast<char>('a' + letter(rng)));

    auto random_limb = [&](bool force_direction) {
        LabanLimb limb;
        limb.direction = force_direction ? nonzero_direction(rng) : direction(rng);
        limb.level = limb.direction > 0 ? level(rng) : 0;
        return limb;
    };

    int n = frame_count(rng);
    for (int m = 0; m < n; ++m) {
        adavu::laban::LabanFrame f;
        f.measure = m;
        f.left_support = random_limb(true);
        f.right_support = random_limb(true);
        f.left_leg.limb = random_limb(false);
        f.right_leg.limb = random_limb(false);
        f.left_leg.knee_folding = folding(rng);
        f.right_leg.knee_folding = folding(rng);
        f.left_leg.touch = touch(rng);
        f.right_leg.touch = touch(rng);
        f.left_arm.limb = random_limb(false);
        f.right_arm.limb = random_limb(false);
        f.left_arm.elbow_folding = folding(rng);
        f.right_arm.elbow_folding = folding(rng);
        f.head = random_limb(false);
        score.frames.push_back(std::move(f));
    }
    return score;
}

// Plausible standing skeleton in meters, hip center at `base`.
inline adavu::reco::SkeletonFrame base_skeleton() {
    using adavu::reco::Vec3;
    adavu::reco::SkeletonFrame s;
    auto set = [&](int j, double x, double y, double z) { s.joints[j] = Vec3{x, y, z}; };
    set(adavu::reco::HipCenter, 0.0, 1.0, 0.0);
    set(adavu::reco::Spine, 0.0, 1.25, 0.02);
    set(adavu::reco::ShoulderCenter, 0.0, 1.5, 0.0);
    set(adavu::reco::Head, 0.0, 1.7, 0.03);
    set(adavu::reco::ShoulderLeft, -0.2, 1.45, 0.0);
    set(adavu::reco::ElbowLeft, -0.45, 1.42, 0.05);
    set(adavu::reco::WristLeft, -0.65, 1.4, 0.08);
    set(adavu::reco::HandLeft, -0.72, 1.39, 0.09);
    set(adavu::reco::ShoulderRight, 0.2, 1.45, 0.0);
    set(adavu::reco::ElbowRight, 0.45, 1.42, 0.05);
    set(adavu::reco::WristRight, 0.65, 1.4, 0.08);
    set(adavu::reco::HandRight, 0.72, 1.39, 0.09);
    set(adavu::reco::HipLeft, -0.1, 0.95, 0.0);
    set(adavu::reco::KneeLeft, -0.15, 0.55, 0.06);
    set(adavu::reco::AnkleLeft, -0.17, 0.12, 0.02);
    set(adavu::reco::FootLeft, -0.18, 0.05, 0.12);
    set(adavu::reco::HipRight, 0.1, 0.95, 0.0);
    set(adavu::reco::KneeRight, 0.15, 0.55, 0.06);
    set(adavu::reco::AnkleRight, 0.17, 0.12, 0.02);
    set(adavu::reco::FootRight, 0.18, 0.05, 0.12);
    return s;
}

// Distinct synthetic poses: limbs displaced per class so centroids are
// well separated relative to small noise.
inline adavu::reco::SkeletonFrame class_skeleton(int klass) {
    adavu::reco::SkeletonFrame s = base_skeleton();
    std::mt19937 rng(1234u + static_cast<unsigned>(klass) * 7919u);
    std::uniform_real_distribution<double> d(-0.35, 0.35);
    for (int j = 0; j < adavu::reco::kJointCount; ++j) {
        if (j == adavu::reco::HipCenter || j == adavu::reco::ShoulderCenter ||
            j == adavu::reco::ShoulderLeft || j == adavu::reco::ShoulderRight)
            continue; // keep the normalization anchors stable
        s.joints[j].x += d(rng);
        s.joints[j].y += d(rng);
        s.joints[j].z += d(rng);
    }
    return s;
}

inline adavu::reco::SkeletonFrame perturb(const adavu::reco::SkeletonFrame& s, double sigma,
                                   std::mt19937& rng) {
    std::normal_distribution<double> noise(0.0, sigma);
    adavu::reco::SkeletonFrame out = s;
    for (auto& p : out.joints) {
        p.x += noise(rng);
        p.y += noise(rng);
        p.z += noise(rng);
    }
    return out;
}

} // namespace testutil

#endif
