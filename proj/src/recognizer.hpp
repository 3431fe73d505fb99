#ifndef ADAVU_RECOGNIZER_HPP
#define ADAVU_RECOGNIZER_HPP

#include <array>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace adavu::reco {

// Skeleton-based key-posture classifier. Frames arrive as 20-joint skeletons
// (Kinect 1 joint order, below); features are the joint coordinates after
// normalizing away where the dancer stands, how tall she is and which way she
// faces. Classification is nearest centroid in feature space.

inline constexpr int kJointCount = 20;
inline constexpr int kFeatureSize = 3 * kJointCount;

enum Joint : int {
    HipCenter = 0, Spine, ShoulderCenter, Head,
    ShoulderLeft, ElbowLeft, WristLeft, HandLeft,
    ShoulderRight, ElbowRight, WristRight, HandRight,
    HipLeft, KneeLeft, AnkleLeft, FootLeft,
    HipRight, KneeRight, AnkleRight, FootRight,
};

const std::array<const char*, kJointCount>& joint_names();

struct Vec3 {
    double x = 0, y = 0, z = 0;
};

struct SkeletonFrame {
    long frame = 0;
    std::array<Vec3, kJointCount> joints{};
};

using FeatureVector = std::array<double, kFeatureSize>;

// Hip center to the origin, hip-to-shoulder-center distance to 1, then a yaw
// rotation putting the shoulder line at zero depth (left-to-right shoulder
// along +x). Throws Error{Domain} for a zero torso or a vertical shoulder
// line.
FeatureVector extract_features(const SkeletonFrame& skeleton);

class CentroidModel {
public:
    struct Entry {
        std::string posture_id;
        FeatureVector centroid{};
        int training_count = 0;
    };

    std::vector<Entry> classes; // sorted by posture_id

    static CentroidModel load(const std::string& path);
    void save(const std::string& path) const;
    std::string to_json() const;
    static CentroidModel from_json(const std::string& text);
};

using LabeledFrame = std::pair<SkeletonFrame, std::string>;

// Per-class mean feature vector. Throws Error{Domain} on an empty set.
CentroidModel train(const std::vector<LabeledFrame>& labeled);

struct Prediction {
    std::string posture_id;
    double distance = 0.0;
};

// Nearest centroid by Euclidean distance; exact ties go to the
// lexicographically smaller posture id.
Prediction predict(const CentroidModel& model, const SkeletonFrame& skeleton);

struct Evaluation {
    int total = 0;
    int correct = 0;
    double accuracy = 0.0;
    // confusion[actual][predicted] = count
    std::map<std::string, std::map<std::string, int>> confusion;
};

Evaluation evaluate(const CentroidModel& model, const std::vector<LabeledFrame>& test);

// Skeleton CSV, header `frame,j1_x,j1_y,j1_z,...,j20_x,j20_y,j20_z`
// (j1..j20 in the joint order above). Coordinates must be finite.
std::vector<SkeletonFrame> load_skeleton_csv(const std::string& path);

} // namespace adavu::reco

#endif
