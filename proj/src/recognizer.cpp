#include "recognizer.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include <json.hpp>

#include "csv.hpp"
#include "error.hpp"

namespace adavu::reco {

namespace {

using nlohmann::json;

constexpr double kEps = 1e-12;

} // namespace

const std::array<const char*, kJointCount>& joint_names() {
    static const std::array<const char*, kJointCount> names = {
        "hip_center",     "spine",       "shoulder_center", "head",
        "shoulder_left",  "elbow_left",  "wrist_left",      "hand_left",
        "shoulder_right", "elbow_right", "wrist_right",     "hand_right",
        "hip_left",       "knee_left",   "ankle_left",      "foot_left",
        "hip_right",      "knee_right",  "ankle_right",     "foot_right"};
    return names;
}

FeatureVector extract_features(const SkeletonFrame& skeleton) {
    std::array<Vec3, kJointCount> j = skeleton.joints;

    const Vec3 origin = j[HipCenter];
    for (auto& p : j) {
        p.x -= origin.x;
        p.y -= origin.y;
        p.z -= origin.z;
    }

    const Vec3& sc = j[ShoulderCenter];
    double torso = std::sqrt(sc.x * sc.x + sc.y * sc.y + sc.z * sc.z);
    if (torso < kEps)
        throw Error(ErrorKind::Domain,
                    "degenerate skeleton: zero hip-to-shoulder distance (frame " +
                        std::to_string(skeleton.frame) + ")");
    for (auto& p : j) {
        p.x /= torso;
        p.y /= torso;
        p.z /= torso;
    }

    // yaw-align: left-to-right shoulder vector onto +x, zero depth
    double vx = j[ShoulderRight].x - j[ShoulderLeft].x;
    double vz = j[ShoulderRight].z - j[ShoulderLeft].z;
    double r = std::sqrt(vx * vx + vz * vz);
    if (r < kEps)
        throw Error(ErrorKind::Domain,
                    "degenerate skeleton: shoulder line is vertical (frame " +
                        std::to_string(skeleton.frame) + ")");
    double c = vx / r, s = vz / r;
    for (auto& p : j) {
        double x = p.x * c + p.z * s;
        double z = -p.x * s + p.z * c;
        p.x = x;
        p.z = z;
    }

    FeatureVector f{};
    for (int i = 0; i < kJointCount; ++i) {
        f[3 * i + 0] = j[i].x;
        f[3 * i + 1] = j[i].y;
        f[3 * i + 2] = j[i].z;
    }
    return f;
}

CentroidModel train(const std::vector<LabeledFrame>& labeled) {
    if (labeled.empty())
        throw Error(ErrorKind::Domain, "training needs at least one labeled frame");

    std::map<std::string, std::pair<FeatureVector, int>> sums;
    for (const auto& [skeleton, label] : labeled) {
        if (label.empty())
            throw Error(ErrorKind::Domain, "training frame " +
                                               std::to_string(skeleton.frame) +
                                               " has an empty label");
        FeatureVector f = extract_features(skeleton);
        auto& [sum, count] = sums[label];
        for (int i = 0; i < kFeatureSize; ++i)
            sum[i] += f[i];
        ++count;
    }

    CentroidModel model;
    for (auto& [label, sc] : sums) {
        CentroidModel::Entry e;
        e.posture_id = label;
        e.training_count = sc.second;
        for (int i = 0; i < kFeatureSize; ++i)
            e.centroid[i] = sc.first[i] / sc.second;
        model.classes.push_back(std::move(e));
    }
    return model; // std::map iteration already sorted the classes
}

Prediction predict(const CentroidModel& model, const SkeletonFrame& skeleton) {
    if (model.classes.empty())
        throw Error(ErrorKind::Domain, "model has no classes");
    FeatureVector f = extract_features(skeleton);

    const CentroidModel::Entry* best = nullptr;
    double best_sq = 0.0;
    for (const auto& e : model.classes) {
        double sq = 0.0;
        for (int i = 0; i < kFeatureSize; ++i) {
            double d = f[i] - e.centroid[i];
            sq += d * d;
        }
        if (!best || sq < best_sq ||
            (sq == best_sq && e.posture_id < best->posture_id)) {
            best = &e;
            best_sq = sq;
        }
    }
    return {best->posture_id, std::sqrt(best_sq)};
}

Evaluation evaluate(const CentroidModel& model, const std::vector<LabeledFrame>& test) {
    Evaluation ev;
    for (const auto& [skeleton, label] : test) {
        Prediction p = predict(model, skeleton);
        ++ev.total;
        if (p.posture_id == label)
            ++ev.correct;
        ++ev.confusion[label][p.posture_id];
    }
    ev.accuracy = ev.total == 0 ? 0.0 : static_cast<double>(ev.correct) / ev.total;
    return ev;
}

std::string CentroidModel::to_json() const {
    nlohmann::ordered_json doc;
    doc["schema_version"] = 1;
    doc["feature_size"] = kFeatureSize;
    auto arr = nlohmann::ordered_json::array();
    for (const auto& e : classes) {
        nlohmann::ordered_json c;
        c["posture_id"] = e.posture_id;
        c["training_count"] = e.training_count;
        c["centroid"] = e.centroid;
        arr.push_back(std::move(c));
    }
    doc["classes"] = std::move(arr);
    return doc.dump(2) + "\n";
}

CentroidModel CentroidModel::from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorKind::Parse, std::string("model: ") + e.what());
    }
    if (!doc.contains("schema_version") || doc["schema_version"].get<int>() != 1)
        throw Error(ErrorKind::Parse, "model: missing or unsupported schema_version");
    if (doc.value("feature_size", 0) != kFeatureSize)
        throw Error(ErrorKind::Parse, "model: wrong feature size");
    CentroidModel model;
    for (const auto& c : doc["classes"]) {
        Entry e;
        e.posture_id = c.at("posture_id").get<std::string>();
        e.training_count = c.at("training_count").get<int>();
        auto v = c.at("centroid").get<std::vector<double>>();
        if (v.size() != kFeatureSize)
            throw Error(ErrorKind::Parse, "model: centroid for '" + e.posture_id +
                                              "' has wrong length");
        std::copy(v.begin(), v.end(), e.centroid.begin());
        for (double x : e.centroid)
            if (!std::isfinite(x))
                throw Error(ErrorKind::Parse, "model: non-finite centroid value in '" +
                                                  e.posture_id + "'");
        model.classes.push_back(std::move(e));
    }
    if (model.classes.empty())
        throw Error(ErrorKind::Parse, "model: no classes");
    std::sort(model.classes.begin(), model.classes.end(),
              [](const Entry& a, const Entry& b) { return a.posture_id < b.posture_id; });
    return model;
}

CentroidModel CentroidModel::load(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorKind::Io, "cannot open " + path);
    std::string text((std::istreambuf_iterator<char>(in)),
                     std::istreambuf_iterator<char>());
    return from_json(text);
}

void CentroidModel::save(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw Error(ErrorKind::Io, "cannot write " + path);
    out << to_json();
}

std::vector<SkeletonFrame> load_skeleton_csv(const std::string& path) {
    csv::Row header = {"frame"};
    for (int i = 1; i <= kJointCount; ++i) {
        header.push_back("j" + std::to_string(i) + "_x");
        header.push_back("j" + std::to_string(i) + "_y");
        header.push_back("j" + std::to_string(i) + "_z");
    }
    csv::Table t = csv::read_file(path, header);

    std::vector<SkeletonFrame> frames;
    frames.reserve(t.rows.size());
    for (size_t r = 0; r < t.rows.size(); ++r) {
        const auto& row = t.rows[r];
        SkeletonFrame f;
        try {
            f.frame = std::stol(row[0]);
            for (int i = 0; i < kJointCount; ++i) {
                f.joints[i].x = std::stod(row[1 + 3 * i]);
                f.joints[i].y = std::stod(row[2 + 3 * i]);
                f.joints[i].z = std::stod(row[3 + 3 * i]);
            }
        } catch (const std::exception&) {
            throw Error(ErrorKind::Parse, path + ":" + std::to_string(t.line_numbers[r]) +
                                              ": bad numeric value");
        }
        for (const auto& p : f.joints)
            if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z))
                throw Error(ErrorKind::Parse,
                            path + ":" + std::to_string(t.line_numbers[r]) +
                                ": non-finite coordinate");
        frames.push_back(f);
    }
    return frames;
}

} // namespace adavu::reco
