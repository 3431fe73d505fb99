#include "laban.hpp"

#include <fstream>

#include <json.hpp>

#include "error.hpp"

namespace adavu::laban {

namespace {

using nlohmann::json;

void check_range(std::vector<std::string>& out, const std::string& what, int value,
                 int lo, int hi) {
    if (value < lo || value > hi)
        out.push_back(what + " = " + std::to_string(value) + " outside " +
                      std::to_string(lo) + ".." + std::to_string(hi));
}

void check_limb(std::vector<std::string>& out, const std::string& what,
                const LabanLimb& limb) {
    check_range(out, what + " direction", limb.direction, 0, kMaxDirection);
    check_range(out, what + " level", limb.level, 0, kMaxLevel);
    if (limb.direction > 0 && limb.level == 0)
        out.push_back(what + " has a direction but no level");
}

int get_int(const json& o, const char* key, const std::string& ctx) {
    if (!o.contains(key) || !o[key].is_number_integer())
        throw Error(ErrorKind::Parse, ctx + ": missing integer field '" + key + "'");
    return o[key].get<int>();
}

} // namespace

bool LabanFrame::same_codes(const LabanFrame& o) const {
    return left_support == o.left_support && right_support == o.right_support &&
           left_leg == o.left_leg && right_leg == o.right_leg &&
           left_arm == o.left_arm && right_arm == o.right_arm && head == o.head;
}

int mirror_direction(int code) {
    if (code <= 1)
        return code;
    // Even codes are the left-side variants, odd the right-side ones.
    return (code % 2 == 0) ? code + 1 : code - 1;
}

LabanLimb mirror_limb(const LabanLimb& limb) {
    return {mirror_direction(limb.direction), limb.level};
}

std::pair<LegLaban, LegLaban> expand_mirror(const LegLaban& half) {
    if (!half.mirror)
        return {half, half};
    LegLaban right = half;
    right.limb = mirror_limb(half.limb);
    return {half, right};
}

std::pair<ArmLaban, ArmLaban> expand_mirror(const ArmLaban& half) {
    if (!half.mirror)
        return {half, half};
    ArmLaban right = half;
    right.limb = mirror_limb(half.limb);
    return {half, right};
}

LabanFrame mirror_frame(const LabanFrame& frame) {
    LabanFrame m = frame;
    m.left_support = mirror_limb(frame.right_support);
    m.right_support = mirror_limb(frame.left_support);
    m.left_leg = frame.right_leg;
    m.left_leg.limb = mirror_limb(frame.right_leg.limb);
    m.right_leg = frame.left_leg;
    m.right_leg.limb = mirror_limb(frame.left_leg.limb);
    m.left_arm = frame.right_arm;
    m.left_arm.limb = mirror_limb(frame.right_arm.limb);
    m.right_arm = frame.left_arm;
    m.right_arm.limb = mirror_limb(frame.left_arm.limb);
    m.head = mirror_limb(frame.head);
    return m;
}

std::vector<std::string> check_frame(const LabanFrame& frame) {
    std::vector<std::string> problems;
    check_limb(problems, "left support", frame.left_support);
    check_limb(problems, "right support", frame.right_support);
    check_limb(problems, "left leg", frame.left_leg.limb);
    check_limb(problems, "right leg", frame.right_leg.limb);
    check_limb(problems, "left arm", frame.left_arm.limb);
    check_limb(problems, "right arm", frame.right_arm.limb);
    check_limb(problems, "head", frame.head);
    check_range(problems, "left knee folding", frame.left_leg.knee_folding, 0, kMaxFolding);
    check_range(problems, "right knee folding", frame.right_leg.knee_folding, 0, kMaxFolding);
    check_range(problems, "left touch", frame.left_leg.touch, 0, kMaxTouch);
    check_range(problems, "right touch", frame.right_leg.touch, 0, kMaxTouch);
    check_range(problems, "left elbow folding", frame.left_arm.elbow_folding, 0, kMaxFolding);
    check_range(problems, "right elbow folding", frame.right_arm.elbow_folding, 0, kMaxFolding);
    if (frame.left_leg.crossing < 0 || frame.right_leg.crossing < 0 ||
        frame.left_arm.crossing < 0 || frame.right_arm.crossing < 0)
        problems.push_back("crossing counts must be non-negative");
    if (frame.left_support.direction == 0 && frame.right_support.direction == 0 &&
        !frame.left_leg.hip_support && !frame.right_leg.hip_support)
        problems.push_back("no support: both support directions are 0 and no hip support");
    return problems;
}

MappingDb MappingDb::load(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorKind::Io, "cannot open " + path);
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw Error(ErrorKind::Parse, path + ": " + e.what());
    }
    if (!doc.contains("schema_version") || doc["schema_version"].get<int>() != 1)
        throw Error(ErrorKind::Parse, path + ": missing or unsupported schema_version");
    if (!doc.contains("postures") || !doc["postures"].is_array())
        throw Error(ErrorKind::Parse, path + ": missing 'postures' array");

    MappingDb db;
    for (const auto& o : doc["postures"]) {
        Record rec;
        if (!o.contains("posture_id") || !o["posture_id"].is_string())
            throw Error(ErrorKind::Parse, path + ": record without posture_id");
        rec.posture_id = o["posture_id"].get<std::string>();
        const std::string ctx = path + " " + rec.posture_id;
        if (o.contains("aliases"))
            for (const auto& a : o["aliases"])
                rec.aliases.push_back(a.get<std::string>());
        rec.provenance = o.value("provenance", "derived");

        LabanFrame f;
        f.posture_id = rec.posture_id;

        LegLaban leg;
        LabanLimb support;
        support.direction = get_int(o, "support_direction", ctx);
        support.level = get_int(o, "support_level", ctx);
        leg.limb.direction = get_int(o, "leg_direction", ctx);
        leg.limb.level = get_int(o, "leg_level", ctx);
        leg.crossing = get_int(o, "leg_crossing", ctx);
        leg.mirror = get_int(o, "leg_mirror", ctx) != 0;
        leg.hip_support = get_int(o, "hip_support", ctx) != 0;
        leg.knee_folding = get_int(o, "knee_folding", ctx);
        leg.touch = get_int(o, "touch", ctx);

        ArmLaban arm;
        arm.limb.direction = get_int(o, "arm_direction", ctx);
        arm.limb.level = get_int(o, "arm_level", ctx);
        arm.crossing = get_int(o, "arm_crossing", ctx);
        arm.elbow_folding = get_int(o, "elbow_folding", ctx);
        arm.body_inclusion = get_int(o, "body_inclusion", ctx) != 0;
        arm.mirror = get_int(o, "arm_mirror", ctx) != 0;

        f.head.direction = get_int(o, "head_direction", ctx);
        f.head.level = get_int(o, "head_level", ctx);

        if (leg.mirror) {
            f.left_support = support;
            f.right_support = mirror_limb(support);
            std::tie(f.left_leg, f.right_leg) = expand_mirror(leg);
        } else {
            if (!o.contains("right") || !o["right"].is_object())
                throw Error(ErrorKind::Parse,
                            ctx + ": leg_mirror is 0 but no explicit 'right' side given");
            const json& r = o["right"];
            f.left_support = support;
            f.left_leg = leg;
            f.right_support.direction = get_int(r, "support_direction", ctx);
            f.right_support.level = get_int(r, "support_level", ctx);
            f.right_leg.limb.direction = get_int(r, "leg_direction", ctx);
            f.right_leg.limb.level = get_int(r, "leg_level", ctx);
            f.right_leg.crossing = get_int(r, "leg_crossing", ctx);
            f.right_leg.hip_support = get_int(r, "hip_support", ctx) != 0;
            f.right_leg.knee_folding = get_int(r, "knee_folding", ctx);
            f.right_leg.touch = get_int(r, "touch", ctx);
            f.right_leg.mirror = false;
        }

        if (arm.mirror) {
            std::tie(f.left_arm, f.right_arm) = expand_mirror(arm);
        } else {
            if (!o.contains("right") || !o["right"].is_object() ||
                !o["right"].contains("arm_direction"))
                throw Error(ErrorKind::Parse,
                            ctx + ": arm_mirror is 0 but no explicit right arm given");
            const json& r = o["right"];
            f.left_arm = arm;
            f.right_arm.limb.direction = get_int(r, "arm_direction", ctx);
            f.right_arm.limb.level = get_int(r, "arm_level", ctx);
            f.right_arm.crossing = get_int(r, "arm_crossing", ctx);
            f.right_arm.elbow_folding = get_int(r, "elbow_folding", ctx);
            f.right_arm.body_inclusion = get_int(r, "body_inclusion", ctx) != 0;
            f.right_arm.mirror = false;
        }

        auto problems = check_frame(f);
        if (!problems.empty())
            throw Error(ErrorKind::Validation, ctx + ": " + problems.front());

        rec.frame = std::move(f);
        db.records_.push_back(std::move(rec));
    }
    return db;
}

const MappingDb::Record* MappingDb::find(std::string_view id) const {
    for (const auto& r : records_) {
        if (r.posture_id == id)
            return &r;
        for (const auto& a : r.aliases)
            if (a == id)
                return &r;
    }
    return nullptr;
}

bool MappingDb::contains(std::string_view posture_id) const {
    return find(posture_id) != nullptr;
}

LabanFrame MappingDb::encode(std::string_view posture_id) const {
    const Record* r = find(posture_id);
    if (!r)
        throw Error(ErrorKind::NotFound,
                    "posture '" + std::string(posture_id) + "' is not in the mapping database");
    return r->frame;
}

std::string MappingDb::provenance(std::string_view posture_id) const {
    const Record* r = find(posture_id);
    if (!r)
        throw Error(ErrorKind::NotFound,
                    "posture '" + std::string(posture_id) + "' is not in the mapping database");
    return r->provenance;
}

std::vector<std::string> MappingDb::posture_ids() const {
    std::vector<std::string> ids;
    ids.reserve(records_.size());
    for (const auto& r : records_)
        ids.push_back(r.posture_id);
    return ids;
}

LabanScore build_score(const std::vector<std::string>& posture_ids,
                       const MappingDb& db, std::string title) {
    LabanScore score;
    score.title = std::move(title);
    score.frames.reserve(posture_ids.size());
    for (size_t i = 0; i < posture_ids.size(); ++i) {
        try {
            LabanFrame f = db.encode(posture_ids[i]);
            f.measure = static_cast<int>(i);
            score.frames.push_back(std::move(f));
        } catch (const Error& e) {
            throw Error(e.kind(), "sequence position " + std::to_string(i + 1) + ": " +
                                      e.what());
        }
    }
    return score;
}

} // namespace adavu::laban
