#ifndef ADAVU_LABAN_HPP
#define ADAVU_LABAN_HPP

#include <string>
#include <string_view>
#include <vector>

namespace adavu::laban {

// ---------------------------------------------------------------------------
// Numeric Laban descriptors.
//
// Directions: 0 = held in place under the body (no displacement), 1 = Place,
// 2/3 = Left/Right Side, 4/5 = Left/Right Forward, 6/7 = Left/Right Backward,
// 8/9 = Left/Right Forward Diagonal, 10/11 = Left/Right Backward Diagonal.
// Levels: 0 = unset, 1 = High, 2 = Mid, 3 = Low.
// Folding: 0 = no fold .. 6 = full fold. Touch: 0 = no touch, 1 = full heel,
// 2 = half heel, 3 = whole foot, 4/5/6 = eighth/quarter/half ball,
// 7 = full ball, 8 = pad of toe, 9 = full toe, 10 = nail of toe.
// ---------------------------------------------------------------------------

inline constexpr int kMaxDirection = 11;
inline constexpr int kMaxLevel = 3;
inline constexpr int kMaxFolding = 6;
inline constexpr int kMaxTouch = 10;

struct LabanLimb {
    int direction = 0;
    int level = 0;

    bool operator==(const LabanLimb&) const = default;
};

struct LegLaban {
    LabanLimb limb;
    int crossing = 0;
    bool mirror = false;
    bool hip_support = false;
    int knee_folding = 0;
    int touch = 0;

    bool operator==(const LegLaban&) const = default;
};

struct ArmLaban {
    LabanLimb limb;
    int crossing = 0;
    int elbow_folding = 0;
    bool body_inclusion = false;
    bool mirror = false;

    bool operator==(const ArmLaban&) const = default;
};

struct LabanFrame {
    int measure = 0;
    LabanLimb left_support, right_support;
    LegLaban left_leg, right_leg;
    ArmLaban left_arm, right_arm;
    LabanLimb head;
    std::string posture_id;

    bool operator==(const LabanFrame&) const = default;

    // Equality of the descriptor codes only, ignoring measure and source id.
    bool same_codes(const LabanFrame& o) const;
};

// Lateral swap: 2<->3, 4<->5, 6<->7, 8<->9, 10<->11; 0 and 1 map to
// themselves. An involution over the full code range.
int mirror_direction(int code);

LabanLimb mirror_limb(const LabanLimb& limb);

// One-sided record with its mirror flag set expands to both sides: the right
// side copies the left with the direction sent through the lateral swap;
// levels, folding and touch are copied unchanged. Without the mirror flag the
// input is returned for both sides verbatim.
std::pair<LegLaban, LegLaban> expand_mirror(const LegLaban& half);
std::pair<ArmLaban, ArmLaban> expand_mirror(const ArmLaban& half);

// Frame reflected about the body's midline: sides swapped and every
// direction (supports, legs, arms, head) laterally swapped.
LabanFrame mirror_frame(const LabanFrame& frame);

// Range checks for one frame; empty result means valid.
std::vector<std::string> check_frame(const LabanFrame& frame);

// ---------------------------------------------------------------------------
// Posture -> Laban mapping database (versioned JSON asset).
// ---------------------------------------------------------------------------

class MappingDb {
public:
    static MappingDb load(const std::string& path);

    bool contains(std::string_view posture_id) const;
    // Full two-sided frame (measure 0); throws Error{NotFound} for unknown ids.
    LabanFrame encode(std::string_view posture_id) const;
    // "paper" or "derived"
    std::string provenance(std::string_view posture_id) const;

    std::vector<std::string> posture_ids() const; // canonical ids, file order
    int size() const { return static_cast<int>(records_.size()); }

private:
    struct Record {
        std::string posture_id;
        std::vector<std::string> aliases;
        std::string provenance;
        LabanFrame frame; // already expanded to both sides
    };

    const Record* find(std::string_view id) const;

    std::vector<Record> records_;
};

struct LabanScore {
    std::string title;
    std::vector<LabanFrame> frames; // measures strictly increasing from 0
};

// Encodes each posture in order; frames get measures 0, 1, 2, ... Lookup
// failures are rethrown with the sequence position.
LabanScore build_score(const std::vector<std::string>& posture_ids,
                       const MappingDb& db, std::string title);

} // namespace adavu::laban

#endif
