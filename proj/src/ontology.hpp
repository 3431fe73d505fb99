#ifndef ADAVU_ONTOLOGY_HPP
#define ADAVU_ONTOLOGY_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "events.hpp"

namespace adavu::ontology {

// ---------------------------------------------------------------------------
// Domain registry: Sollukattus (rhythmic phrases), Adavus (step sequences)
// and key postures, loaded from JSON assets and validated as a whole.
// ---------------------------------------------------------------------------

// Pseudo-bol for a beat marked only by the stick, never vocalized.
inline constexpr const char* kStickBeat = "StickBeat";

bool is_known_bol(std::string_view name);
const std::vector<std::string>& bol_vocabulary(); // real bols, StickBeat excluded

bool is_known_leg_formation(std::string_view name);
bool is_known_arm_formation(std::string_view name);
bool is_known_head_formation(std::string_view name);
bool is_known_hand_formation(std::string_view name);

enum class Taalam { Adi, Roopakam };

// One beat slot holds 1..4 bols uttered together, or the single StickBeat.
using BolGroup = std::vector<std::string>;

struct SollukattuDef {
    std::string name;
    std::vector<std::string> aliases;
    Taalam taalam = Taalam::Adi;
    int bar_length = 0;
    std::vector<BolGroup> slots; // one per beat of a bar
};

struct AdavuDef {
    std::string name;
    std::string variant;
    std::string sollukattu;
    // Per-beat posture ids for one bar, index 0 = stance at beat 0 (the bar's
    // beats then cycle: expected posture at beat n is sequence[n % length]).
    std::vector<std::string> posture_sequence;

    std::string full_name() const { return name + " " + variant; }
};

enum class LegSupport { Samapadam, Araimandi, Muzhumandi };
enum class Symmetry { Symmetric, Asymmetric, MirrorOfAsymmetric };

struct LegsPosition {
    std::string position; // combined name, e.g. "Prenkhanam" or "Prenkhanam [M]"
    std::string left;     // per-leg formation
    std::string right;
};

struct SidePair {
    std::string left;
    std::string right;
};

struct KeyPostureSpec {
    std::string posture_id; // class id, e.g. "C01"
    std::vector<std::string> aliases; // e.g. "Natta1P1"
    LegsPosition legs;
    SidePair arms;
    std::string head;
    std::optional<SidePair> hands;
    LegSupport leg_support = LegSupport::Araimandi;
    bool spinal_bend = false;
    Symmetry symmetry = Symmetry::Symmetric;
    std::optional<std::string> mirror_of; // base posture for MirrorOfAsymmetric
};

struct ValidationReport {
    std::vector<std::string> errors;
    std::vector<std::string> warnings;
};

class Registry {
public:
    std::vector<SollukattuDef> sollukattus;
    std::vector<AdavuDef> adavus;
    std::vector<KeyPostureSpec> postures;

    const SollukattuDef* find_sollukattu(std::string_view name_or_alias) const;
    const AdavuDef* find_adavu(std::string_view full_name) const;
    const KeyPostureSpec* find_posture(std::string_view id_or_alias) const;

    // Canonical posture id for an id or alias; empty if unknown.
    std::string canonical_posture_id(std::string_view id_or_alias) const;
};

// Loads sollukattus.json, adavus.json and postures.json from a directory.
// Malformed JSON throws Error{Parse}; semantic problems (unknown bols,
// dangling references, arity mismatches, symmetry violations) land in the
// report so callers can decide.
Registry load_ontology(const std::string& dir, ValidationReport& report);

// Cross-checks an already-populated registry; used by load_ontology and
// directly by tests building registries in memory.
ValidationReport validate_registry(const Registry& reg);

// Beat-by-beat bol expectation over `bars` repetitions of the phrase. Beat
// ordinals are global (1..bars*bar_length); StickBeat slots yield empty
// groups.
std::vector<std::pair<int, BolGroup>> expected_bol_sequence(const SollukattuDef& s,
                                                            int bars);

// Swaps left/right formations (legs, arms, hands), flips lateral head
// formations and toggles Asymmetric <-> MirrorOfAsymmetric. Mirroring a
// symmetric posture is the identity and records a warning.
KeyPostureSpec mirror_posture(const KeyPostureSpec& p,
                              std::vector<std::string>* warnings = nullptr);

struct BeatMismatch {
    int beat = 0;
    std::string expected;
    std::string actual;
};

struct PerformanceCheck {
    int beats_checked = 0;
    std::vector<BeatMismatch> mismatches;     // posture disagreements
    std::vector<std::string> warnings;        // bol disagreements and the like
};

// Compares an annotated performance against the Adavu's posture sequence and
// its Sollukattu's bol sequence. Posture disagreements are mismatches; bol
// disagreements are warnings (the two annotation sources in the source
// material disagree on bols themselves). Unknown posture names are a
// validation error.
PerformanceCheck validate_performance(const std::vector<events::AnnotationRecord>& annotation,
                                      const AdavuDef& adavu,
                                      const Registry& registry);

const char* taalam_name(Taalam t);
const char* leg_support_name(LegSupport s);
const char* symmetry_name(Symmetry s);

} // namespace adavu::ontology

#endif
