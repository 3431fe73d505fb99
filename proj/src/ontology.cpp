#include "ontology.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

#include "error.hpp"

namespace adavu::ontology {

namespace {

using nlohmann::json;

// Vocabulary of vocalized bols (the stick beat is a pseudo-bol on top).
const std::vector<std::string> kBols = {
    "a",   "da",  "dha", "dhat", "dhi", "dhin", "dhit", "ding", "e",   "gadu", "gin",
    "ha",  "hat", "hi",  "jag",  "jham", "ka",  "ki",   "ku",   "na",  "ri",   "ta",
    "tak", "tam", "tan", "tat",  "tei",  "tom", "tta",  "ya",   "yum"};

const std::set<std::string, std::less<>> kLegFormations = {
    "Aayata", "Agratala Sanchara", "Anchita", "Back Swastikam", "Bend On Knee",
    "Bisamasuchi", "Diagona Anchita", "Forward / Side Low", "Front Anchita",
    "Front Swastikam", "Kunchita", "Kuttana", "Motita Mandal", "Muzmandi",
    "Parsasuchi", "Parswa Aayata", "Prerita", "Samapadam", "Side Middle / Low",
    "Slip With Left Knee", "Slip With Right Knee", "Support"};

const std::set<std::string, std::less<>> kArmFormations = {
    "Above Head Natyarambhe", "Above Head Natyarambhe (Joined)", "Anchita",
    "Anchita Above Left Ear", "Anchita Above Right Ear", "Ardha Vithi",
    "Backward High", "Backward Low", "Backward Middle", "Cross Kunchita",
    "Diagonal High", "Diagonal Middle", "Elbow Down Anchita", "Forward High",
    "Forward High Above Head", "Forward Low", "Forward Middle", "Front Natyarambhe",
    "Katyang Behind Waist", "Kunchita", "Kunchita Above Shoulder",
    "Kunchita Natyarambhe", "Left Diagonal High", "Natyarambhe",
    "Right Diagonal High", "Right Diagonal Middle", "Side High",
    "Side High Natyarambhe", "Side Low", "Side Middle", "Utsanga"};

const std::set<std::string, std::less<>> kHeadFormations = {
    "Adhomukham", "Ardha Aalolitam", "Back Paravrittam", "Left Adhomukham",
    "Left Ardha Paravrittam", "Left Paravrittam", "Left Utshiptam",
    "Right Adhomukham", "Right Ardha Paravrittam", "Right Paravrittam",
    "Right Utshiptam", "Samam", "Udvahitam"};

const std::set<std::string, std::less<>> kHandFormations = {
    "Alapadma", "Avahitya", "Dola", "Kartarimukha", "Katakamukha", "Mrigashirsha",
    "Mushti", "Pataka", "Shikhara", "Suchi", "Tripataka"};

json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorKind::Io, "cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw Error(ErrorKind::Parse, path + ": " + e.what());
    }
}

void require_schema_version(const json& doc, const std::string& path) {
    if (!doc.contains("schema_version") || !doc["schema_version"].is_number_integer())
        throw Error(ErrorKind::Parse, path + ": missing integer schema_version");
    if (doc["schema_version"].get<int>() != 1)
        throw Error(ErrorKind::Parse,
                    path + ": unsupported schema_version " +
                        doc["schema_version"].dump());
}

std::string get_string(const json& o, const char* key, const std::string& ctx) {
    if (!o.contains(key) || !o[key].is_string())
        throw Error(ErrorKind::Parse, ctx + ": missing string field '" + key + "'");
    return o[key].get<std::string>();
}

std::vector<std::string> get_string_list(const json& o, const char* key,
                                         const std::string& ctx) {
    std::vector<std::string> out;
    if (!o.contains(key))
        return out;
    if (!o[key].is_array())
        throw Error(ErrorKind::Parse, ctx + ": field '" + key + "' must be an array");
    for (const auto& v : o[key]) {
        if (!v.is_string())
            throw Error(ErrorKind::Parse, ctx + ": field '" + key +
                                              "' must contain strings only");
        out.push_back(v.get<std::string>());
    }
    return out;
}

Taalam parse_taalam(const std::string& s, const std::string& ctx) {
    if (s == "Adi")
        return Taalam::Adi;
    if (s == "Roopakam")
        return Taalam::Roopakam;
    throw Error(ErrorKind::Parse, ctx + ": unknown taalam '" + s + "'");
}

LegSupport parse_leg_support(const std::string& s, const std::string& ctx) {
    if (s == "Samapadam")
        return LegSupport::Samapadam;
    if (s == "Araimandi")
        return LegSupport::Araimandi;
    if (s == "Muzhumandi")
        return LegSupport::Muzhumandi;
    throw Error(ErrorKind::Parse, ctx + ": unknown leg support '" + s + "'");
}

Symmetry parse_symmetry(const std::string& s, const std::string& ctx) {
    if (s == "Symmetric")
        return Symmetry::Symmetric;
    if (s == "Asymmetric")
        return Symmetry::Asymmetric;
    if (s == "MirrorOfAsymmetric")
        return Symmetry::MirrorOfAsymmetric;
    throw Error(ErrorKind::Parse, ctx + ": unknown symmetry '" + s + "'");
}

std::string group_to_string(const BolGroup& g) {
    std::ostringstream os;
    os << "[";
    for (size_t i = 0; i < g.size(); ++i)
        os << (i ? " " : "") << g[i];
    os << "]";
    return os.str();
}

// Named mirror pairs; every other position toggles a " [M]" suffix.
std::string mirror_position_name(const std::string& name) {
    if (name == "Aaleeda")
        return "Pratyaaleeda";
    if (name == "Pratyaaleeda")
        return "Aaleeda";
    const std::string suffix = " [M]";
    if (name.size() > suffix.size() &&
        name.compare(name.size() - suffix.size(), suffix.size(), suffix) == 0)
        return name.substr(0, name.size() - suffix.size());
    return name + suffix;
}

std::string flip_lateral(const std::string& formation) {
    if (formation.rfind("Left ", 0) == 0)
        return "Right " + formation.substr(5);
    if (formation.rfind("Right ", 0) == 0)
        return "Left " + formation.substr(6);
    return formation;
}

} // namespace

bool is_known_bol(std::string_view name) {
    if (name == kStickBeat)
        return true;
    return std::find(kBols.begin(), kBols.end(), name) != kBols.end();
}

const std::vector<std::string>& bol_vocabulary() { return kBols; }

bool is_known_leg_formation(std::string_view n) { return kLegFormations.count(n) > 0; }
bool is_known_arm_formation(std::string_view n) { return kArmFormations.count(n) > 0; }
bool is_known_head_formation(std::string_view n) { return kHeadFormations.count(n) > 0; }
bool is_known_hand_formation(std::string_view n) { return kHandFormations.count(n) > 0; }

const SollukattuDef* Registry::find_sollukattu(std::string_view name) const {
    for (const auto& s : sollukattus) {
        if (s.name == name)
            return &s;
        for (const auto& a : s.aliases)
            if (a == name)
                return &s;
    }
    return nullptr;
}

const AdavuDef* Registry::find_adavu(std::string_view full_name) const {
    for (const auto& a : adavus)
        if (a.full_name() == full_name)
            return &a;
    return nullptr;
}

const KeyPostureSpec* Registry::find_posture(std::string_view id) const {
    for (const auto& p : postures) {
        if (p.posture_id == id)
            return &p;
        for (const auto& a : p.aliases)
            if (a == id)
                return &p;
    }
    return nullptr;
}

std::string Registry::canonical_posture_id(std::string_view id) const {
    const KeyPostureSpec* p = find_posture(id);
    return p ? p->posture_id : std::string();
}

Registry load_ontology(const std::string& dir, ValidationReport& report) {
    Registry reg;

    {
        const std::string path = dir + "/sollukattus.json";
        json doc = load_json(path);
        require_schema_version(doc, path);
        if (!doc.contains("sollukattus") || !doc["sollukattus"].is_array())
            throw Error(ErrorKind::Parse, path + ": missing 'sollukattus' array");
        for (const auto& o : doc["sollukattus"]) {
            SollukattuDef s;
            s.name = get_string(o, "name", path);
            s.aliases = get_string_list(o, "aliases", path + " " + s.name);
            s.taalam = parse_taalam(get_string(o, "taalam", path + " " + s.name),
                                    path + " " + s.name);
            if (!o.contains("bar_length") || !o["bar_length"].is_number_integer())
                throw Error(ErrorKind::Parse, path + " " + s.name + ": missing bar_length");
            s.bar_length = o["bar_length"].get<int>();
            if (!o.contains("slots") || !o["slots"].is_array())
                throw Error(ErrorKind::Parse, path + " " + s.name + ": missing slots");
            for (const auto& slot : o["slots"]) {
                if (!slot.is_array())
                    throw Error(ErrorKind::Parse,
                                path + " " + s.name + ": each slot must be an array");
                BolGroup g;
                for (const auto& b : slot)
                    g.push_back(b.get<std::string>());
                s.slots.push_back(std::move(g));
            }
            reg.sollukattus.push_back(std::move(s));
        }
    }

    {
        const std::string path = dir + "/adavus.json";
        json doc = load_json(path);
        require_schema_version(doc, path);
        if (!doc.contains("adavus") || !doc["adavus"].is_array())
            throw Error(ErrorKind::Parse, path + ": missing 'adavus' array");
        for (const auto& o : doc["adavus"]) {
            AdavuDef a;
            a.name = get_string(o, "name", path);
            a.variant = get_string(o, "variant", path + " " + a.name);
            a.sollukattu = get_string(o, "sollukattu", path + " " + a.full_name());
            a.posture_sequence =
                get_string_list(o, "posture_sequence", path + " " + a.full_name());
            reg.adavus.push_back(std::move(a));
        }
    }

    {
        const std::string path = dir + "/postures.json";
        json doc = load_json(path);
        require_schema_version(doc, path);
        if (!doc.contains("postures") || !doc["postures"].is_array())
            throw Error(ErrorKind::Parse, path + ": missing 'postures' array");
        for (const auto& o : doc["postures"]) {
            KeyPostureSpec p;
            p.posture_id = get_string(o, "posture_id", path);
            const std::string ctx = path + " " + p.posture_id;
            p.aliases = get_string_list(o, "aliases", ctx);
            if (!o.contains("legs") || !o["legs"].is_object())
                throw Error(ErrorKind::Parse, ctx + ": missing legs object");
            p.legs.position = get_string(o["legs"], "position", ctx);
            p.legs.left = get_string(o["legs"], "left", ctx);
            p.legs.right = get_string(o["legs"], "right", ctx);
            if (!o.contains("arms") || !o["arms"].is_object())
                throw Error(ErrorKind::Parse, ctx + ": missing arms object");
            p.arms.left = get_string(o["arms"], "left", ctx);
            p.arms.right = get_string(o["arms"], "right", ctx);
            p.head = get_string(o, "head", ctx);
            if (o.contains("hands")) {
                SidePair h;
                h.left = get_string(o["hands"], "left", ctx);
                h.right = get_string(o["hands"], "right", ctx);
                p.hands = std::move(h);
            }
            p.leg_support =
                parse_leg_support(get_string(o, "leg_support", ctx), ctx);
            p.spinal_bend = o.value("spinal_bend", false);
            p.symmetry = parse_symmetry(get_string(o, "symmetry", ctx), ctx);
            if (o.contains("mirror_of"))
                p.mirror_of = get_string(o, "mirror_of", ctx);
            reg.postures.push_back(std::move(p));
        }
    }

    report = validate_registry(reg);
    return reg;
}

ValidationReport validate_registry(const Registry& reg) {
    ValidationReport report;
    auto err = [&](const std::string& m) { report.errors.push_back(m); };
    auto warn = [&](const std::string& m) { report.warnings.push_back(m); };

    std::set<std::string> sollukattu_names;
    for (const auto& s : reg.sollukattus) {
        const std::string ctx = "sollukattu '" + s.name + "'";
        if (!sollukattu_names.insert(s.name).second)
            err(ctx + " is defined twice");
        for (const auto& a : s.aliases)
            if (!sollukattu_names.insert(a).second)
                err(ctx + " alias '" + a + "' collides with another name");
        if (s.bar_length < 2)
            err(ctx + " has bar length " + std::to_string(s.bar_length));
        if (static_cast<int>(s.slots.size()) != s.bar_length)
            err(ctx + " has " + std::to_string(s.slots.size()) + " slots for " +
                std::to_string(s.bar_length) + " beats");
        for (size_t i = 0; i < s.slots.size(); ++i) {
            const auto& g = s.slots[i];
            if (g.empty() || g.size() > 4)
                err(ctx + " slot " + std::to_string(i + 1) + " must hold 1..4 bols");
            for (const auto& b : g) {
                if (!is_known_bol(b))
                    err(ctx + " slot " + std::to_string(i + 1) + " uses unknown bol '" +
                        b + "'");
                if (b == kStickBeat && g.size() > 1)
                    err(ctx + " slot " + std::to_string(i + 1) +
                        " mixes the stick beat with bols");
            }
        }
    }

    std::set<std::string> adavu_names;
    for (const auto& a : reg.adavus) {
        const std::string ctx = "adavu '" + a.full_name() + "'";
        if (!adavu_names.insert(a.full_name()).second)
            err(ctx + " is defined twice");
        const SollukattuDef* s = reg.find_sollukattu(a.sollukattu);
        if (!s) {
            err(ctx + " references unknown sollukattu '" + a.sollukattu + "'");
        } else if (!a.posture_sequence.empty() &&
                   static_cast<int>(a.posture_sequence.size()) != s->bar_length) {
            err(ctx + " posture sequence has " +
                std::to_string(a.posture_sequence.size()) + " entries for a " +
                std::to_string(s->bar_length) + "-beat bar");
        }
        for (const auto& pid : a.posture_sequence)
            if (!reg.find_posture(pid))
                err(ctx + " posture sequence references unknown posture '" + pid + "'");
    }

    std::set<std::string> posture_names;
    for (const auto& p : reg.postures) {
        const std::string ctx = "posture '" + p.posture_id + "'";
        if (!posture_names.insert(p.posture_id).second)
            err(ctx + " is defined twice");
        for (const auto& a : p.aliases)
            if (!posture_names.insert(a).second)
                err(ctx + " alias '" + a + "' collides with another name");
        if (!is_known_leg_formation(p.legs.left))
            err(ctx + " uses unknown left leg formation '" + p.legs.left + "'");
        if (!is_known_leg_formation(p.legs.right))
            err(ctx + " uses unknown right leg formation '" + p.legs.right + "'");
        if (!is_known_arm_formation(p.arms.left))
            err(ctx + " uses unknown left arm formation '" + p.arms.left + "'");
        if (!is_known_arm_formation(p.arms.right))
            err(ctx + " uses unknown right arm formation '" + p.arms.right + "'");
        if (!is_known_head_formation(p.head))
            err(ctx + " uses unknown head formation '" + p.head + "'");
        if (p.hands) {
            if (!is_known_hand_formation(p.hands->left))
                err(ctx + " uses unknown left hand formation '" + p.hands->left + "'");
            if (!is_known_hand_formation(p.hands->right))
                err(ctx + " uses unknown right hand formation '" + p.hands->right + "'");
        }
        switch (p.symmetry) {
        case Symmetry::Symmetric:
            if (p.legs.left != p.legs.right || p.arms.left != p.arms.right ||
                (p.hands && p.hands->left != p.hands->right))
                err(ctx + " is marked symmetric but left/right formations differ");
            break;
        case Symmetry::Asymmetric:
            if (p.legs.left == p.legs.right && p.arms.left == p.arms.right)
                warn(ctx + " is marked asymmetric but formations look symmetric");
            break;
        case Symmetry::MirrorOfAsymmetric: {
            if (!p.mirror_of) {
                err(ctx + " is a mirror but names no base posture");
                break;
            }
            const KeyPostureSpec* base = reg.find_posture(*p.mirror_of);
            if (!base) {
                err(ctx + " mirrors unknown posture '" + *p.mirror_of + "'");
                break;
            }
            KeyPostureSpec m = mirror_posture(*base);
            if (m.legs.left != p.legs.left || m.legs.right != p.legs.right ||
                m.arms.left != p.arms.left || m.arms.right != p.arms.right ||
                m.head != p.head)
                err(ctx + " does not match the mirror of '" + *p.mirror_of + "'");
            break;
        }
        }
    }
    return report;
}

std::vector<std::pair<int, BolGroup>> expected_bol_sequence(const SollukattuDef& s,
                                                            int bars) {
    if (bars < 1)
        throw Error(ErrorKind::Domain, "bar count must be at least 1");
    std::vector<std::pair<int, BolGroup>> out;
    out.reserve(static_cast<size_t>(bars) * s.slots.size());
    int beat = 1;
    for (int b = 0; b < bars; ++b) {
        for (const auto& slot : s.slots) {
            BolGroup g;
            for (const auto& tok : slot)
                if (tok != kStickBeat)
                    g.push_back(tok);
            out.emplace_back(beat++, std::move(g));
        }
    }
    return out;
}

KeyPostureSpec mirror_posture(const KeyPostureSpec& p,
                              std::vector<std::string>* warnings) {
    if (p.symmetry == Symmetry::Symmetric) {
        if (warnings)
            warnings->push_back("posture '" + p.posture_id +
                                "' is symmetric; its mirror is itself");
        return p;
    }
    KeyPostureSpec m = p;
    std::swap(m.legs.left, m.legs.right);
    m.legs.position = mirror_position_name(p.legs.position);
    std::swap(m.arms.left, m.arms.right);
    if (m.hands)
        std::swap(m.hands->left, m.hands->right);
    m.head = flip_lateral(p.head);
    m.symmetry = p.symmetry == Symmetry::Asymmetric ? Symmetry::MirrorOfAsymmetric
                                                    : Symmetry::Asymmetric;
    // mirror_of names the pair relationship in the registry; it is kept as-is
    // so mirroring twice restores the exact input.
    return m;
}

PerformanceCheck validate_performance(const std::vector<events::AnnotationRecord>& annotation,
                                      const AdavuDef& adavu,
                                      const Registry& registry) {
    PerformanceCheck check;
    if (annotation.empty()) {
        check.warnings.push_back("no beats checked");
        return check;
    }
    const SollukattuDef* sollukattu = registry.find_sollukattu(adavu.sollukattu);

    for (const auto& rec : annotation) {
        std::string actual = registry.canonical_posture_id(rec.posture_name);
        if (actual.empty())
            throw Error(ErrorKind::Validation,
                        "annotation record '" + rec.posture_name + "' (frames " +
                            std::to_string(rec.start_frame) + "-" +
                            std::to_string(rec.end_frame) +
                            ") names an unknown posture");
        if (!rec.beat_number) {
            check.warnings.push_back("record '" + rec.posture_name +
                                     "' has no beat number; skipped");
            continue;
        }
        int beat = *rec.beat_number;
        ++check.beats_checked;

        if (!adavu.posture_sequence.empty()) {
            size_t idx = static_cast<size_t>(beat) % adavu.posture_sequence.size();
            std::string expected =
                registry.canonical_posture_id(adavu.posture_sequence[idx]);
            if (expected != actual) {
                BeatMismatch m;
                m.beat = beat;
                m.expected = adavu.posture_sequence[idx];
                m.actual = rec.posture_name;
                check.mismatches.push_back(std::move(m));
            }
        }

        if (sollukattu && sollukattu->bar_length > 0) {
            BolGroup expected;
            if (beat > 0) {
                const BolGroup& slot =
                    sollukattu->slots[static_cast<size_t>(beat - 1) %
                                      sollukattu->slots.size()];
                for (const auto& tok : slot)
                    if (tok != kStickBeat)
                        expected.push_back(tok);
            }
            if (expected != rec.bols) {
                check.warnings.push_back(
                    "beat " + std::to_string(beat) + ": annotated bols " +
                    group_to_string(rec.bols) + " differ from the sollukattu's " +
                    group_to_string(expected));
            }
        }
    }
    return check;
}

const char* taalam_name(Taalam t) { return t == Taalam::Adi ? "Adi" : "Roopakam"; }

const char* leg_support_name(LegSupport s) {
    switch (s) {
    case LegSupport::Samapadam: return "Samapadam";
    case LegSupport::Araimandi: return "Araimandi";
    case LegSupport::Muzhumandi: return "Muzhumandi";
    }
    return "unknown";
}

const char* symmetry_name(Symmetry s) {
    switch (s) {
    case Symmetry::Symmetric: return "Symmetric";
    case Symmetry::Asymmetric: return "Asymmetric";
    case Symmetry::MirrorOfAsymmetric: return "MirrorOfAsymmetric";
    }
    return "unknown";
}

} // namespace adavu::ontology
