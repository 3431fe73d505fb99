#include "labanxml.hpp"

#include <charconv>
#include <sstream>

#include "error.hpp"
#include "xml.hpp"

namespace adavu::labanxml {

using laban::ArmLaban;
using laban::LabanFrame;
using laban::LabanLimb;
using laban::LabanScore;
using laban::LegLaban;

namespace {

class Writer {
public:
    std::string take() { return std::move(out_); }

    void open(const std::string& tag) {
        line("<" + tag + ">");
        ++depth_;
    }

    void close(const std::string& name) {
        --depth_;
        line("</" + name + ">");
    }

    void leaf(const std::string& name, int value) {
        line("<" + name + ">" + std::to_string(value) + "</" + name + ">");
    }

    void leaf_text(const std::string& name, const std::string& value) {
        line("<" + name + ">" + xml::escape_text(value) + "</" + name + ">");
    }

private:
    void line(const std::string& s) {
        out_.append(static_cast<size_t>(depth_) * 3, ' ');
        out_ += s;
        out_ += '\n';
    }

    std::string out_;
    int depth_ = 0;
};

void write_side(Writer& w, const std::string& side, const ArmLaban& arm,
                const LegLaban& leg) {
    w.open(side);
    w.open("arm duration=\"1\"");
    w.leaf("direction", arm.limb.direction);
    w.leaf("level", arm.limb.level);
    w.close("arm");
    w.open("elbow duration=\"1\"");
    w.leaf("Degree", arm.elbow_folding);
    w.close("elbow");
    w.open("foot");
    w.leaf("touch", leg.touch);
    w.close("foot");
    w.open("knee duration=\"1\"");
    w.leaf("Degree", leg.knee_folding);
    w.close("knee");
    if (leg.limb.direction != 0) {
        w.open("leg duration=\"1\"");
        w.leaf("direction", leg.limb.direction);
        w.leaf("level", leg.limb.level);
        w.close("leg");
    }
    w.close(side);
}

void write_support(Writer& w, const std::string& side, const LabanLimb& support) {
    w.open("support side=\"" + side + "\"");
    w.leaf("direction", support.direction);
    w.leaf("level", support.level);
    w.close("support");
}

// ---- parsing ---------------------------------------------------------------

int parse_code(const xml::Element& el, const std::string& ctx) {
    const std::string& text = el.text;
    int value = 0;
    auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || p != text.data() + text.size())
        throw Error(ErrorKind::Validation,
                    ctx + ": <" + el.name + "> holds '" + text + "', not an integer");
    return value;
}

int required_code(const xml::Element& parent, const char* name, const std::string& ctx) {
    const xml::Element* el = parent.child(name);
    if (!el)
        throw Error(ErrorKind::Validation, ctx + ": missing <" + std::string(name) + ">");
    return parse_code(*el, ctx);
}

void note_unknown(const xml::Element& parent,
                  const std::vector<std::string_view>& known,
                  const std::string& ctx, std::vector<std::string>* warnings) {
    if (!warnings)
        return;
    for (const auto& c : parent.children) {
        bool ok = false;
        for (auto k : known)
            if (c->name == k)
                ok = true;
        if (!ok)
            warnings->push_back(ctx + ": ignoring unknown element <" + c->name + ">");
    }
}

void parse_side(const xml::Element& side, ArmLaban& arm, LegLaban& leg,
                const std::string& ctx, std::vector<std::string>* warnings) {
    note_unknown(side, {"arm", "elbow", "foot", "knee", "leg"}, ctx, warnings);
    if (const xml::Element* el = side.child("arm")) {
        arm.limb.direction = required_code(*el, "direction", ctx + " <arm>");
        arm.limb.level = required_code(*el, "level", ctx + " <arm>");
    }
    if (const xml::Element* el = side.child("elbow"))
        arm.elbow_folding = required_code(*el, "Degree", ctx + " <elbow>");
    if (const xml::Element* el = side.child("foot"))
        leg.touch = required_code(*el, "touch", ctx + " <foot>");
    if (const xml::Element* el = side.child("knee"))
        leg.knee_folding = required_code(*el, "Degree", ctx + " <knee>");
    if (const xml::Element* el = side.child("leg")) {
        leg.limb.direction = required_code(*el, "direction", ctx + " <leg>");
        leg.limb.level = required_code(*el, "level", ctx + " <leg>");
    }
}

} // namespace

std::string generate_xml(const LabanScore& score) {
    Writer w;
    w.open("laban");
    w.open("attribute");
    w.leaf_text("title", score.title);
    w.close("attribute");
    w.open("notation");
    for (const auto& frame : score.frames) {
        w.open("measure num=\"" + std::to_string(frame.measure) + "\"");
        write_side(w, "left", frame.left_arm, frame.left_leg);
        write_side(w, "right", frame.right_arm, frame.right_leg);
        write_support(w, "left", frame.left_support);
        write_support(w, "right", frame.right_support);
        w.open("head");
        w.leaf("direction", frame.head.direction);
        w.leaf("level", frame.head.level);
        w.close("head");
        w.close("measure");
    }
    w.close("notation");
    w.close("laban");
    return w.take();
}

LabanScore parse_xml(std::string_view text, std::vector<std::string>* warnings) {
    auto root = xml::parse(text);
    if (root->name != "laban")
        throw Error(ErrorKind::Validation,
                    "root element is <" + root->name + ">, expected <laban>");
    note_unknown(*root, {"attribute", "notation"}, "<laban>", warnings);

    LabanScore score;
    if (const xml::Element* attr = root->child("attribute")) {
        note_unknown(*attr, {"title"}, "<attribute>", warnings);
        if (const xml::Element* title = attr->child("title"))
            score.title = title->text;
    }

    const xml::Element* notation = root->child("notation");
    if (!notation)
        throw Error(ErrorKind::Validation, "document has no <notation> element");
    note_unknown(*notation, {"measure"}, "<notation>", warnings);

    int expected_measure = 0;
    for (const xml::Element* measure : notation->children_named("measure")) {
        LabanFrame frame;
        auto num_it = measure->attributes.find("num");
        if (num_it == measure->attributes.end())
            throw Error(ErrorKind::Validation,
                        "measure " + std::to_string(expected_measure) +
                            ": missing num attribute");
        try {
            frame.measure = std::stoi(num_it->second);
        } catch (const std::exception&) {
            throw Error(ErrorKind::Validation, "measure num '" + num_it->second +
                                                   "' is not an integer");
        }
        if (frame.measure != expected_measure)
            throw Error(ErrorKind::Validation,
                        "measure " + std::to_string(frame.measure) +
                            " out of order; expected " + std::to_string(expected_measure));
        const std::string ctx = "measure " + std::to_string(frame.measure);
        note_unknown(*measure, {"left", "right", "support", "head"}, ctx, warnings);

        if (const xml::Element* left = measure->child("left"))
            parse_side(*left, frame.left_arm, frame.left_leg, ctx + " <left>", warnings);
        if (const xml::Element* right = measure->child("right"))
            parse_side(*right, frame.right_arm, frame.right_leg, ctx + " <right>", warnings);

        auto supports = measure->children_named("support");
        bool saw_left = false, saw_right = false;
        for (const xml::Element* s : supports) {
            auto side_it = s->attributes.find("side");
            if (side_it == s->attributes.end())
                throw Error(ErrorKind::Validation,
                            ctx + ": <support> without side attribute");
            LabanLimb limb;
            limb.direction = required_code(*s, "direction", ctx + " <support>");
            limb.level = required_code(*s, "level", ctx + " <support>");
            if (side_it->second == "left") {
                frame.left_support = limb;
                saw_left = true;
            } else if (side_it->second == "right") {
                frame.right_support = limb;
                saw_right = true;
            } else {
                throw Error(ErrorKind::Validation,
                            ctx + ": <support> side '" + side_it->second + "'");
            }
        }
        if (!saw_left || !saw_right)
            throw Error(ErrorKind::Validation, ctx + ": missing <support> element");

        const xml::Element* head = measure->child("head");
        if (!head)
            throw Error(ErrorKind::Validation, ctx + ": missing <head> element");
        frame.head.direction = required_code(*head, "direction", ctx + " <head>");
        frame.head.level = required_code(*head, "level", ctx + " <head>");

        auto problems = laban::check_frame(frame);
        if (!problems.empty())
            throw Error(ErrorKind::Validation, ctx + ": " + problems.front());

        score.frames.push_back(std::move(frame));
        ++expected_measure;
    }
    return score;
}

} // namespace adavu::labanxml
