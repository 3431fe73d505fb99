#include <doctest.h>

#include <random>

#include "error.hpp"
#include "helpers.hpp"
#include "labanxml.hpp"
#include "laban.hpp"
#include "xml.hpp"

using namespace adavu;
using namespace adavu::laban;
using adavu::labanxml::generate_xml;
using adavu::labanxml::parse_xml;

namespace {

LabanScore natta1p1_score() {
    MappingDb db = MappingDb::load(testutil::data_path("laban/natta_mapping.json"));
    return build_score({"Natta1P1"}, db, "natta_1");
}

// The published single-measure document for the reference posture.
const char* kReferenceXml = R"(<laban>
   <attribute>
      <title>natta_1</title>
   </attribute>
   <notation>
      <measure num="0">
         <left>
            <arm duration="1">
               <direction>2</direction>
               <level>2</level>
            </arm>
            <elbow duration="1">
               <Degree>1</Degree>
            </elbow>
            <foot>
               <touch>3</touch>
            </foot>
            <knee duration="1">
               <Degree>3</Degree>
            </knee>
         </left>
         <right>
            <arm duration="1">
               <direction>3</direction>
               <level>2</level>
            </arm>
            <elbow duration="1">
               <Degree>1</Degree>
            </elbow>
            <foot>
               <touch>3</touch>
            </foot>
            <knee duration="1">
               <Degree>3</Degree>
            </knee>
         </right>
         <support side="left">
            <direction>1</direction>
            <level>3</level>
         </support>
         <support side="right">
            <direction>1</direction>
            <level>3</level>
         </support>
         <head>
            <direction>1</direction>
            <level>2</level>
         </head>
      </measure>
   </notation>
</laban>
)";

// Tag-tree + text-value equality, indifferent to whitespace.
bool structurally_equal(const xml::Element& a, const xml::Element& b) {
    if (a.name != b.name || a.attributes != b.attributes || a.text != b.text)
        return false;
    if (a.children.size() != b.children.size())
        return false;
    for (size_t i = 0; i < a.children.size(); ++i)
        if (!structurally_equal(*a.children[i], *b.children[i]))
            return false;
    return true;
}

} // namespace

TEST_CASE("generated document for the reference posture matches the published one") {
    std::string text = generate_xml(natta1p1_score());
    auto ours = xml::parse(text);
    auto reference = xml::parse(kReferenceXml);
    CHECK(structurally_equal(*ours, *reference));
    // our canonical formatting reproduces it byte for byte as well
    CHECK(text == kReferenceXml);
}

TEST_CASE("generation details") {
    SUBCASE("empty score keeps the title and an empty notation") {
        LabanScore score;
        score.title = "empty";
        std::string text = generate_xml(score);
        auto root = xml::parse(text);
        CHECK(root->child("attribute")->child("title")->text == "empty");
        CHECK(root->child("notation")->children.empty());
    }
    SUBCASE("five frames number their measures 0..4") {
        MappingDb db = MappingDb::load(testutil::data_path("laban/natta_mapping.json"));
        LabanScore score = build_score(
            {"Natta1P1", "Natta1P2", "Natta1P1", "Natta1P3", "Natta1P1"}, db, "natta_1");
        auto root = xml::parse(generate_xml(score));
        auto measures = root->child("notation")->children_named("measure");
        REQUIRE(measures.size() == 5);
        for (size_t i = 0; i < 5; ++i)
            CHECK(measures[i]->attributes.at("num") == std::to_string(i));
    }
    SUBCASE("a gesturing leg gets a leg element; a placed leg does not") {
        MappingDb db = MappingDb::load(testutil::data_path("laban/natta_mapping.json"));
        LabanScore score = build_score({"Natta1P2"}, db, "t");
        auto root = xml::parse(generate_xml(score));
        const xml::Element* measure = root->child("notation")->child("measure");
        CHECK(measure->child("left")->child("leg") == nullptr);
        const xml::Element* leg = measure->child("right")->child("leg");
        REQUIRE(leg != nullptr);
        CHECK(leg->child("direction")->text == "3");
        CHECK(leg->child("level")->text == "3");
    }
    SUBCASE("generation is deterministic") {
        CHECK(generate_xml(natta1p1_score()) == generate_xml(natta1p1_score()));
    }
    SUBCASE("titles are escaped") {
        LabanScore score;
        score.title = "a<b&c";
        auto root = xml::parse(generate_xml(score));
        CHECK(root->child("attribute")->child("title")->text == "a<b&c");
    }
}

TEST_CASE("parsing") {
    SUBCASE("the published document round-trips to the reference codes") {
        LabanScore score = parse_xml(kReferenceXml);
        REQUIRE(score.frames.size() == 1);
        const LabanFrame& f = score.frames[0];
        CHECK(score.title == "natta_1");
        CHECK(f.left_arm.limb.direction == 2);
        CHECK(f.right_arm.limb.direction == 3);
        CHECK(f.left_arm.elbow_folding == 1);
        CHECK(f.left_leg.touch == 3);
        CHECK(f.left_leg.knee_folding == 3);
        CHECK(f.left_support.direction == 1);
        CHECK(f.left_support.level == 3);
        CHECK(f.head.direction == 1);
        CHECK(f.head.level == 2);
    }
    SUBCASE("unknown elements warn but do not fail") {
        std::string text = kReferenceXml;
        auto pos = text.find("<head>");
        text.insert(pos, "<sparkle>9</sparkle>\n         ");
        std::vector<std::string> warnings;
        LabanScore score = parse_xml(text, &warnings);
        CHECK(score.frames.size() == 1);
        REQUIRE(warnings.size() == 1);
        CHECK(warnings[0].find("sparkle") != std::string::npos);
    }
    SUBCASE("out-of-range level is a validation error") {
        std::string text = kReferenceXml;
        auto pos = text.find("<level>2</level>\n            </arm>");
        REQUIRE(pos != std::string::npos);
        text.replace(pos, 16, "<level>5</level>");
        try {
            parse_xml(text);
            FAIL("expected validation error");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::Validation);
        }
    }
    SUBCASE("missing support is a validation error naming the measure") {
        std::string text = kReferenceXml;
        // drop the right-side support element
        auto begin = text.find("<support side=\"right\">");
        auto end = text.find("</support>", begin) + 10;
        text.erase(begin, end - begin);
        try {
            parse_xml(text);
            FAIL("expected validation error");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::Validation);
            CHECK(std::string(e.what()).find("measure 0") != std::string::npos);
        }
    }
    SUBCASE("malformed xml reports the line") {
        try {
            parse_xml("<laban>\n<attribute>\n</laban>");
            FAIL("expected parse error");
        } catch (const Error& e) {
            CHECK(e.kind() == ErrorKind::Parse);
            CHECK(std::string(e.what()).find("line 3") != std::string::npos);
        }
    }
    SUBCASE("out-of-order measures are rejected") {
        std::string text = kReferenceXml;
        auto pos = text.find("num=\"0\"");
        text.replace(pos, 7, "num=\"1\"");
        CHECK_THROWS_AS(parse_xml(text), Error);
    }
}

TEST_CASE("mutated documents either parse or throw cleanly, never crash") {
    std::mt19937 rng(31337u);
    std::string base = generate_xml(natta1p1_score());
    std::uniform_int_distribution<size_t> pos(0, base.size() - 1);
    std::uniform_int_distribution<int> kind(0, 2);
    std::uniform_int_distribution<int> byte(32, 126);
    for (int iter = 0; iter < 400; ++iter) {
        std::string text = base;
        switch (kind(rng)) {
        case 0: // overwrite
            text[pos(rng)] = static_cast<char>(byte(rng));
            break;
        case 1: // delete
            text.erase(pos(rng), 1);
            break;
        default: // truncate
            text.resize(pos(rng));
            break;
        }
        try {
            (void)parse_xml(text);
        } catch (const Error&) {
            // malformed input must surface as a typed error
        }
    }
}

TEST_CASE("round trip: parse(generate(score)) == score") {
    std::mt19937 rng(20240817u);
    for (int iter = 0; iter < 120; ++iter) {
        LabanScore score = testutil::random_score(rng);
        LabanScore back = parse_xml(generate_xml(score));
        REQUIRE(back.frames.size() == score.frames.size());
        CHECK(back.title == score.title);
        for (size_t i = 0; i < score.frames.size(); ++i) {
            CHECK(back.frames[i] == score.frames[i]);
            // everything re-parsed satisfies the descriptor ranges
            CHECK(check_frame(back.frames[i]).empty());
        }
    }
}
