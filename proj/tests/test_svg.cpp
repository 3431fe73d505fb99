#include <doctest.h>

#include <cmath>
#include <functional>
#include <map>
#include <random>

#include "helpers.hpp"
#include "laban.hpp"
#include "svg_staff.hpp"
#include "xml.hpp"

using namespace adavu;
using namespace adavu::laban;
using adavu::svg::StaffLayout;
using adavu::svg::render_svg;

namespace {

struct Glyph {
    int measure;
    std::string column;
    int code;
    int level;
    double x;
};

std::vector<Glyph> collect_glyphs(const xml::Element& el) {
    std::vector<Glyph> out;
    if (el.name == "g" && el.attributes.count("data-code")) {
        Glyph g;
        g.measure = std::stoi(el.attributes.at("data-measure"));
        g.column = el.attributes.at("data-column");
        g.code = std::stoi(el.attributes.at("data-code"));
        g.level = std::stoi(el.attributes.at("data-level"));
        g.x = std::stod(el.attributes.at("data-x"));
        out.push_back(std::move(g));
    }
    for (const auto& c : el.children) {
        auto sub = collect_glyphs(*c);
        out.insert(out.end(), sub.begin(), sub.end());
    }
    return out;
}

int nonzero_limbs(const LabanFrame& f) {
    int n = 0;
    for (const LabanLimb* limb :
         {&f.left_support, &f.right_support, &f.left_leg.limb, &f.right_leg.limb,
          &f.left_arm.limb, &f.right_arm.limb, &f.head})
        if (limb->direction != 0)
            ++n;
    return n;
}

LabanScore natta_score(int frames) {
    MappingDb db = MappingDb::load(testutil::data_path("laban/natta_mapping.json"));
    std::vector<std::string> seq = {"Natta1P1", "Natta1P2", "Natta1P1", "Natta1P3",
                                    "Natta1P1"};
    seq.resize(static_cast<size_t>(frames), "Natta1P1");
    return build_score(seq, db, "natta_1");
}

} // namespace

TEST_CASE("five-frame score renders five cells bottom-to-top") {
    LabanScore score = natta_score(5);
    std::string text = render_svg(score);
    auto root = xml::parse(text); // well-formed
    CHECK(root->name == "svg");

    auto glyphs = collect_glyphs(*root);

    SUBCASE("glyph count equals the non-zero-direction limb count") {
        int expected = 0;
        for (const auto& f : score.frames)
            expected += nonzero_limbs(f);
        CHECK(static_cast<int>(glyphs.size()) == expected);
    }
    SUBCASE("all five measures appear, supports in both columns") {
        std::map<int, int> supports_per_measure;
        for (const auto& g : glyphs)
            if (g.column == "left-support" || g.column == "right-support")
                ++supports_per_measure[g.measure];
        // Natta1P2/P3 stand on one leg only, Natta1P1 on both
        CHECK(supports_per_measure.size() == 5);
        CHECK(supports_per_measure[0] == 2);
        CHECK(supports_per_measure[1] == 1);
        CHECK(supports_per_measure[2] == 2);
    }
    SUBCASE("every measure contributes glyphs") {
        std::map<int, int> per_measure;
        for (const auto& g : glyphs)
            ++per_measure[g.measure];
        for (int m = 0; m < 5; ++m)
            CHECK(per_measure[m] > 0);
    }
}

TEST_CASE("measure cell y decreases as measure increases") {
    // direct check of the layout contract on the rendered geometry: the
    // topmost polygon of measure m+1 lies above that of measure m
    LabanScore score = natta_score(3);
    StaffLayout layout;
    std::string text = render_svg(score, layout);
    auto root = xml::parse(text);

    // min polygon y per measure
    std::map<int, double> min_y;
    std::function<void(const xml::Element&, int)> walk = [&](const xml::Element& el,
                                                             int measure) {
        int m = measure;
        auto it = el.attributes.find("data-measure");
        if (it != el.attributes.end())
            m = std::stoi(it->second);
        if (el.name == "polygon") {
            const std::string& pts = el.attributes.at("points");
            // y values are the numbers after each comma
            size_t i = 0;
            while ((i = pts.find(',', i)) != std::string::npos) {
                double y = std::stod(pts.substr(i + 1));
                if (!min_y.count(m) || y < min_y[m])
                    min_y[m] = y;
                ++i;
            }
        }
        for (const auto& c : el.children)
            walk(*c, m);
    };
    walk(*root, -1);
    REQUIRE(min_y.count(0));
    REQUIRE(min_y.count(1));
    REQUIRE(min_y.count(2));
    CHECK(min_y[1] < min_y[0]);
    CHECK(min_y[2] < min_y[1]);
}

TEST_CASE("symmetric frames render x-symmetric sided glyphs") {
    LabanScore score = natta_score(1); // Natta1P1 is symmetric
    std::string text = render_svg(score);
    auto glyphs = collect_glyphs(*xml::parse(text));

    StaffLayout layout;
    double cx = layout.margin_x + 5 * layout.column_width;
    for (const auto& g : glyphs) {
        if (g.column == "head")
            continue;
        bool left = g.column.rfind("left-", 0) == 0;
        std::string twin = left ? "right-" + g.column.substr(5)
                                : "left-" + g.column.substr(6);
        bool found = false;
        for (const auto& h : glyphs) {
            if (h.measure != g.measure || h.column != twin)
                continue;
            CHECK(std::abs((h.x - cx) + (g.x - cx)) < 1e-6);
            CHECK(h.code == mirror_direction(g.code));
            CHECK(h.level == g.level);
            found = true;
        }
        CHECK(found);
    }
}

TEST_CASE("arm glyphs sit at equal offsets on opposite sides of the centerline") {
    MappingDb db = MappingDb::load(testutil::data_path("laban/natta_mapping.json"));
    LabanScore score = build_score({"Natta1P1"}, db, "t");
    auto glyphs = collect_glyphs(*xml::parse(render_svg(score)));

    StaffLayout layout;
    double cx = layout.margin_x + 5 * layout.column_width;
    const Glyph *left_arm = nullptr, *right_arm = nullptr;
    for (const auto& g : glyphs) {
        if (g.column == "left-arm")
            left_arm = &g;
        if (g.column == "right-arm")
            right_arm = &g;
    }
    REQUIRE(left_arm != nullptr);
    REQUIRE(right_arm != nullptr);
    CHECK(left_arm->code == 2);
    CHECK(right_arm->code == 3);
    CHECK(left_arm->x < cx);
    CHECK(right_arm->x > cx);
    CHECK(std::abs((right_arm->x - cx) - (cx - left_arm->x)) < 1e-6);
}

TEST_CASE("empty score renders staff lines only") {
    LabanScore score;
    score.title = "empty";
    std::string text = render_svg(score);
    auto root = xml::parse(text);
    CHECK(collect_glyphs(*root).empty());
    int lines = 0;
    for (const auto& c : root->children)
        if (c->name == "line")
            ++lines;
    CHECK(lines >= 3); // the three staff lines at least
}

TEST_CASE("fold and touch annotations carry data marks, not glyph codes") {
    LabanScore score = natta_score(1);
    std::string text = render_svg(score);
    auto root = xml::parse(text);
    int folds = 0, touches = 0;
    for (const auto& c : root->children) {
        if (c->name != "g")
            continue;
        auto it = c->attributes.find("data-mark");
        if (it == c->attributes.end())
            continue;
        CHECK(c->attributes.count("data-code") == 0);
        if (it->second == "fold")
            ++folds;
        if (it->second == "touch")
            ++touches;
    }
    // Natta1P1: both knees fold (3), both elbows fold (1), both feet touch (3)
    CHECK(folds == 4);
    CHECK(touches == 2);
}

TEST_CASE("unknown direction codes fall back and warn") {
    LabanScore score;
    score.title = "odd";
    LabanFrame f;
    f.measure = 0;
    f.left_support = {1, 3};
    f.right_support = {1, 3};
    f.head = {12, 2}; // outside the table
    score.frames.push_back(f);
    std::vector<std::string> warnings;
    std::string text = render_svg(score, {}, &warnings);
    REQUIRE(warnings.size() == 1);
    CHECK(text.find("data-warning=\"unknown-code\"") != std::string::npos);
    xml::parse(text); // still well-formed
}

TEST_CASE("random scores always render as well-formed xml") {
    std::mt19937 rng(777u);
    for (int iter = 0; iter < 40; ++iter) {
        LabanScore score = testutil::random_score(rng);
        std::string text = render_svg(score);
        auto root = xml::parse(text);
        CHECK(root->name == "svg");
        int expected = 0;
        for (const auto& f : score.frames)
            expected += nonzero_limbs(f);
        CHECK(static_cast<int>(collect_glyphs(*root).size()) == expected);
    }
}
