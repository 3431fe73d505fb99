#include "svg_staff.hpp"

#include <cstdio>
#include <sstream>

#include "xml.hpp"

namespace adavu::svg {

using laban::LabanFrame;
using laban::LabanLimb;
using laban::LabanScore;

namespace {

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.2f", v);
    return buf;
}

struct Point {
    double x, y;
};

// Glyph outline inside the box (x0,y0)-(x1,y1), keyed by direction code.
// Place is a plain rectangle; side directions point sideways; forward and
// backward slant the top/bottom edge; diagonals chamfer a corner.
std::vector<Point> glyph_outline(int code, double x0, double y0, double x1, double y1) {
    double ym = 0.5 * (y0 + y1);
    double xm = 0.5 * (x0 + x1);
    double h = y1 - y0;
    switch (code) {
    case 1:
        return {{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}};
    case 2: // left side
        return {{x1, y0}, {x1, y1}, {x0, ym}};
    case 3: // right side
        return {{x0, y0}, {x1, ym}, {x0, y1}};
    case 4: // left forward
        return {{x0, y0}, {x1, y0 + 0.35 * h}, {x1, y1}, {x0, y1}};
    case 5: // right forward
        return {{x0, y0 + 0.35 * h}, {x1, y0}, {x1, y1}, {x0, y1}};
    case 6: // left backward
        return {{x0, y0}, {x1, y0}, {x1, y1 - 0.35 * h}, {x0, y1}};
    case 7: // right backward
        return {{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1 - 0.35 * h}};
    case 8: // left forward diagonal
        return {{x0, y0 + 0.5 * h}, {xm, y0}, {x1, y0}, {x1, y1}, {x0, y1}};
    case 9: // right forward diagonal
        return {{x0, y0}, {xm, y0}, {x1, y0 + 0.5 * h}, {x1, y1}, {x0, y1}};
    case 10: // left backward diagonal
        return {{x0, y0}, {x1, y0}, {x1, y1}, {xm, y1}, {x0, y1 - 0.5 * h}};
    case 11: // right backward diagonal
        return {{x0, y0}, {x1, y0}, {x1, y1 - 0.5 * h}, {xm, y1}, {x0, y1}};
    default:
        return {};
    }
}

class Canvas {
public:
    explicit Canvas(const StaffLayout& layout, int measures)
        : layout_(layout), measures_(measures) {
        width_ = 2.0 * layout.margin_x +
                 2.0 * layout.columns_per_side() * layout.column_width;
        height_ = 2.0 * layout.margin_y +
                  std::max(1, measures) * layout.cell_height;
        center_x_ = width_ / 2.0;
    }

    double width() const { return width_; }
    double height() const { return height_; }
    double center_x() const { return center_x_; }
    double top() const { return layout_.margin_y; }
    double bottom() const { return height_ - layout_.margin_y; }

    // x center of a column; side -1 = left of the centerline, +1 = right.
    // Column indices from the centerline: 1 support, 2 leg, 3 body, 4 arm,
    // 5 head.
    double column_x(int side, int index) const {
        return center_x_ + side * (index - 0.5) * layout_.column_width;
    }

    // Cells stack bottom-up: measure 0 sits at the bottom of the staff.
    double cell_top(int measure) const {
        return layout_.margin_y + (measures_ - 1 - measure) * layout_.cell_height;
    }

private:
    StaffLayout layout_;
    int measures_;
    double width_ = 0, height_ = 0, center_x_ = 0;
};

} // namespace

std::string render_svg(const LabanScore& score, const StaffLayout& layout,
                       std::vector<std::string>* warnings) {
    const int n = static_cast<int>(score.frames.size());
    Canvas canvas(layout, n);
    std::ostringstream out;

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\""
        << num(canvas.width()) << "\" height=\"" << num(canvas.height())
        << "\" viewBox=\"0 0 " << num(canvas.width()) << " " << num(canvas.height())
        << "\">\n";
    out << "   <title>" << xml::escape_text(score.title) << "</title>\n";
    out << "   <defs>\n"
           "      <pattern id=\"hatch\" width=\"5\" height=\"5\" "
           "patternUnits=\"userSpaceOnUse\" patternTransform=\"rotate(45)\">\n"
           "         <rect width=\"5\" height=\"5\" fill=\"white\"/>\n"
           "         <line x1=\"0\" y1=\"0\" x2=\"0\" y2=\"5\" stroke=\"black\" "
           "stroke-width=\"1.2\"/>\n"
           "      </pattern>\n"
           "   </defs>\n";

    // Staff: centerline plus the two lines bounding the support and leg
    // columns, and a double line marking the start (bottom).
    auto vline = [&](double x, double w) {
        out << "   <line x1=\"" << num(x) << "\" y1=\"" << num(canvas.top())
            << "\" x2=\"" << num(x) << "\" y2=\"" << num(canvas.bottom())
            << "\" stroke=\"black\" stroke-width=\"" << num(w) << "\"/>\n";
    };
    vline(canvas.center_x(), 1.4);
    vline(canvas.center_x() - 2.0 * layout.column_width, 1.0);
    vline(canvas.center_x() + 2.0 * layout.column_width, 1.0);
    auto hline = [&](double y, double w) {
        out << "   <line x1=\"" << num(canvas.center_x() - 2.0 * layout.column_width)
            << "\" y1=\"" << num(y) << "\" x2=\""
            << num(canvas.center_x() + 2.0 * layout.column_width) << "\" y2=\""
            << num(y) << "\" stroke=\"black\" stroke-width=\"" << num(w) << "\"/>\n";
    };
    hline(canvas.bottom(), 1.6);
    hline(canvas.bottom() - 4.0, 0.8);
    for (int m = 0; m < n; ++m)
        hline(canvas.cell_top(m), 0.5);

    auto draw_glyph = [&](int measure, const char* column, int side, int col_index,
                          const LabanLimb& limb) {
        if (limb.direction == 0)
            return;
        double cx = canvas.column_x(side, col_index);
        double x0 = cx - layout.glyph_width / 2.0;
        double x1 = cx + layout.glyph_width / 2.0;
        double cell_y = canvas.cell_top(measure);
        double y0 = cell_y + (layout.cell_height - layout.glyph_height) / 2.0;
        double y1 = y0 + layout.glyph_height;

        auto outline = glyph_outline(limb.direction, x0, y0, x1, y1);
        bool fallback = outline.empty();
        if (fallback) {
            outline = glyph_outline(1, x0, y0, x1, y1);
            if (warnings)
                warnings->push_back("measure " + std::to_string(measure) + " " + column +
                                    ": unknown direction code " +
                                    std::to_string(limb.direction) +
                                    "; fallback glyph used");
        }

        const char* fill = "white";
        if (limb.level == 1)
            fill = "url(#hatch)";
        else if (limb.level == 3)
            fill = "black";

        out << "   <g data-measure=\"" << measure << "\" data-column=\"" << column
            << "\" data-code=\"" << limb.direction << "\" data-level=\"" << limb.level
            << "\" data-x=\"" << num(cx) << "\"";
        if (fallback)
            out << " data-warning=\"unknown-code\"";
        out << ">\n";
        out << "      <polygon points=\"";
        for (size_t i = 0; i < outline.size(); ++i)
            out << (i ? " " : "") << num(outline[i].x) << "," << num(outline[i].y);
        out << "\" fill=\"" << fill << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
        if (limb.level == 2)
            out << "      <circle cx=\"" << num(cx) << "\" cy=\"" << num(0.5 * (y0 + y1))
                << "\" r=\"2.2\" fill=\"black\"/>\n";
        out << "   </g>\n";
    };

    auto draw_fold = [&](int measure, const char* column, int side, int col_index,
                         const char* joint, int degree) {
        if (degree == 0)
            return;
        double cx = canvas.column_x(side, col_index) + side * layout.glyph_width * 0.85;
        double cy = canvas.cell_top(measure) + layout.cell_height / 2.0;
        out << "   <g data-mark=\"fold\" data-measure=\"" << measure
            << "\" data-column=\"" << column << "\" data-joint=\"" << joint
            << "\" data-degree=\"" << degree << "\">\n";
        out << "      <path d=\"M " << num(cx) << " " << num(cy - 6.0) << " A 6 6 0 0 "
            << (side < 0 ? 0 : 1) << " " << num(cx) << " " << num(cy + 6.0)
            << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";
        out << "      <text x=\"" << num(cx + side * 4.0) << "\" y=\"" << num(cy + 3.0)
            << "\" font-size=\"8\" text-anchor=\"middle\">" << degree << "</text>\n";
        out << "   </g>\n";
    };

    auto draw_touch = [&](int measure, const char* column, int side, int col_index,
                          int touch) {
        if (touch == 0)
            return;
        double cx = canvas.column_x(side, col_index);
        double y = canvas.cell_top(measure) + layout.cell_height -
                   (layout.cell_height - layout.glyph_height) / 2.0;
        out << "   <g data-mark=\"touch\" data-measure=\"" << measure
            << "\" data-column=\"" << column << "\" data-touch=\"" << touch << "\">\n";
        out << "      <path d=\"M " << num(cx) << " " << num(y) << " q "
            << num(side * 5.0) << " 2.5 " << num(side * 7.0) << " 7\" fill=\"none\" "
               "stroke=\"black\" stroke-width=\"1\"/>\n";
        out << "   </g>\n";
    };

    for (const auto& frame : score.frames) {
        int m = frame.measure;
        draw_glyph(m, "left-support", -1, 1, frame.left_support);
        draw_glyph(m, "right-support", +1, 1, frame.right_support);
        draw_glyph(m, "left-leg", -1, 2, frame.left_leg.limb);
        draw_glyph(m, "right-leg", +1, 2, frame.right_leg.limb);
        draw_glyph(m, "left-arm", -1, 4, frame.left_arm.limb);
        draw_glyph(m, "right-arm", +1, 4, frame.right_arm.limb);
        // single head; by convention its symbol sits in the right head column
        draw_glyph(m, "head", +1, 5, frame.head);

        draw_fold(m, "left-leg", -1, 2, "knee", frame.left_leg.knee_folding);
        draw_fold(m, "right-leg", +1, 2, "knee", frame.right_leg.knee_folding);
        draw_fold(m, "left-arm", -1, 4, "elbow", frame.left_arm.elbow_folding);
        draw_fold(m, "right-arm", +1, 4, "elbow", frame.right_arm.elbow_folding);

        // touch hooks attach to the gesturing leg when it points somewhere,
        // else to the supporting foot
        bool left_gesture = frame.left_leg.limb.direction != 0;
        bool right_gesture = frame.right_leg.limb.direction != 0;
        draw_touch(m, left_gesture ? "left-leg" : "left-support", -1,
                   left_gesture ? 2 : 1, frame.left_leg.touch);
        draw_touch(m, right_gesture ? "right-leg" : "right-support", +1,
                   right_gesture ? 2 : 1, frame.right_leg.touch);
    }

    out << "</svg>\n";
    return out.str();
}

} // namespace adavu::svg
