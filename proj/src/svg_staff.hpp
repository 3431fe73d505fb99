#ifndef ADAVU_SVG_STAFF_HPP
#define ADAVU_SVG_STAFF_HPP

#include <string>
#include <vector>

#include "laban.hpp"

namespace adavu::svg {

// Geometry of the staff. Columns run outward from the centerline on each
// side: support, leg, body (reserved, unused), arm, head. All visual
// constants live here; the renderer only does placement.
struct StaffLayout {
    double column_width = 26.0;
    double cell_height = 64.0;  // one measure
    double glyph_width = 16.0;
    double glyph_height = 44.0;
    double margin_x = 24.0;
    double margin_y = 20.0;

    int columns_per_side() const { return 5; }
};

// Renders the score on a vertical three-line staff, measure 0 at the bottom,
// time flowing upward. Every direction glyph is a <g> carrying data-measure,
// data-column, data-code (plus data-level and data-x); folding and touch
// annotations carry data-mark instead. Unknown codes render a fallback
// rectangle and a warning.
std::string render_svg(const laban::LabanScore& score,
                       const StaffLayout& layout = {},
                       std::vector<std::string>* warnings = nullptr);

} // namespace adavu::svg

#endif
