#ifndef ADAVU_LABANXML_HPP
#define ADAVU_LABANXML_HPP

#include <string>
#include <string_view>
#include <vector>

#include "laban.hpp"

namespace adavu::labanxml {

// LabanXML codec. The document layout is fixed:
//
//   <laban>
//      <attribute><title>...</title></attribute>
//      <notation>
//         <measure num="0">
//            <left>
//               <arm duration="1"><direction/><level/></arm>
//               <elbow duration="1"><Degree/></elbow>
//               <foot><touch/></foot>
//               <knee duration="1"><Degree/></knee>
//               [<leg duration="1"><direction/><level/></leg>]
//            </left>
//            <right>...</right>
//            <support side="left"><direction/><level/></support>
//            <support side="right"><direction/><level/></support>
//            <head><direction/><level/></head>
//         </measure>
//         ...
//      </notation>
//   </laban>
//
// Canonical output: 3-space indentation, no XML declaration, UTF-8, the
// element order above, codes as decimal integers. The <leg> element appears
// only when the leg direction is non-zero (a leg held in place has no
// direction symbol of its own). <Degree> keeps its odd capitalization.

std::string generate_xml(const laban::LabanScore& score);

// Inverse of generate_xml on its image. Unknown elements produce warnings,
// not errors; a missing <support> or <head> is a validation error naming the
// measure; out-of-range codes are validation errors. Descriptor fields the
// format does not carry (crossing, mirror, hip support, body inclusion) come
// back default-initialized.
laban::LabanScore parse_xml(std::string_view text,
                            std::vector<std::string>* warnings = nullptr);

} // namespace adavu::labanxml

#endif
