#ifndef ADAVU_XML_HPP
#define ADAVU_XML_HPP

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

namespace adavu::xml {

// Minimal XML reader covering the documents this project produces and
// consumes: elements, attributes (quoted), character data with the five
// standard entities, comments and an optional XML declaration. No DTDs,
// namespaces stay part of the tag name. Errors carry line numbers.

struct Element {
    std::string name;
    std::map<std::string, std::string> attributes;
    std::vector<std::unique_ptr<Element>> children;
    std::string text; // concatenated character data directly inside this element
    int line = 0;

    const Element* child(std::string_view name) const;
    std::vector<const Element*> children_named(std::string_view name) const;
};

// Parses a complete document and returns its root element.
// Throws Error{Parse} with "line N:" context on malformed input.
std::unique_ptr<Element> parse(std::string_view text);

std::string escape_text(std::string_view raw);
std::string escape_attribute(std::string_view raw);

} // namespace adavu::xml

#endif
