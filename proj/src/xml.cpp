#include "xml.hpp"

#include "error.hpp"

namespace adavu::xml {

namespace {

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    std::unique_ptr<Element> run() {
        skip_misc();
        if (eof())
            fail("document has no root element");
        auto root = parse_element();
        skip_misc();
        if (!eof())
            fail("content after the root element");
        return root;
    }

private:
    std::string_view text_;
    size_t pos_ = 0;
    int line_ = 1;

    bool eof() const { return pos_ >= text_.size(); }
    char peek() const { return text_[pos_]; }

    char take() {
        char c = text_[pos_++];
        if (c == '\n')
            ++line_;
        return c;
    }

    bool starts_with(std::string_view s) const {
        return text_.compare(pos_, s.size(), s) == 0;
    }

    void expect(char c) {
        if (eof() || peek() != c)
            fail(std::string("expected '") + c + "'");
        take();
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw Error(ErrorKind::Parse, "line " + std::to_string(line_) + ": " + msg);
    }

    void skip_ws() {
        while (!eof() && (peek() == ' ' || peek() == '\t' || peek() == '\n' || peek() == '\r'))
            take();
    }

    // whitespace, comments and the XML declaration between markup
    void skip_misc() {
        while (true) {
            skip_ws();
            if (starts_with("<?")) {
                while (!eof() && !starts_with("?>"))
                    take();
                if (eof())
                    fail("unterminated processing instruction");
                take();
                take();
            } else if (starts_with("<!--")) {
                skip_comment();
            } else {
                break;
            }
        }
    }

    void skip_comment() {
        pos_ += 4;
        while (!eof() && !starts_with("-->"))
            take();
        if (eof())
            fail("unterminated comment");
        pos_ += 3;
    }

    static bool name_char(char c) {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
               (c >= '0' && c <= '9') || c == '_' || c == '-' || c == '.' || c == ':';
    }

    std::string parse_name() {
        size_t start = pos_;
        while (!eof() && name_char(peek()))
            take();
        if (pos_ == start)
            fail("expected a name");
        return std::string(text_.substr(start, pos_ - start));
    }

    std::string decode_entities(std::string_view raw) {
        std::string out;
        out.reserve(raw.size());
        for (size_t i = 0; i < raw.size(); ++i) {
            if (raw[i] != '&') {
                out.push_back(raw[i]);
                continue;
            }
            size_t semi = raw.find(';', i);
            if (semi == std::string_view::npos)
                fail("unterminated entity reference");
            std::string_view name = raw.substr(i + 1, semi - i - 1);
            if (name == "lt") out.push_back('<');
            else if (name == "gt") out.push_back('>');
            else if (name == "amp") out.push_back('&');
            else if (name == "quot") out.push_back('"');
            else if (name == "apos") out.push_back('\'');
            else fail("unknown entity '&" + std::string(name) + ";'");
            i = semi;
        }
        return out;
    }

    std::unique_ptr<Element> parse_element() {
        expect('<');
        auto el = std::make_unique<Element>();
        el->line = line_;
        el->name = parse_name();

        while (true) {
            skip_ws();
            if (eof())
                fail("unterminated start tag <" + el->name + ">");
            if (peek() == '>') {
                take();
                break;
            }
            if (peek() == '/') {
                take();
                expect('>');
                return el; // self-closing
            }
            std::string attr = parse_name();
            skip_ws();
            expect('=');
            skip_ws();
            if (eof() || (peek() != '"' && peek() != '\''))
                fail("attribute value must be quoted");
            char quote = take();
            size_t start = pos_;
            while (!eof() && peek() != quote) {
                if (peek() == '<')
                    fail("'<' inside attribute value");
                take();
            }
            if (eof())
                fail("unterminated attribute value");
            std::string value = decode_entities(text_.substr(start, pos_ - start));
            take();
            if (!el->attributes.emplace(attr, std::move(value)).second)
                fail("duplicate attribute '" + attr + "'");
        }

        // content
        while (true) {
            if (eof())
                fail("unterminated element <" + el->name + ">");
            if (starts_with("<!--")) {
                skip_comment();
                continue;
            }
            if (starts_with("</")) {
                take();
                take();
                std::string closing = parse_name();
                if (closing != el->name)
                    fail("mismatched closing tag </" + closing + "> for <" + el->name + ">");
                skip_ws();
                expect('>');
                return el;
            }
            if (peek() == '<') {
                el->children.push_back(parse_element());
                continue;
            }
            size_t start = pos_;
            while (!eof() && peek() != '<')
                take();
            std::string_view chunk = text_.substr(start, pos_ - start);
            std::string decoded = decode_entities(chunk);
            // keep meaningful character data, drop pure indentation
            bool blank = decoded.find_first_not_of(" \t\r\n") == std::string::npos;
            if (!blank)
                el->text += decoded;
        }
    }
};

void append_escaped(std::string& out, std::string_view raw, bool attribute) {
    for (char c : raw) {
        switch (c) {
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '&': out += "&amp;"; break;
        case '"':
            if (attribute) { out += "&quot;"; break; }
            [[fallthrough]];
        default: out.push_back(c);
        }
    }
}

} // namespace

const Element* Element::child(std::string_view n) const {
    for (const auto& c : children)
        if (c->name == n)
            return c.get();
    return nullptr;
}

std::vector<const Element*> Element::children_named(std::string_view n) const {
    std::vector<const Element*> out;
    for (const auto& c : children)
        if (c->name == n)
            out.push_back(c.get());
    return out;
}

std::unique_ptr<Element> parse(std::string_view text) {
    return Parser(text).run();
}

std::string escape_text(std::string_view raw) {
    std::string out;
    out.reserve(raw.size());
    append_escaped(out, raw, false);
    return out;
}

std::string escape_attribute(std::string_view raw) {
    std::string out;
    out.reserve(raw.size());
    append_escaped(out, raw, true);
    return out;
}

} // namespace adavu::xml
