#include "csv.hpp"

#include <fstream>
#include <sstream>

#include "error.hpp"

namespace adavu::csv {

namespace {

std::string trim(std::string_view s) {
    size_t b = 0, e = s.size();
    while (b < e && (s[b] == ' ' || s[b] == '\t' || s[b] == '\r')) ++b;
    while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
    return std::string(s.substr(b, e - b));
}

} // namespace

Row split_line(std::string_view line) {
    Row cells;
    size_t start = 0;
    while (true) {
        size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            cells.push_back(trim(line.substr(start)));
            break;
        }
        cells.push_back(trim(line.substr(start, comma - start)));
        start = comma + 1;
    }
    return cells;
}

Table read_file(const std::string& path, const Row& expected_header) {
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorKind::Io, "cannot open " + path);

    Table table;
    std::string line;
    int line_no = 0;
    bool saw_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty())
            continue;
        Row cells = split_line(line);
        if (!saw_header) {
            if (cells != expected_header) {
                std::ostringstream want;
                for (size_t i = 0; i < expected_header.size(); ++i)
                    want << (i ? "," : "") << expected_header[i];
                throw Error(ErrorKind::Parse,
                            path + ":1: expected header '" + want.str() + "'");
            }
            table.header = std::move(cells);
            saw_header = true;
            continue;
        }
        if (cells.size() != expected_header.size())
            throw Error(ErrorKind::Parse,
                        path + ":" + std::to_string(line_no) + ": expected " +
                            std::to_string(expected_header.size()) + " cells, got " +
                            std::to_string(cells.size()));
        table.rows.push_back(std::move(cells));
        table.line_numbers.push_back(line_no);
    }
    // A file with no content at all is an empty stream, not a format error.
    return table;
}

} // namespace adavu::csv
