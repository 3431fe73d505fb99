#ifndef ADAVU_CSV_HPP
#define ADAVU_CSV_HPP

#include <string>
#include <string_view>
#include <vector>

namespace adavu::csv {

// One parsed line, cells trimmed of surrounding whitespace. The formats in
// this project never quote cells, so a plain comma split is the contract.
using Row = std::vector<std::string>;

struct Table {
    Row header;
    std::vector<Row> rows;       // data rows, header excluded
    std::vector<int> line_numbers; // 1-based source line per data row
};

Row split_line(std::string_view line);

// Reads a whole CSV file. Blank lines are skipped. Throws Error{Io} if the
// file cannot be opened and Error{Parse} if the header does not match
// `expected_header` exactly.
Table read_file(const std::string& path, const Row& expected_header);

} // namespace adavu::csv

#endif
