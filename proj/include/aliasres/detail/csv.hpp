// RFC 4180 CSV reading and writing. Quoting on output is minimal: a field is
// quoted only when it contains a comma, a quote or a line break. Output rows
// end with '\n'.

#ifndef ALIASRES_DETAIL_CSV_HPP
#define ALIASRES_DETAIL_CSV_HPP

#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace aliasres::csv {

class csv_error : public std::runtime_error {
public:
    explicit csv_error(const std::string& what) : std::runtime_error(what) {}
};

using Row = std::vector<std::string>;

// Parses a whole CSV document. Handles quoted fields with embedded commas,
// quotes ("") and newlines. CRLF line ends are accepted.
inline std::vector<Row> parse(std::string_view text) {
    std::vector<Row> rows;
    Row row;
    std::string field;
    bool in_quotes = false;
    bool field_open = false;  // row has content pending
    std::size_t line = 1;

    std::size_t i = 0;
    auto end_field = [&] {
        row.push_back(std::move(field));
        field.clear();
    };
    auto end_row = [&] {
        end_field();
        rows.push_back(std::move(row));
        row.clear();
        field_open = false;
    };
    while (i < text.size()) {
        char c = text[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                if (c == '\n') ++line;
                field.push_back(c);
            }
        } else if (c == '"') {
            if (!field.empty())
                throw csv_error("line " + std::to_string(line) + ": quote inside unquoted field");
            in_quotes = true;
            field_open = true;
        } else if (c == ',') {
            end_field();
            field_open = true;
        } else if (c == '\n') {
            end_row();
            ++line;
        } else if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') {
            end_row();
            ++line;
            ++i;
        } else {
            field.push_back(c);
            field_open = true;
        }
        ++i;
    }
    if (in_quotes) throw csv_error("unterminated quoted field at end of input");
    if (!field.empty() || !row.empty() || field_open) end_row();
    return rows;
}

inline std::string encode_field(std::string_view f) {
    bool needs_quotes = f.find_first_of(",\"\n\r") != std::string_view::npos;
    if (!needs_quotes) return std::string(f);
    std::string out = "\"";
    for (char c : f) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

inline void write_row(std::string& out, const Row& row) {
    for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) out.push_back(',');
        out += encode_field(row[i]);
    }
    out.push_back('\n');
}

inline std::string write(const std::vector<Row>& rows) {
    std::string out;
    for (const Row& r : rows) write_row(out, r);
    return out;
}

}  // namespace aliasres::csv

#endif
