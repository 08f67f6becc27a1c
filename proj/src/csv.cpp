#include "stylokit/csv.hpp"

#include <charconv>
#include <stdexcept>

namespace stylokit::csv {

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string escape_field(std::string_view field) {
    bool needs_quote = field.find_first_of(",\"\r\n") != std::string_view::npos;
    if (!needs_quote)
        return std::string(field);
    std::string out;
    out.reserve(field.size() + 2);
    out.push_back('"');
    for (char c : field) {
        if (c == '"')
            out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

std::string join_row(const std::vector<std::string>& fields) {
    std::string out;
    for (size_t i = 0; i < fields.size(); ++i) {
        if (i)
            out.push_back(',');
        out += escape_field(fields[i]);
    }
    return out;
}

std::vector<std::string> split_row(std::string_view line) {
    std::vector<std::string> fields;
    std::string cur;
    bool in_quotes = false;
    for (size_t i = 0; i < line.size(); ++i) {
        char c = line[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur.push_back('"');
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                cur.push_back(c);
            }
        } else if (c == '"') {
            in_quotes = true;
        } else if (c == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
        } else if (c == '\r') {
            // tolerate CRLF line endings
        } else {
            cur.push_back(c);
        }
    }
    if (in_quotes)
        throw std::runtime_error("unterminated quoted CSV field");
    fields.push_back(std::move(cur));
    return fields;
}

} // namespace stylokit::csv
