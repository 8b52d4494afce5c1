#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "regulens/corpus_store.hpp"

namespace regulens {

// Quote a field when it contains a comma, quote, or line break; embedded
// quotes double up (RFC 4180).
inline std::string csv_escape(std::string_view field) {
    bool needs_quotes = field.find_first_of(",\"\n\r") != std::string_view::npos;
    if (!needs_quotes) return std::string(field);
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out.push_back(c);
    }
    out.push_back('"');
    return out;
}

inline std::string csv_line(const std::vector<std::string>& fields) {
    std::string line;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) line.push_back(',');
        line += csv_escape(fields[i]);
    }
    line.push_back('\n');
    return line;
}

// UTF-8, comma-separated, header row, LF line endings.
inline void write_csv(const std::filesystem::path& path,
                      const std::vector<std::string>& header,
                      const std::vector<std::vector<std::string>>& rows) {
    std::string blob = csv_line(header);
    for (const auto& row : rows) blob += csv_line(row);
    detail::write_file(path, blob);
}

} // namespace regulens
