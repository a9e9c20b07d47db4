#include "oscillnet/io.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace oscillnet::io {

namespace {

std::string trim(const std::string& s) {
    size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

double parse_double(const std::string& text, const std::string& where) {
    size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument(where + ": not a number: '" + text + "'");
    }
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos != text.size()) {
        throw std::invalid_argument(where + ": trailing characters in number: '" + text + "'");
    }
    return v;
}

std::ofstream open_for_write(const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::invalid_argument("cannot open for writing: " + path.string());
    }
    return out;
}

std::ifstream open_for_read(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::invalid_argument("cannot open for reading: " + path.string());
    }
    return in;
}

}  // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string CsvTable::meta(const std::string& key) const {
    for (const auto& [k, v] : metadata) {
        if (k == key) return v;
    }
    return "";
}

std::size_t CsvTable::column_index(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (columns[i] == name) return i;
    }
    throw std::invalid_argument("no such column: " + name);
}

void write_csv(const std::filesystem::path& path, const CsvTable& table) {
    std::ofstream out = open_for_write(path);
    for (const auto& [k, v] : table.metadata) {
        out << "# " << k << " = " << v << "\n";
    }
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        if (i) out << ",";
        out << table.columns[i];
    }
    out << "\n";
    for (const auto& row : table.rows) {
        if (row.size() != table.columns.size()) {
            throw std::invalid_argument("csv row width " + std::to_string(row.size()) +
                                        " does not match " +
                                        std::to_string(table.columns.size()) + " columns");
        }
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << ",";
            out << format_double(row[i]);
        }
        out << "\n";
    }
    if (!out) {
        throw std::runtime_error("write failed: " + path.string());
    }
}

CsvTable read_csv(const std::filesystem::path& path) {
    std::ifstream in = open_for_read(path);
    CsvTable table;
    std::string line;
    int line_no = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const std::string where = path.string() + ":" + std::to_string(line_no);
        if (line.empty()) continue;
        if (line[0] == '#') {
            const std::string body = trim(line.substr(1));
            const size_t eq = body.find('=');
            if (eq != std::string::npos) {
                table.metadata.emplace_back(trim(body.substr(0, eq)),
                                            trim(body.substr(eq + 1)));
            }
            continue;
        }
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(trim(cell));
        if (!have_header) {
            table.columns = cells;
            have_header = true;
            continue;
        }
        if (cells.size() != table.columns.size()) {
            throw std::invalid_argument(where + ": row has " + std::to_string(cells.size()) +
                                        " cells, expected " +
                                        std::to_string(table.columns.size()));
        }
        std::vector<double> row;
        row.reserve(cells.size());
        for (const std::string& c : cells) row.push_back(parse_double(c, where));
        table.rows.push_back(std::move(row));
    }
    if (!have_header) {
        throw std::invalid_argument(path.string() + ": missing csv header row");
    }
    return table;
}

std::uint64_t fnv1a64(const void* data, std::size_t len) {
    const auto* bytes = static_cast<const unsigned char*>(data);
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (std::size_t i = 0; i < len; ++i) {
        hash ^= bytes[i];
        hash *= 0x100000001b3ULL;
    }
    return hash;
}

std::string digest_hex(std::uint64_t digest) {
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(digest));
    return buf;
}

std::string file_digest_hex(const std::filesystem::path& path) {
    std::ifstream in = open_for_read(path);
    std::string contents((std::istreambuf_iterator<char>(in)),
                         std::istreambuf_iterator<char>());
    return digest_hex(fnv1a64(contents.data(), contents.size()));
}

KeyValueList read_key_values(const std::filesystem::path& path) {
    std::ifstream in = open_for_read(path);
    KeyValueList entries;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const size_t comment = line.find('#');
        if (comment != std::string::npos) line = line.substr(0, comment);
        line = trim(line);
        if (line.empty()) continue;
        const size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument(path.string() + ":" + std::to_string(line_no) +
                                        ": expected 'key = value'");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) {
            throw std::invalid_argument(path.string() + ":" + std::to_string(line_no) +
                                        ": empty key");
        }
        entries.emplace_back(key, value);
    }
    return entries;
}

void write_key_values(const std::filesystem::path& path,
                      const KeyValueList& entries,
                      const std::string& header_comment) {
    std::ofstream out = open_for_write(path);
    if (!header_comment.empty()) {
        out << "# " << header_comment << "\n";
    }
    for (const auto& [k, v] : entries) {
        out << k << " = " << v << "\n";
    }
    if (!out) {
        throw std::runtime_error("write failed: " + path.string());
    }
}

std::pair<std::string, std::string> split_assignment(const std::string& text) {
    const size_t eq = text.find('=');
    if (eq == std::string::npos) {
        throw std::invalid_argument("expected key=value, got '" + text + "'");
    }
    const std::string key = trim(text.substr(0, eq));
    const std::string value = trim(text.substr(eq + 1));
    if (key.empty()) {
        throw std::invalid_argument("empty key in assignment '" + text + "'");
    }
    return {key, value};
}

}  // namespace oscillnet::io
