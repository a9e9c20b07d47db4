#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

namespace oscillnet::io {

// Shortest representation that round-trips a double exactly; used for
// every numeric value written to disk so outputs are byte-reproducible.
std::string format_double(double v);

// Plain-text CSV with an optional '# key = value' metadata header.
struct CsvTable {
    std::vector<std::pair<std::string, std::string>> metadata;
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    // First metadata value for key, or empty string.
    std::string meta(const std::string& key) const;
    // Index of a named column; throws std::invalid_argument if absent.
    std::size_t column_index(const std::string& name) const;
};

void write_csv(const std::filesystem::path& path, const CsvTable& table);
CsvTable read_csv(const std::filesystem::path& path);

// 64-bit FNV-1a content hash; stable across platforms, used as the
// file digest in run manifests.
std::uint64_t fnv1a64(const void* data, std::size_t len);
std::string digest_hex(std::uint64_t digest);
std::string file_digest_hex(const std::filesystem::path& path);

// Flat `key = value` text files ('#' comments, blank lines ignored).
// Order is preserved and duplicate keys are allowed; consumers decide
// last-wins or list semantics.
using KeyValueList = std::vector<std::pair<std::string, std::string>>;

KeyValueList read_key_values(const std::filesystem::path& path);
void write_key_values(const std::filesystem::path& path,
                      const KeyValueList& entries,
                      const std::string& header_comment);

// Splits a "key=value" assignment (as passed to --set flags); throws
// std::invalid_argument if '=' is missing or the key is empty.
std::pair<std::string, std::string> split_assignment(const std::string& text);

}  // namespace oscillnet::io
