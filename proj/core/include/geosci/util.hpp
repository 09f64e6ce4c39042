#pragma once

#include <filesystem>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace geosci {

std::string trim(std::string_view s);
std::string collapse_ws(std::string_view s);
std::string to_upper(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);
std::string join(const std::vector<std::string>& parts, std::string_view sep);

// Replaces invalid UTF-8 byte sequences with U+FFFD.
std::string sanitize_utf8(std::string_view s);

// Title case for place-name components: "NEW YORK" -> "New York".
// Words of up to three letters that were all-caps stay all-caps ("UK", "USA").
std::string title_case_place(std::string_view s);

bool contains_digit(std::string_view s);

std::string xml_escape(std::string_view s);
std::string url_encode(std::string_view s);

// Fixed-point decimal formatting, C locale, no trailing-zero trimming.
std::string format_fixed(double v, int decimals);

// RFC-4180: quotes the field only when it contains comma, quote, or newline.
std::string csv_field(std::string_view s);

// Reads one CSV record (handles quoted fields with embedded separators and
// newlines). Returns nullopt at end of stream.
std::optional<std::vector<std::string>> read_csv_record(std::istream& in);

std::string read_file(const std::filesystem::path& p);
// Whole-file atomic write: temp file in the same directory, then rename.
void write_file_atomic(const std::filesystem::path& p, std::string_view content);

std::string sha256_hex(std::string_view data);
std::string sha256_file_hex(const std::filesystem::path& p);

}  // namespace geosci
