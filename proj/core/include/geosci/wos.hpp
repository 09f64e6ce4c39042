#pragma once

#include <istream>
#include <ostream>
#include <vector>

#include "geosci/bib.hpp"

namespace geosci {

struct WosParseResult {
  std::vector<BibRecord> records;
  std::vector<SkippedRecord> skipped;
};

// Parses a Web-of-Science tagged export: two-character tags at columns 1-2,
// values from column 4, continuation lines indented three spaces. Records run
// from PT to ER; the file ends at EF. Malformed records are skipped and
// reported with their line number; parsing continues at the next record.
WosParseResult parse_wos(std::istream& in);

// Writes records back in tagged form. parse_wos(serialize_wos(r)) == r
// field-by-field.
void serialize_wos(const std::vector<BibRecord>& records, std::ostream& out);

}  // namespace geosci
