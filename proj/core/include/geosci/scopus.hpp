#pragma once

#include <istream>
#include <vector>

#include "geosci/bib.hpp"

namespace geosci {

struct ScopusParseResult {
  std::vector<BibRecord> records;
  std::vector<SkippedRecord> skipped;  // ragged rows, by row number
};

// Parses a Scopus CSV export into the common record model. The header must
// name Authors, Title, Year, Source title, Affiliations and Correspondence
// Address (MissingColumnError otherwise). Record ids are generated as
// "SCP-<row>", offset by id_offset so several files can share one corpus.
ScopusParseResult parse_scopus(std::istream& in, long id_offset = 0);

}  // namespace geosci
