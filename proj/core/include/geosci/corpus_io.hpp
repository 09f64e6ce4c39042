#pragma once

#include <filesystem>
#include <vector>

#include "geosci/bib.hpp"

namespace geosci {

// Corpus file: one JSON object per line. Fields: id, authors, source, year,
// doc_type, addresses [{text, authors?}], reprint {text, authors?}.
// Absent optionals are omitted. Documented in the repo README.
void save_corpus(const std::vector<BibRecord>& records, const std::filesystem::path& path);
std::vector<BibRecord> load_corpus(const std::filesystem::path& path);

}  // namespace geosci
