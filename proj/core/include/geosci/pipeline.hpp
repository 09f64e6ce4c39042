#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "geosci/config.hpp"
#include "geosci/corpus_io.hpp"
#include "geosci/geocode.hpp"
#include "geosci/network.hpp"

namespace geosci {

struct IngestInput {
  std::string format;  // "wos" or "scopus"
  std::filesystem::path file;
};

struct IngestOutcome {
  std::vector<BibRecord> records;
  std::vector<std::string> warnings;
};

// Parses and concatenates the inputs in argument order; Scopus ids continue
// across files; duplicate record ids keep the first occurrence.
IngestOutcome ingest_files(const std::vector<IngestInput>& inputs);

std::string corpus_stats_line(const CorpusStats& stats, long city_postcode_variants);

CountryTable load_country_table(const PipelineConfig& cfg);

// level/aggregate/counting applied, then thresholds. Warnings collect
// unparsable addresses and an empty-threshold note.
CoocMatrix corpus_matrix(const std::vector<BibRecord>& records, const PipelineConfig& cfg,
                         std::vector<std::string>* warnings = nullptr);

std::vector<PlaceKey> matrix_place_keys(const std::vector<BibRecord>& records,
                                        const CoocMatrix& m, const PipelineConfig& cfg);

// gazetteer + cache only; unresolved keys become failures.
ResolutionReport resolve_offline(const std::vector<PlaceKey>& keys, const PipelineConfig& cfg);

struct BuildOutcome {
  CoocMatrix matrix;
  ResolutionReport report;
  GeoNetwork network;  // after optional region filter and k-core
  std::vector<std::string> warnings;
  std::vector<std::filesystem::path> files;  // written, relative to out_dir
};

// The full export step: matrix.txt (+cosine.txt), offline resolution,
// network assembly, optional region/k-core restriction, selected exports,
// and run-manifest.txt. Throws Error when no node could be geocoded.
BuildOutcome run_build(const PipelineConfig& cfg);

// run-manifest.txt: one "path<TAB>sha256" line per written file, sorted.
void write_manifest(const std::filesystem::path& out_dir,
                    const std::vector<std::filesystem::path>& files);

}  // namespace geosci
