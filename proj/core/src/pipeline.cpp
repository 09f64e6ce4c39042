#include "geosci/pipeline.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "geosci/errors.hpp"
#include "geosci/gpsvis.hpp"
#include "geosci/kml.hpp"
#include "geosci/kmz.hpp"
#include "geosci/matrix_io.hpp"
#include "geosci/pajek.hpp"
#include "geosci/scopus.hpp"
#include "geosci/util.hpp"
#include "geosci/wos.hpp"

namespace geosci {

IngestOutcome ingest_files(const std::vector<IngestInput>& inputs) {
  IngestOutcome out;
  long scopus_offset = 0;
  for (const auto& input : inputs) {
    std::ifstream in(input.file);
    if (!in) throw IoError("cannot open " + input.file.string());
    std::vector<BibRecord> records;
    std::vector<SkippedRecord> skipped;
    if (input.format == "wos") {
      auto res = parse_wos(in);
      records = std::move(res.records);
      skipped = std::move(res.skipped);
    } else if (input.format == "scopus") {
      auto res = parse_scopus(in, scopus_offset);
      scopus_offset += static_cast<long>(res.records.size() + res.skipped.size());
      records = std::move(res.records);
      skipped = std::move(res.skipped);
    } else {
      throw ConfigError("unknown ingest format: " + input.format);
    }
    for (const auto& s : skipped) {
      out.warnings.push_back(input.file.string() + ":" + std::to_string(s.line) + ": skipped: " +
                             s.reason);
    }
    for (auto& r : records) out.records.push_back(std::move(r));
  }
  // record ids are unique within a corpus; keep the first of any duplicate
  std::set<std::string> seen;
  std::vector<BibRecord> unique;
  unique.reserve(out.records.size());
  for (auto& r : out.records) {
    if (!seen.insert(r.record_id).second) {
      out.warnings.push_back("duplicate record id dropped: " + r.record_id);
      continue;
    }
    unique.push_back(std::move(r));
  }
  out.records = std::move(unique);
  return out;
}

std::string corpus_stats_line(const CorpusStats& s, long city_postcode_variants) {
  std::ostringstream out;
  out << "records " << s.n_records << ", authors " << s.n_authors << ", addresses "
      << s.n_addresses << ", unique cities " << s.n_unique_city_keys << " ("
      << city_postcode_variants << " with postcode variants), unique institutions "
      << s.n_unique_inst_keys;
  return out.str();
}

CountryTable load_country_table(const PipelineConfig& cfg) {
  return cfg.country_table.empty() ? CountryTable::defaults()
                                   : CountryTable::load(cfg.country_table);
}

CoocMatrix corpus_matrix(const std::vector<BibRecord>& records, const PipelineConfig& cfg,
                         std::vector<std::string>* warnings) {
  CountryTable countries = load_country_table(cfg);
  KeyOptions opt{cfg.level, cfg.aggregate};
  std::vector<AddressWarning> addr_warnings;
  KeySetFn keys_of = [&](const BibRecord& r) { return record_keys(r, opt, countries, nullptr); };
  if (warnings) {
    for (const auto& r : records) record_keys(r, opt, countries, &addr_warnings);
  }
  CoocMatrix m = build_cooc(records, keys_of, cfg.counting);
  if (cfg.threshold_abs) m = apply_threshold(m, ThresholdMode::absolute, *cfg.threshold_abs);
  if (cfg.threshold_pct) m = apply_threshold(m, ThresholdMode::percent, *cfg.threshold_pct);
  if (warnings) {
    std::set<std::string> dedup;
    for (const auto& w : addr_warnings) {
      if (dedup.insert(w.text).second) {
        warnings->push_back("unparsable address \"" + w.text + "\": " + w.reason);
      }
    }
    if (m.size() == 0) warnings->push_back("empty result: no key survives the threshold");
  }
  return m;
}

std::vector<PlaceKey> matrix_place_keys(const std::vector<BibRecord>& records,
                                        const CoocMatrix& m, const PipelineConfig& cfg) {
  CountryTable countries = load_country_table(cfg);
  KeyOptions opt{cfg.level, cfg.aggregate};
  auto book = collect_place_keys(records, opt, countries);
  std::vector<PlaceKey> keys;
  keys.reserve(static_cast<size_t>(m.size()));
  for (const auto& key : m.keys()) {
    auto it = book.find(key);
    if (it != book.end()) keys.push_back(it->second);
  }
  return keys;
}

ResolutionReport resolve_offline(const std::vector<PlaceKey>& keys, const PipelineConfig& cfg) {
  CountryTable countries = load_country_table(cfg);
  GeoTable gazetteer;
  bool have_gazetteer = !cfg.gazetteer.empty();
  if (have_gazetteer) gazetteer = GeoTable::load(cfg.gazetteer);
  GeoCache cache(cfg.cache);
  return resolve(keys, have_gazetteer ? &gazetteer : nullptr, &cache, nullptr, countries);
}

BuildOutcome run_build(const PipelineConfig& cfg) {
  BuildOutcome out;
  std::vector<BibRecord> records = load_corpus(cfg.corpus);
  out.matrix = corpus_matrix(records, cfg, &out.warnings);

  std::filesystem::create_directories(cfg.out_dir);
  write_matrix(out.matrix, cfg.out_dir / "matrix.txt");
  out.files.push_back("matrix.txt");
  if (cfg.cosine) {
    write_similarity(cosine_normalize(out.matrix), cfg.out_dir / "cosine.txt");
    out.files.push_back("cosine.txt");
  }

  auto keys = matrix_place_keys(records, out.matrix, cfg);
  out.report = resolve_offline(keys, cfg);
  for (const auto& [key, reason] : out.report.failures) {
    out.warnings.push_back("no coordinates for \"" + key + "\": " + reason);
  }
  for (const auto& m : out.report.country_mismatches) {
    out.warnings.push_back("country mismatch for \"" + m.key + "\": parsed " + m.parsed_country +
                           ", geocoder says " + m.resolved_country);
  }

  out.network = build_network(out.matrix, out.report, &out.warnings);
  if (out.network.nodes.empty()) throw Error("no geocoded nodes; nothing to export");
  if (cfg.region) out.network = region_filter(out.network, *cfg.region);
  if (cfg.k_core) out.network = k_core(out.network, *cfg.k_core);
  if (out.network.nodes.empty()) throw Error("network empty after region/k-core restriction");

  KmlOptions kml_opt;
  kml_opt.link_color = cfg.link_color;
  auto selected = [&](const std::string& name) {
    return std::find(cfg.exports.begin(), cfg.exports.end(), name) != cfg.exports.end();
  };
  bool want_kmz = selected("kmz");
  if (selected("kml-earth") || want_kmz) {
    export_kml_earth(out.network, cfg.out_dir / "cities.kml", kml_opt);
    out.files.push_back("cities.kml");
  }
  if (want_kmz) {
    package_kmz(cfg.out_dir / "cities.kml", cfg.out_dir / "cities.kmz");
    out.files.push_back("cities.kmz");
  }
  if (selected("kml-maps")) {
    export_kml_maps(out.network, cfg.out_dir / "cities2.kml", kml_opt);
    out.files.push_back("cities2.kml");
  }
  if (selected("gps")) {
    export_gps_visualizer(out.network, cfg.out_dir / "inp_gps.txt");
    out.files.push_back("inp_gps.txt");
  }
  if (selected("pajek")) {
    Coastline coast;
    bool have_coast = !cfg.coastline.empty();
    if (have_coast) coast = load_coastline(cfg.coastline, cfg.coastline_coords);
    export_pajek(out.network, have_coast ? &coast : nullptr, cfg.out_dir / "cities.paj");
    out.files.push_back("cities.paj");
  }

  write_manifest(cfg.out_dir, out.files);
  return out;
}

void write_manifest(const std::filesystem::path& out_dir,
                    const std::vector<std::filesystem::path>& files) {
  std::vector<std::filesystem::path> sorted = files;
  std::sort(sorted.begin(), sorted.end());
  std::ostringstream out;
  for (const auto& f : sorted) {
    out << f.generic_string() << "\t" << sha256_file_hex(out_dir / f) << "\n";
  }
  write_file_atomic(out_dir / "run-manifest.txt", out.str());
}

}  // namespace geosci
