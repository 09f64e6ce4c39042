// geosci: bibliographic exports -> geographic collaboration networks.
// Subcommands mirror the two-step workflow the formats come from: ingest
// (databases -> corpus), net (matrices), geocode (coordinates), analyze
// (graph reports), build (all export files + manifest).

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "geosci/address.hpp"
#include "geosci/config.hpp"
#include "geosci/corpus_io.hpp"
#include "geosci/errors.hpp"
#include "geosci/geocode.hpp"
#include "geosci/matrix_io.hpp"
#include "geosci/network.hpp"
#include "geosci/pipeline.hpp"
#include "geosci/remote.hpp"
#include "geosci/util.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFatal = 2;

struct CommonFlags {
  std::optional<std::string> config;
  std::optional<std::string> corpus;
  std::optional<std::string> level;
  bool aggregate = false;
  bool address_counting = false;
  std::optional<double> threshold_abs;
  std::optional<double> threshold_pct;
  bool cosine = false;
  std::optional<std::string> country_table;
  std::optional<std::string> gazetteer;
  std::optional<std::string> cache;
  std::optional<std::string> out_dir;
};

void add_common(CLI::App* cmd, CommonFlags& f, bool with_matrix_flags) {
  cmd->add_option("--config", f.config, "config file (key = value lines)");
  cmd->add_option("--corpus", f.corpus, "corpus file from `geosci ingest`");
  cmd->add_option("--level", f.level, "key level: city|inst")->check(CLI::IsMember({"city", "inst"}));
  cmd->add_flag("--aggregate", f.aggregate,
                "merge street/postcode variants of one institution (inst level)");
  cmd->add_flag("--address-counting", f.address_counting,
                "count every address instead of once per record");
  if (with_matrix_flags) {
    cmd->add_option("--threshold-abs", f.threshold_abs, "keep keys with occurrence >= N");
    cmd->add_option("--threshold-pct", f.threshold_pct,
                    "keep keys with occurrence >= P% of the maximum");
    cmd->add_flag("--cosine", f.cosine, "also write the cosine-normalized matrix");
  }
  cmd->add_option("--country-table", f.country_table, "country normalization table (FROM\\tTO)");
  cmd->add_option("--gazetteer", f.gazetteer, "local gazetteer TSV");
  cmd->add_option("--cache", f.cache, "geocode cache file (default geocache.tsv)");
  cmd->add_option("--out-dir", f.out_dir, "output directory (default .)");
}

geosci::PipelineConfig merge_config(const CommonFlags& f) {
  geosci::PipelineConfig cfg;
  if (f.config) cfg = geosci::load_config(*f.config);
  if (f.corpus) cfg.corpus = *f.corpus;
  if (f.level) cfg.level = *f.level == "inst" ? geosci::KeyLevel::institution : geosci::KeyLevel::city;
  if (f.aggregate) cfg.aggregate = true;
  if (f.address_counting) cfg.counting = geosci::CountingMode::address;
  if (f.threshold_abs) cfg.threshold_abs = f.threshold_abs;
  if (f.threshold_pct) cfg.threshold_pct = f.threshold_pct;
  if (f.cosine) cfg.cosine = true;
  if (f.country_table) cfg.country_table = *f.country_table;
  if (f.gazetteer) cfg.gazetteer = *f.gazetteer;
  if (f.cache) cfg.cache = *f.cache;
  if (f.out_dir) cfg.out_dir = *f.out_dir;
  return cfg;
}

void print_warnings(const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
}

std::vector<geosci::BibRecord> load_records(const geosci::PipelineConfig& cfg) {
  if (cfg.corpus.empty()) throw geosci::ConfigError("--corpus is required");
  return geosci::load_corpus(cfg.corpus);
}

int cmd_ingest(const std::vector<std::string>& files, const std::string& format,
               const std::vector<std::string>& wos_files,
               const std::vector<std::string>& scopus_files, const std::string& out,
               const std::optional<std::string>& country_table) {
  std::vector<geosci::IngestInput> inputs;
  for (const auto& f : files) inputs.push_back({format, f});
  for (const auto& f : wos_files) inputs.push_back({"wos", f});
  for (const auto& f : scopus_files) inputs.push_back({"scopus", f});
  if (inputs.empty()) throw geosci::ConfigError("no input files given");

  auto outcome = geosci::ingest_files(inputs);
  geosci::save_corpus(outcome.records, out);
  print_warnings(outcome.warnings);

  geosci::CountryTable countries = country_table ? geosci::CountryTable::load(*country_table)
                                                 : geosci::CountryTable::defaults();
  auto stats = geosci::corpus_stats(outcome.records, countries);
  std::cout << geosci::corpus_stats_line(
                   stats, geosci::unique_city_postcode_variants(outcome.records, countries))
            << "\n";
  return kExitOk;
}

int cmd_net(const CommonFlags& flags) {
  auto cfg = merge_config(flags);
  geosci::validate_config(cfg);
  auto records = load_records(cfg);
  std::vector<std::string> warnings;
  auto matrix = geosci::corpus_matrix(records, cfg, &warnings);
  print_warnings(warnings);
  std::filesystem::create_directories(cfg.out_dir);
  geosci::write_matrix(matrix, cfg.out_dir / "matrix.txt");
  if (cfg.cosine) {
    geosci::write_similarity(geosci::cosine_normalize(matrix), cfg.out_dir / "cosine.txt");
  }
  std::cout << "keys " << matrix.size() << ", matrix written to "
            << (cfg.out_dir / "matrix.txt").string() << "\n";
  return kExitOk;
}

int cmd_geocode(const CommonFlags& flags, bool emit_request, bool remote,
                const std::optional<std::string>& ingest_response,
                const std::optional<std::string>& remote_format, int rate_ms, int parallel) {
  auto cfg = merge_config(flags);
  if (remote_format) {
    cfg.remote_format =
        *remote_format == "json" ? geosci::ResponseFormat::json : geosci::ResponseFormat::csv;
  }
  if (rate_ms >= 0) cfg.rate_ms = rate_ms;
  if (parallel > 0) cfg.parallelism = parallel;
  geosci::validate_config(cfg);

  auto records = load_records(cfg);
  auto countries = geosci::load_country_table(cfg);
  geosci::KeyOptions opt{cfg.level, cfg.aggregate};
  auto book = geosci::collect_place_keys(records, opt, countries);
  std::vector<geosci::PlaceKey> keys;
  keys.reserve(book.size());
  for (const auto& [key, place] : book) keys.push_back(place);

  std::filesystem::create_directories(cfg.out_dir);
  geosci::emit_geocode_request(keys, cfg.out_dir / "cities.txt");
  if (emit_request) {
    std::cout << "request file written: " << (cfg.out_dir / "cities.txt").string() << " ("
              << keys.size() << " keys)\n";
    return kExitOk;
  }

  geosci::GeoCache cache(cfg.cache);
  geosci::ResolutionReport report;
  std::vector<std::string> warnings;

  if (ingest_response) {
    std::ifstream csv(*ingest_response);
    if (!csv) throw geosci::IoError("cannot open " + *ingest_response);
    report = geosci::ingest_geocoder_output(csv, keys, countries, &cache, &warnings);
  } else {
    geosci::GeoTable gazetteer;
    bool have_gazetteer = !cfg.gazetteer.empty();
    if (have_gazetteer) gazetteer = geosci::GeoTable::load(cfg.gazetteer);
    std::unique_ptr<geosci::HttpGeocoder> client;
    if (remote) {
      const char* url = std::getenv("GEOSCI_GEOCODER_URL");
      if (!url || !*url) {
        throw geosci::ConfigError("--remote needs GEOSCI_GEOCODER_URL in the environment");
      }
      client = std::make_unique<geosci::HttpGeocoder>(url, cfg.remote_format);
    }
    geosci::ResolveOptions options;
    options.parallelism = cfg.parallelism;
    options.min_request_interval = std::chrono::milliseconds(cfg.rate_ms);
    report = geosci::resolve(keys, have_gazetteer ? &gazetteer : nullptr, &cache, client.get(),
                             countries, options);
  }
  print_warnings(warnings);

  std::ostringstream rep;
  for (const auto& [key, p] : report.resolved) {
    const char* src = p.source == geosci::GeoPoint::Source::gazetteer ? "gazetteer"
                      : p.source == geosci::GeoPoint::Source::cache   ? "cache"
                                                                      : "remote";
    rep << "RESOLVED\t" << key << "\t" << geosci::format_fixed(p.lat, 6) << "\t"
        << geosci::format_fixed(p.lon, 6) << "\t" << src << "\n";
  }
  for (const auto& [key, reason] : report.failures) rep << "FAILED\t" << key << "\t" << reason << "\n";
  for (const auto& m : report.country_mismatches) {
    rep << "MISMATCH\t" << m.key << "\t" << m.parsed_country << "\t" << m.resolved_country << "\n";
  }
  geosci::write_file_atomic(cfg.out_dir / "geocode-report.txt", rep.str());

  std::cout << "resolved " << report.resolved.size() << ", failed " << report.failures.size()
            << ", country mismatches " << report.country_mismatches.size() << "\n";
  for (const auto& [key, reason] : report.failures) {
    std::cerr << "warning: unresolved \"" << key << "\": " << reason << "\n";
  }
  return kExitOk;  // partial failure is a warning, like the workflow tolerates
}

int cmd_analyze(const CommonFlags& flags, const std::optional<int>& k,
                const std::optional<std::string>& region, const std::optional<std::string>& report) {
  auto cfg = merge_config(flags);
  if (k) cfg.k_core = *k;
  if (region) cfg.region = geosci::parse_region(*region);
  geosci::validate_config(cfg);

  auto records = load_records(cfg);
  std::vector<std::string> warnings;
  auto matrix = geosci::corpus_matrix(records, cfg, &warnings);
  auto keys = geosci::matrix_place_keys(records, matrix, cfg);
  auto resolution = geosci::resolve_offline(keys, cfg);
  auto net = geosci::build_network(matrix, resolution, &warnings);
  print_warnings(warnings);

  std::cout << "network: " << net.nodes.size() << " nodes, " << net.links.size() << " links\n";
  if (cfg.region) {
    net = geosci::region_filter(net, *cfg.region);
    std::cout << "region: " << net.nodes.size() << " nodes, " << net.links.size() << " links\n";
  }
  if (cfg.k_core) {
    net = geosci::k_core(net, *cfg.k_core);
    std::cout << "k-core (k=" << *cfg.k_core << "): " << net.nodes.size() << " nodes, "
              << net.links.size() << " links\n";
    for (const auto& n : net.nodes) std::cout << "  " << n.key << " (degree " << n.degree << ")\n";
  }
  auto isolates = geosci::classify_isolates(net);
  std::cout << "connected " << isolates.connected.size() << ", unconnected "
            << isolates.unconnected.size() << "\n";
  if (report && *report == "isolates") {
    for (long i : isolates.unconnected) {
      std::cout << "  isolate: " << net.nodes[static_cast<size_t>(i)].key << "\n";
    }
  }
  return kExitOk;
}

int cmd_build(const CommonFlags& flags, const std::vector<std::string>& exports,
              const std::optional<int>& k, const std::optional<std::string>& region,
              const std::optional<std::string>& coastline,
              const std::optional<std::string>& coastline_coords,
              const std::optional<std::string>& link_color) {
  auto cfg = merge_config(flags);
  if (!exports.empty()) {
    cfg.exports.clear();
    for (const auto& e : exports) {
      for (auto& one : geosci::split(e, ',')) {
        std::string t = geosci::trim(one);
        if (!t.empty()) cfg.exports.push_back(t);
      }
    }
  }
  if (cfg.exports.empty()) cfg.exports = {"kml-earth", "kml-maps", "gps", "pajek"};
  if (k) cfg.k_core = *k;
  if (region) cfg.region = geosci::parse_region(*region);
  if (coastline) cfg.coastline = *coastline;
  if (coastline_coords) {
    cfg.coastline_coords = *coastline_coords == "latlon" ? geosci::CoastCoords::latlon
                                                         : geosci::CoastCoords::unit;
  }
  if (link_color) cfg.link_color = *link_color;
  geosci::validate_config(cfg);

  auto outcome = geosci::run_build(cfg);
  print_warnings(outcome.warnings);
  for (const auto& f : outcome.files) {
    std::cout << "wrote " << (cfg.out_dir / f).string() << "\n";
  }
  std::cout << "manifest: " << (cfg.out_dir / "run-manifest.txt").string() << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"geosci: map bibliographic collaboration networks"};
  app.require_subcommand(1);

  // ingest
  auto* ingest = app.add_subcommand("ingest", "parse WoS/Scopus exports into a corpus file");
  std::vector<std::string> in_files, in_wos, in_scopus;
  std::string in_format = "wos", in_out = "corpus.jsonl";
  std::optional<std::string> in_country;
  ingest->add_option("files", in_files, "export files in --format");
  ingest->add_option("--format", in_format, "format of positional files")
      ->check(CLI::IsMember({"wos", "scopus"}));
  ingest->add_option("--wos", in_wos, "WoS tagged files");
  ingest->add_option("--scopus", in_scopus, "Scopus CSV files");
  ingest->add_option("--out", in_out, "corpus output path");
  ingest->add_option("--country-table", in_country, "country normalization table");

  // net
  auto* net = app.add_subcommand("net", "build occurrence/co-occurrence matrices");
  CommonFlags net_flags;
  add_common(net, net_flags, /*with_matrix_flags=*/true);

  // geocode
  auto* geocode = app.add_subcommand("geocode", "resolve keys to coordinates");
  CommonFlags geo_flags;
  add_common(geocode, geo_flags, /*with_matrix_flags=*/false);
  bool geo_emit = false, geo_remote = false, geo_offline = false;
  std::optional<std::string> geo_response, geo_format;
  int geo_rate = -1, geo_parallel = 0;
  geocode->add_flag("--emit-request", geo_emit, "write cities.txt and stop");
  geocode->add_flag("--offline", geo_offline, "gazetteer + cache only (default)");
  geocode->add_flag("--remote", geo_remote, "also query GEOSCI_GEOCODER_URL");
  geocode->add_option("--ingest-response", geo_response, "geocoder response CSV to ingest");
  geocode->add_option("--remote-format", geo_format, "remote response format: csv|json")
      ->check(CLI::IsMember({"csv", "json"}));
  geocode->add_option("--rate-ms", geo_rate, "min interval between remote requests");
  geocode->add_option("--parallel", geo_parallel, "remote lookup parallelism");

  // analyze
  auto* analyze = app.add_subcommand("analyze", "degree/isolate/k-core reports");
  CommonFlags an_flags;
  add_common(analyze, an_flags, /*with_matrix_flags=*/true);
  std::optional<int> an_k;
  std::optional<std::string> an_region, an_report;
  analyze->add_option("--k-core", an_k, "extract the k-core");
  analyze->add_option("--region", an_region, "bounding box lat1,lat2,lon1,lon2");
  analyze->add_option("--report", an_report, "extra report: isolates")
      ->check(CLI::IsMember({"isolates"}));

  // build
  auto* build = app.add_subcommand("build", "build the network and write export files");
  CommonFlags b_flags;
  add_common(build, b_flags, /*with_matrix_flags=*/true);
  std::vector<std::string> b_exports;
  std::optional<int> b_k;
  std::optional<std::string> b_region, b_coast, b_coast_coords, b_color;
  build->add_option("--export", b_exports,
                    "comma list of kml-earth,kml-maps,kmz,gps,pajek (default all but kmz)");
  build->add_option("--k-core", b_k, "restrict exports to the k-core");
  build->add_option("--region", b_region, "bounding box lat1,lat2,lon1,lon2");
  build->add_option("--coastline", b_coast, "Pajek coastline file to merge");
  build->add_option("--coastline-coords", b_coast_coords, "coastline coordinates: unit|latlon")
      ->check(CLI::IsMember({"unit", "latlon"}));
  build->add_option("--link-color", b_color, "KML link color (aabbggrr)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitFatal;
  }

  try {
    if (ingest->parsed()) {
      return cmd_ingest(in_files, in_format, in_wos, in_scopus, in_out, in_country);
    }
    if (net->parsed()) return cmd_net(net_flags);
    if (geocode->parsed()) {
      return cmd_geocode(geo_flags, geo_emit, geo_remote, geo_response, geo_format, geo_rate,
                         geo_parallel);
    }
    if (analyze->parsed()) return cmd_analyze(an_flags, an_k, an_region, an_report);
    if (build->parsed()) {
      return cmd_build(b_flags, b_exports, b_k, b_region, b_coast, b_coast_coords, b_color);
    }
  } catch (const geosci::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFatal;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFatal;
  }
  return kExitFatal;
}
