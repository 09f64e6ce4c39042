#pragma once

#include <chrono>
#include <filesystem>
#include <istream>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "geosci/address.hpp"
#include "geosci/country.hpp"

namespace geosci {

struct GeoPoint {
  double lat = 0.0;  // degrees, [-90, 90]
  double lon = 0.0;  // degrees, [-180, 180]
  enum class Source { gazetteer, cache, remote } source = Source::cache;
  std::optional<std::string> resolved_country;

  bool operator==(const GeoPoint&) const = default;
};

inline bool valid_lat_lon(double lat, double lon) {
  return lat >= -90.0 && lat <= 90.0 && lon >= -180.0 && lon <= 180.0;
}

struct GeoEntry {
  double lat = 0.0;
  double lon = 0.0;
  std::string country;  // may be empty
};

// key -> coordinates table, TSV "key<TAB>lat<TAB>lon<TAB>country". Used for
// the user-supplied gazetteer; the cache reuses the same file shape.
class GeoTable {
 public:
  GeoTable() = default;
  static GeoTable load(const std::filesystem::path& file);

  const GeoEntry* find(const std::string& key) const;
  void put(const std::string& key, const GeoEntry& e) { entries_[key] = e; }
  size_t size() const { return entries_.size(); }

 private:
  std::map<std::string, GeoEntry> entries_;
};

// Persistent geocode cache. geocache.tsv is append-friendly (last entry
// wins); authoritative remote misses are remembered in a sibling
// "<stem>.misses.tsv" so a rerun never re-queries them.
class GeoCache {
 public:
  explicit GeoCache(std::filesystem::path file);

  const GeoEntry* find(const std::string& key) const;
  bool known_miss(const std::string& key) const;
  void store(const std::string& key, const GeoEntry& e);
  void store_miss(const std::string& key, const std::string& reason);

  const std::filesystem::path& file() const { return file_; }
  static std::filesystem::path miss_file_for(const std::filesystem::path& cache_file);

 private:
  std::filesystem::path file_;
  std::filesystem::path miss_file_;
  GeoTable table_;
  std::set<std::string> misses_;
  mutable std::mutex mu_;
};

struct CountryMismatch {
  std::string key;
  std::string parsed_country;
  std::string resolved_country;
};

struct ResolutionReport {
  std::map<std::string, GeoPoint> resolved;
  std::vector<std::pair<std::string, std::string>> failures;  // key, reason
  std::vector<CountryMismatch> country_mismatches;
};

// The request line sent for one key: "city, state, postcode, country" with
// absent parts omitted, place names in title case.
std::string geocode_query(const PlaceKey& k);

// cities.txt: one request line per key, sorted by key.
void emit_geocode_request(const std::vector<PlaceKey>& keys, const std::filesystem::path& path);

// Reads a geocoder response CSV (header names at least name, latitude,
// longitude; country honored when present). Rows align to request lines by
// the name column; matches are persisted to the cache and reported with
// source=cache. Throws MalformedCsvError when the header is unusable.
ResolutionReport ingest_geocoder_output(std::istream& csv, const std::vector<PlaceKey>& keys,
                                        const CountryTable& countries, GeoCache* cache,
                                        std::vector<std::string>* warnings = nullptr);

class RemoteGeocoder;

struct ResolveOptions {
  int parallelism = 4;
  std::chrono::milliseconds min_request_interval{200};
};

// Lookup order gazetteer -> cache -> remote; remote successes are persisted
// to the cache, authoritative remote misses to the miss file. Every key ends
// up in exactly one of resolved/failures. Remote lookups run with bounded
// parallelism; the report and all cache writes are in key order.
ResolutionReport resolve(const std::vector<PlaceKey>& keys, const GeoTable* gazetteer,
                         GeoCache* cache, RemoteGeocoder* remote, const CountryTable& countries,
                         const ResolveOptions& options = {});

// Flags keys whose geocoder-reported country disagrees with the parsed one
// (both sides normalized). Keys without a resolved country are not checked.
std::vector<CountryMismatch> check_country_consistency(
    const ResolutionReport& report, const std::map<std::string, std::string>& parsed_countries,
    const CountryTable& countries);

// Haversine great-circle distance, Earth radius 6371.0 km.
double great_circle_km(const GeoPoint& a, const GeoPoint& b);

}  // namespace geosci
