#include "geosci/geocode.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <condition_variable>
#include <fstream>
#include <sstream>
#include <thread>
#include <variant>

#include "geosci/errors.hpp"
#include "geosci/remote.hpp"
#include "geosci/util.hpp"

namespace geosci {

GeoTable GeoTable::load(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw IoError("cannot open geo table " + file.string());
  GeoTable t;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto fields = split(line, '\t');
    if (fields.size() < 3) continue;
    try {
      GeoEntry e;
      e.lat = std::stod(fields[1]);
      e.lon = std::stod(fields[2]);
      if (fields.size() > 3) e.country = trim(fields[3]);
      if (valid_lat_lon(e.lat, e.lon)) t.entries_[trim(fields[0])] = e;
    } catch (const std::exception&) {
      // skip malformed line; the table stays usable
    }
  }
  return t;
}

const GeoEntry* GeoTable::find(const std::string& key) const {
  auto it = entries_.find(key);
  return it == entries_.end() ? nullptr : &it->second;
}

std::filesystem::path GeoCache::miss_file_for(const std::filesystem::path& cache_file) {
  auto p = cache_file;
  p.replace_extension();
  p += ".misses.tsv";
  return p;
}

GeoCache::GeoCache(std::filesystem::path file)
    : file_(std::move(file)), miss_file_(miss_file_for(file_)) {
  if (std::filesystem::exists(file_)) table_ = GeoTable::load(file_);
  if (std::filesystem::exists(miss_file_)) {
    std::ifstream in(miss_file_);
    std::string line;
    while (std::getline(in, line)) {
      auto fields = split(line, '\t');
      if (!fields.empty() && !trim(fields[0]).empty()) misses_.insert(trim(fields[0]));
    }
  }
}

const GeoEntry* GeoCache::find(const std::string& key) const {
  std::lock_guard lock(mu_);
  return table_.find(key);
}

bool GeoCache::known_miss(const std::string& key) const {
  std::lock_guard lock(mu_);
  return misses_.count(key) > 0;
}

void GeoCache::store(const std::string& key, const GeoEntry& e) {
  std::lock_guard lock(mu_);
  table_.put(key, e);
  std::ofstream out(file_, std::ios::app);
  if (!out) throw IoError("cannot append to cache " + file_.string());
  out << key << "\t" << format_fixed(e.lat, 6) << "\t" << format_fixed(e.lon, 6) << "\t"
      << e.country << "\n";
}

void GeoCache::store_miss(const std::string& key, const std::string& reason) {
  std::lock_guard lock(mu_);
  if (!misses_.insert(key).second) return;
  std::ofstream out(miss_file_, std::ios::app);
  if (!out) throw IoError("cannot append to " + miss_file_.string());
  out << key << "\t" << reason << "\n";
}

std::string geocode_query(const PlaceKey& k) {
  std::vector<std::string> parts;
  parts.push_back(title_case_place(k.city));
  if (!k.state.empty()) parts.push_back(k.state);
  if (!k.postcode.empty()) parts.push_back(k.postcode);
  parts.push_back(title_case_place(k.country));
  return join(parts, ", ");
}

namespace {

std::vector<PlaceKey> sorted_by_key(std::vector<PlaceKey> keys) {
  std::sort(keys.begin(), keys.end(),
            [](const PlaceKey& a, const PlaceKey& b) { return a.key < b.key; });
  keys.erase(std::unique(keys.begin(), keys.end(),
                         [](const PlaceKey& a, const PlaceKey& b) { return a.key == b.key; }),
             keys.end());
  return keys;
}

}  // namespace

void emit_geocode_request(const std::vector<PlaceKey>& keys, const std::filesystem::path& path) {
  std::ostringstream out;
  for (const auto& k : sorted_by_key(keys)) out << geocode_query(k) << "\n";
  write_file_atomic(path, out.str());
}

ResolutionReport ingest_geocoder_output(std::istream& csv, const std::vector<PlaceKey>& keys,
                                        const CountryTable& countries, GeoCache* cache,
                                        std::vector<std::string>* warnings) {
  auto header = read_csv_record(csv);
  if (!header) throw MalformedCsvError("geocoder response: empty file");
  auto col = [&](std::initializer_list<const char*> names) -> long {
    for (size_t i = 0; i < header->size(); ++i) {
      std::string h = to_upper(trim((*header)[i]));
      for (const char* n : names) {
        if (h == to_upper(std::string(n))) return static_cast<long>(i);
      }
    }
    return -1;
  };
  long name_col = col({"name"});
  long lat_col = col({"latitude", "lat"});
  long lon_col = col({"longitude", "lon", "lng"});
  long country_col = col({"country"});
  if (name_col < 0 || lat_col < 0 || lon_col < 0) {
    throw MalformedCsvError("geocoder response: header must name name/latitude/longitude");
  }

  auto warn = [&](const std::string& msg) {
    if (warnings) warnings->push_back(msg);
  };

  // request line -> row values; first row wins
  struct Row {
    std::string lat, lon, country;
  };
  std::map<std::string, Row> rows;
  std::map<std::string, std::string> query_of;
  for (const auto& k : keys) query_of[k.key] = geocode_query(k);

  long rowno = 0;
  while (auto fields = read_csv_record(csv)) {
    ++rowno;
    if (fields->size() == 1 && trim((*fields)[0]).empty()) continue;
    size_t needed = static_cast<size_t>(std::max({name_col, lat_col, lon_col}));
    if (fields->size() <= needed) {
      warn("geocoder row " + std::to_string(rowno) + ": too few fields, skipped");
      continue;
    }
    std::string name = trim((*fields)[static_cast<size_t>(name_col)]);
    bool known = false;
    for (const auto& [key, q] : query_of) {
      if (q == name) {
        known = true;
        break;
      }
    }
    if (!known) {
      warn("geocoder row " + std::to_string(rowno) + ": unmatched name \"" + name + "\", skipped");
      continue;
    }
    Row r;
    r.lat = trim((*fields)[static_cast<size_t>(lat_col)]);
    r.lon = trim((*fields)[static_cast<size_t>(lon_col)]);
    if (country_col >= 0 && fields->size() > static_cast<size_t>(country_col)) {
      r.country = trim((*fields)[static_cast<size_t>(country_col)]);
    }
    rows.emplace(name, r);  // first row wins
  }

  ResolutionReport report;
  std::map<std::string, std::string> parsed_countries;
  for (const auto& k : sorted_by_key(keys)) {
    parsed_countries[k.key] = k.country;
    auto it = rows.find(query_of[k.key]);
    if (it == rows.end()) {
      report.failures.emplace_back(k.key, "no geocoder row");
      continue;
    }
    double lat, lon;
    try {
      lat = std::stod(it->second.lat);
      lon = std::stod(it->second.lon);
    } catch (const std::exception&) {
      report.failures.emplace_back(k.key, "unparsable coordinates");
      continue;
    }
    if (!valid_lat_lon(lat, lon)) {
      report.failures.emplace_back(k.key, "out of range");
      continue;
    }
    if (cache) cache->store(k.key, {lat, lon, it->second.country});
    GeoPoint p{lat, lon, GeoPoint::Source::cache, std::nullopt};
    if (!it->second.country.empty()) p.resolved_country = it->second.country;
    report.resolved[k.key] = p;
  }
  report.country_mismatches = check_country_consistency(report, parsed_countries, countries);
  return report;
}

namespace {

// min-interval gate shared by all lookup workers
class RateGate {
 public:
  explicit RateGate(std::chrono::milliseconds interval) : interval_(interval) {}

  void wait_turn() {
    if (interval_.count() <= 0) return;
    std::chrono::steady_clock::time_point slot;
    {
      std::lock_guard lock(mu_);
      auto now = std::chrono::steady_clock::now();
      slot = std::max(now, next_);
      next_ = slot + interval_;
    }
    std::this_thread::sleep_until(slot);
  }

 private:
  std::chrono::milliseconds interval_;
  std::chrono::steady_clock::time_point next_ = std::chrono::steady_clock::now();
  std::mutex mu_;
};

struct RemoteOutcome {
  enum class Kind { hit, miss, error } kind = Kind::error;
  GeoFix fix;
  std::string reason;
};

}  // namespace

ResolutionReport resolve(const std::vector<PlaceKey>& keys, const GeoTable* gazetteer,
                         GeoCache* cache, RemoteGeocoder* remote, const CountryTable& countries,
                         const ResolveOptions& options) {
  ResolutionReport report;
  auto sorted = sorted_by_key(keys);
  std::map<std::string, std::string> parsed_countries;
  std::vector<size_t> pending;  // indices needing a remote lookup

  for (size_t i = 0; i < sorted.size(); ++i) {
    const auto& k = sorted[i];
    parsed_countries[k.key] = k.country;
    if (gazetteer) {
      if (const GeoEntry* e = gazetteer->find(k.key)) {
        report.resolved[k.key] = {e->lat, e->lon, GeoPoint::Source::gazetteer, std::nullopt};
        continue;
      }
    }
    if (cache) {
      if (const GeoEntry* e = cache->find(k.key)) {
        GeoPoint p{e->lat, e->lon, GeoPoint::Source::cache, std::nullopt};
        if (!e->country.empty()) p.resolved_country = e->country;
        report.resolved[k.key] = p;
        continue;
      }
      if (cache->known_miss(k.key)) {
        report.failures.emplace_back(k.key, "cached miss");
        continue;
      }
    }
    if (!remote) {
      report.failures.emplace_back(k.key, "unresolved offline");
      continue;
    }
    pending.push_back(i);
  }

  if (!pending.empty()) {
    std::vector<RemoteOutcome> outcomes(pending.size());
    RateGate gate(options.min_request_interval);
    std::atomic<size_t> next{0};
    int workers = std::clamp<int>(options.parallelism, 1, static_cast<int>(pending.size()));
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&]() {
        while (true) {
          size_t slot = next.fetch_add(1);
          if (slot >= pending.size()) return;
          const PlaceKey& k = sorted[pending[slot]];
          gate.wait_turn();
          RemoteOutcome& out = outcomes[slot];
          try {
            auto fix = remote->lookup(geocode_query(k));
            if (!fix) {
              out.kind = RemoteOutcome::Kind::miss;
              out.reason = "not found";
            } else if (!valid_lat_lon(fix->lat, fix->lon)) {
              out.kind = RemoteOutcome::Kind::miss;
              out.reason = "out of range";
            } else {
              out.kind = RemoteOutcome::Kind::hit;
              out.fix = *fix;
            }
          } catch (const RemoteUnavailable& e) {
            out.kind = RemoteOutcome::Kind::error;
            out.reason = e.what();
          }
        }
      });
    }
    for (auto& t : pool) t.join();

    // persist and report in key order, not completion order
    for (size_t slot = 0; slot < pending.size(); ++slot) {
      const PlaceKey& k = sorted[pending[slot]];
      const RemoteOutcome& out = outcomes[slot];
      switch (out.kind) {
        case RemoteOutcome::Kind::hit: {
          if (cache) cache->store(k.key, {out.fix.lat, out.fix.lon, out.fix.country});
          GeoPoint p{out.fix.lat, out.fix.lon, GeoPoint::Source::remote, std::nullopt};
          if (!out.fix.country.empty()) p.resolved_country = out.fix.country;
          report.resolved[k.key] = p;
          break;
        }
        case RemoteOutcome::Kind::miss:
          if (cache) cache->store_miss(k.key, out.reason);
          report.failures.emplace_back(k.key, out.reason);
          break;
        case RemoteOutcome::Kind::error:
          report.failures.emplace_back(k.key, "remote unavailable: " + out.reason);
          break;
      }
    }
    std::sort(report.failures.begin(), report.failures.end());
  }

  report.country_mismatches = check_country_consistency(report, parsed_countries, countries);
  return report;
}

std::vector<CountryMismatch> check_country_consistency(
    const ResolutionReport& report, const std::map<std::string, std::string>& parsed_countries,
    const CountryTable& countries) {
  std::vector<CountryMismatch> out;
  for (const auto& [key, point] : report.resolved) {
    if (!point.resolved_country) continue;
    auto it = parsed_countries.find(key);
    if (it == parsed_countries.end()) continue;
    std::string parsed = countries.normalize(it->second);
    std::string resolved = countries.normalize(*point.resolved_country);
    if (parsed != resolved) out.push_back({key, parsed, resolved});
  }
  return out;
}

double great_circle_km(const GeoPoint& a, const GeoPoint& b) {
  constexpr double kEarthRadiusKm = 6371.0;
  constexpr double kDegToRad = 3.14159265358979323846 / 180.0;
  double phi1 = a.lat * kDegToRad;
  double phi2 = b.lat * kDegToRad;
  double dphi = (b.lat - a.lat) * kDegToRad;
  double dlambda = (b.lon - a.lon) * kDegToRad;
  double h = std::sin(dphi / 2) * std::sin(dphi / 2) +
             std::cos(phi1) * std::cos(phi2) * std::sin(dlambda / 2) * std::sin(dlambda / 2);
  return 2.0 * kEarthRadiusKm * std::asin(std::min(1.0, std::sqrt(h)));
}

}  // namespace geosci
