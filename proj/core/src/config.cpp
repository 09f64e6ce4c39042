#include "geosci/config.hpp"

#include <algorithm>
#include <fstream>

#include "geosci/errors.hpp"
#include "geosci/util.hpp"

namespace geosci {

namespace {

bool parse_bool(const std::string& v) {
  std::string t = to_upper(trim(v));
  if (t == "TRUE" || t == "1" || t == "YES" || t == "ON") return true;
  if (t == "FALSE" || t == "0" || t == "NO" || t == "OFF") return false;
  throw ConfigError("not a boolean: " + v);
}

}  // namespace

BoundingBox parse_region(const std::string& spec) {
  auto parts = split(spec, ',');
  if (parts.size() != 4) throw ConfigError("region needs lat1,lat2,lon1,lon2: " + spec);
  try {
    BoundingBox box;
    box.lat_min = std::stod(trim(parts[0]));
    box.lat_max = std::stod(trim(parts[1]));
    box.lon_min = std::stod(trim(parts[2]));
    box.lon_max = std::stod(trim(parts[3]));
    return box;
  } catch (const std::exception&) {
    throw ConfigError("region needs numeric lat1,lat2,lon1,lon2: " + spec);
  }
}

void apply_config_value(PipelineConfig& cfg, const std::string& key, const std::string& value) {
  std::string k = trim(key);
  std::string v = trim(value);
  try {
    if (k == "corpus") {
      cfg.corpus = v;
    } else if (k == "level") {
      std::string t = to_upper(v);
      if (t == "CITY") cfg.level = KeyLevel::city;
      else if (t == "INST" || t == "INSTITUTION") cfg.level = KeyLevel::institution;
      else throw ConfigError("level must be city or inst: " + v);
    } else if (k == "aggregate") {
      cfg.aggregate = parse_bool(v);
    } else if (k == "counting") {
      std::string t = to_upper(v);
      if (t == "RECORD") cfg.counting = CountingMode::record;
      else if (t == "ADDRESS") cfg.counting = CountingMode::address;
      else throw ConfigError("counting must be record or address: " + v);
    } else if (k == "threshold_abs") {
      cfg.threshold_abs = std::stod(v);
    } else if (k == "threshold_pct") {
      cfg.threshold_pct = std::stod(v);
    } else if (k == "cosine") {
      cfg.cosine = parse_bool(v);
    } else if (k == "k_core") {
      cfg.k_core = std::stoi(v);
    } else if (k == "region") {
      cfg.region = parse_region(v);
    } else if (k == "exports") {
      cfg.exports.clear();
      for (auto& e : split(v, ',')) {
        std::string t = trim(e);
        if (!t.empty()) cfg.exports.push_back(t);
      }
    } else if (k == "gazetteer") {
      cfg.gazetteer = v;
    } else if (k == "cache") {
      cfg.cache = v;
    } else if (k == "coastline") {
      cfg.coastline = v;
    } else if (k == "coastline_coords") {
      std::string t = to_upper(v);
      if (t == "UNIT") cfg.coastline_coords = CoastCoords::unit;
      else if (t == "LATLON") cfg.coastline_coords = CoastCoords::latlon;
      else throw ConfigError("coastline_coords must be unit or latlon: " + v);
    } else if (k == "country_table") {
      cfg.country_table = v;
    } else if (k == "out_dir") {
      cfg.out_dir = v;
    } else if (k == "link_color") {
      cfg.link_color = v;
    } else if (k == "remote_format") {
      std::string t = to_upper(v);
      if (t == "CSV") cfg.remote_format = ResponseFormat::csv;
      else if (t == "JSON") cfg.remote_format = ResponseFormat::json;
      else throw ConfigError("remote_format must be csv or json: " + v);
    } else if (k == "rate_ms") {
      cfg.rate_ms = std::stoi(v);
    } else if (k == "parallelism") {
      cfg.parallelism = std::stoi(v);
    } else {
      throw ConfigError("unknown config key: " + k);
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception&) {
    throw ConfigError("bad value for " + k + ": " + v);
  }
}

PipelineConfig load_config(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw ConfigError("cannot open config " + file.string());
  PipelineConfig cfg;
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(file.string() + ":" + std::to_string(lineno) + ": expected key = value");
    }
    apply_config_value(cfg, line.substr(0, eq), line.substr(eq + 1));
  }
  return cfg;
}

void validate_config(const PipelineConfig& cfg) {
  if (cfg.level == KeyLevel::city && cfg.aggregate) {
    throw ConfigError("aggregate applies to institution level only");
  }
  auto must_exist = [](const std::filesystem::path& p, const char* what) {
    if (!p.empty() && !std::filesystem::exists(p)) {
      throw ConfigError(std::string(what) + " not found: " + p.string());
    }
  };
  must_exist(cfg.corpus, "corpus");
  must_exist(cfg.gazetteer, "gazetteer");
  must_exist(cfg.coastline, "coastline");
  must_exist(cfg.country_table, "country table");
  static const std::vector<std::string> kKnown{"kml-earth", "kml-maps", "kmz", "gps", "pajek"};
  for (const auto& e : cfg.exports) {
    if (std::find(kKnown.begin(), kKnown.end(), e) == kKnown.end()) {
      throw ConfigError("unknown export: " + e);
    }
  }
}

}  // namespace geosci
