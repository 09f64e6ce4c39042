#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "geosci/address.hpp"
#include "geosci/cooc.hpp"
#include "geosci/network.hpp"
#include "geosci/pajek.hpp"
#include "geosci/remote.hpp"

namespace geosci {

// Pipeline settings. File format is plain "key = value" lines with "#"
// comments (keys documented in the README); CLI flags override file values.
// The geocoder endpoint is env-only (GEOSCI_GEOCODER_URL), never config.
struct PipelineConfig {
  std::filesystem::path corpus;
  KeyLevel level = KeyLevel::city;
  bool aggregate = false;
  CountingMode counting = CountingMode::record;
  std::optional<double> threshold_abs;
  std::optional<double> threshold_pct;
  bool cosine = false;
  std::optional<int> k_core;
  std::optional<BoundingBox> region;
  std::vector<std::string> exports;  // kml-earth, kml-maps, kmz, gps, pajek

  std::filesystem::path gazetteer;  // optional
  std::filesystem::path cache = "geocache.tsv";
  std::filesystem::path coastline;  // optional
  CoastCoords coastline_coords = CoastCoords::unit;
  std::filesystem::path country_table;  // optional; defaults compiled in
  std::filesystem::path out_dir = ".";

  std::string link_color = "ff00ffff";
  ResponseFormat remote_format = ResponseFormat::csv;
  int rate_ms = 200;
  int parallelism = 4;
};

// Applies one key=value pair; unknown keys raise ConfigError.
void apply_config_value(PipelineConfig& cfg, const std::string& key, const std::string& value);

PipelineConfig load_config(const std::filesystem::path& file);

// level=city forbids --aggregate; every referenced input path must exist.
void validate_config(const PipelineConfig& cfg);

BoundingBox parse_region(const std::string& spec);  // "lat1,lat2,lon1,lon2"

}  // namespace geosci
