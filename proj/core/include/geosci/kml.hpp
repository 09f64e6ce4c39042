#pragma once

#include <filesystem>
#include <string>

#include "geosci/network.hpp"

namespace geosci {

struct KmlOptions {
  // KML colors are aabbggrr; yellow prints better than red
  std::string link_color = "ff00ffff";
  std::string transparent_icon = "http://maps.google.com/mapfiles/transparent.png";
  double scale_min = 0.4;
  double scale_max = 3.0;
  std::string document_name = "geosci network";
};

// Icon scale for the Google Earth variant: ln(n_i + 1) mapped into
// [scale_min, scale_max]; strictly increasing in n_i.
double earth_icon_scale(long occurrence, long max_occurrence, const KmlOptions& opt = {});

// Shared-per-bucket link width: round(1 + 2 * w / w_max).
int link_width(long weight, long max_weight);

// Google Earth variant: per-node icon scale, one LineString per link.
std::string kml_earth(const GeoNetwork& net, const KmlOptions& opt = {});

// Google Maps variant: one fixed transparent icon, no scale elements; links
// identical to the Earth variant.
std::string kml_maps(const GeoNetwork& net, const KmlOptions& opt = {});

void export_kml_earth(const GeoNetwork& net, const std::filesystem::path& path,
                      const KmlOptions& opt = {});
void export_kml_maps(const GeoNetwork& net, const std::filesystem::path& path,
                     const KmlOptions& opt = {});

}  // namespace geosci
