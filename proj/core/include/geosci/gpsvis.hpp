#pragma once

#include <filesystem>
#include <string>

#include "geosci/network.hpp"

namespace geosci {

// GPS-Visualizer input file (inp_gps.txt): header
// "name,desc,latitude,longitude,color,scale", one row per node. Connected
// nodes are red, isolates orange; scale is ln(n_i + 1).
std::string gps_visualizer_text(const GeoNetwork& net);
void export_gps_visualizer(const GeoNetwork& net, const std::filesystem::path& path);

}  // namespace geosci
