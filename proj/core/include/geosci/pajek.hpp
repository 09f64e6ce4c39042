#pragma once

#include <filesystem>
#include <istream>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "geosci/network.hpp"

namespace geosci {

// Coastline polylines for the map overlay.
struct Coastline {
  std::vector<std::pair<double, double>> points;  // (lat, lon)
  std::vector<std::pair<long, long>> segments;    // 0-based point indices
};

// Whether a coastline file stores unit-square drawing coordinates or plain
// lat/lon pairs.
enum class CoastCoords { unit, latlon };

// Loads a Pajek-format coastline (vertices + edges). Vertex indices out of
// range raise MalformedNetError.
Coastline load_coastline(const std::filesystem::path& path,
                         CoastCoords coords = CoastCoords::unit);

// Pajek project: data vertices ('id "label" x y 0.5' with an
// x_fact/y_fact size pair of ln(n_i+1)) and data links under *Arcs; when a
// coastline is given its points are appended as label-less vertices and its
// segments written under *Edges with weight 1, one merged network.
std::string pajek_project(const GeoNetwork& net, const Coastline* coastline = nullptr);
void export_pajek(const GeoNetwork& net, const Coastline* coastline,
                  const std::filesystem::path& path);

// Raw Pajek structure, used for lossless round-trips and coastline input.
struct PajekFile {
  struct Vertex {
    long id = 0;  // 1-based
    std::string label;
    double x = 0.0, y = 0.0, z = 0.0;
    std::optional<double> size_factor;  // x_fact value when present
  };
  std::vector<Vertex> vertices;
  std::vector<std::tuple<long, long, double>> arcs;   // 1-based ids
  std::vector<std::tuple<long, long, double>> edges;  // 1-based ids
};

PajekFile parse_pajek(std::istream& in);

}  // namespace geosci
