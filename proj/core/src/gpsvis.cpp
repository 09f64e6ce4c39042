#include "geosci/gpsvis.hpp"

#include <cmath>
#include <sstream>

#include "geosci/util.hpp"

namespace geosci {

std::string gps_visualizer_text(const GeoNetwork& net) {
  std::ostringstream out;
  out << "name,desc,latitude,longitude,color,scale\n";
  for (const auto& n : net.nodes) {
    std::string desc = "papers: " + std::to_string(n.occurrence) +
                       "; links: " + std::to_string(n.degree);
    out << csv_field(n.key) << "," << csv_field(desc) << "," << format_fixed(n.point.lat, 6)
        << "," << format_fixed(n.point.lon, 6) << ","
        << (n.degree > 0 ? "red" : "orange") << ","
        << format_fixed(std::log(static_cast<double>(n.occurrence) + 1.0), 6) << "\n";
  }
  return out.str();
}

void export_gps_visualizer(const GeoNetwork& net, const std::filesystem::path& path) {
  write_file_atomic(path, gps_visualizer_text(net));
}

}  // namespace geosci
