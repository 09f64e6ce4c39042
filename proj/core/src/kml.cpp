#include "geosci/kml.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "geosci/util.hpp"

namespace geosci {

double earth_icon_scale(long occurrence, long max_occurrence, const KmlOptions& opt) {
  double denom = std::log(static_cast<double>(std::max<long>(max_occurrence, 1)) + 1.0);
  double frac = denom > 0 ? std::log(static_cast<double>(occurrence) + 1.0) / denom : 1.0;
  return opt.scale_min + (opt.scale_max - opt.scale_min) * frac;
}

int link_width(long weight, long max_weight) {
  if (max_weight <= 0) return 1;
  return static_cast<int>(
      std::lround(1.0 + 2.0 * static_cast<double>(weight) / static_cast<double>(max_weight)));
}

namespace {

std::string coord(const GeoPoint& p) {
  return format_fixed(p.lon, 6) + "," + format_fixed(p.lat, 6) + ",0";
}

long max_link_weight(const GeoNetwork& net) {
  long w = 0;
  for (const auto& l : net.links) w = std::max(w, l.weight);
  return w;
}

long max_occurrence(const GeoNetwork& net) {
  long n = 0;
  for (const auto& node : net.nodes) n = std::max(n, node.occurrence);
  return n;
}

void append_link_styles(std::ostringstream& out, const GeoNetwork& net, const KmlOptions& opt) {
  long w_max = max_link_weight(net);
  std::set<int> widths;
  for (const auto& l : net.links) widths.insert(link_width(l.weight, w_max));
  for (int w : widths) {
    out << "  <Style id=\"link-w" << w << "\"><LineStyle><color>" << xml_escape(opt.link_color)
        << "</color><width>" << w << "</width></LineStyle></Style>\n";
  }
}

void append_links(std::ostringstream& out, const GeoNetwork& net) {
  long w_max = max_link_weight(net);
  for (const auto& l : net.links) {
    const auto& a = net.nodes[static_cast<size_t>(l.i)];
    const auto& b = net.nodes[static_cast<size_t>(l.j)];
    out << "  <Placemark>\n"
        << "    <name>" << xml_escape(a.key + " - " + b.key) << "</name>\n"
        << "    <description>" << xml_escape(a.key + " - " + b.key) << "; co-occurrences: "
        << l.weight << "</description>\n"
        << "    <styleUrl>#link-w" << link_width(l.weight, w_max) << "</styleUrl>\n"
        << "    <LineString><coordinates>" << coord(a.point) << " " << coord(b.point)
        << "</coordinates></LineString>\n"
        << "  </Placemark>\n";
  }
}

std::string document(const GeoNetwork& net, const KmlOptions& opt, bool earth_variant) {
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<kml xmlns=\"http://www.opengis.net/kml/2.2\">\n"
      << "<Document>\n"
      << "  <name>" << xml_escape(opt.document_name) << "</name>\n";
  if (!earth_variant) {
    out << "  <Style id=\"node\"><IconStyle><Icon><href>" << xml_escape(opt.transparent_icon)
        << "</href></Icon></IconStyle></Style>\n";
  }
  append_link_styles(out, net, opt);
  long n_max = max_occurrence(net);
  for (const auto& node : net.nodes) {
    out << "  <Placemark>\n"
        << "    <name>" << xml_escape(node.key) << "</name>\n"
        << "    <description>" << xml_escape(node.key) << "; papers: " << node.occurrence
        << "; links: " << node.degree << "</description>\n";
    if (earth_variant) {
      out << "    <Style><IconStyle><scale>"
          << format_fixed(earth_icon_scale(node.occurrence, n_max, opt), 6)
          << "</scale></IconStyle></Style>\n";
    } else {
      out << "    <styleUrl>#node</styleUrl>\n";
    }
    out << "    <Point><coordinates>" << coord(node.point) << "</coordinates></Point>\n"
        << "  </Placemark>\n";
  }
  append_links(out, net);
  out << "</Document>\n</kml>\n";
  return out.str();
}

}  // namespace

std::string kml_earth(const GeoNetwork& net, const KmlOptions& opt) {
  return document(net, opt, /*earth_variant=*/true);
}

std::string kml_maps(const GeoNetwork& net, const KmlOptions& opt) {
  return document(net, opt, /*earth_variant=*/false);
}

void export_kml_earth(const GeoNetwork& net, const std::filesystem::path& path,
                      const KmlOptions& opt) {
  write_file_atomic(path, kml_earth(net, opt));
}

void export_kml_maps(const GeoNetwork& net, const std::filesystem::path& path,
                     const KmlOptions& opt) {
  write_file_atomic(path, kml_maps(net, opt));
}

}  // namespace geosci
