#include "geosci/pajek.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "geosci/errors.hpp"
#include "geosci/transform.hpp"
#include "geosci/util.hpp"

namespace geosci {

namespace {

// tokens of one Pajek line; a quoted run is a single token (quotes stripped)
std::vector<std::string> pajek_tokens(const std::string& line) {
  std::vector<std::string> out;
  size_t i = 0;
  while (i < line.size()) {
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    if (line[i] == '"') {
      auto close = line.find('"', i + 1);
      if (close == std::string::npos) close = line.size();
      out.push_back(line.substr(i + 1, close - i - 1));
      i = close + 1;
    } else {
      size_t start = i;
      while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
      out.push_back(line.substr(start, i - start));
    }
  }
  return out;
}

bool is_number(const std::string& t) {
  if (t.empty()) return false;
  char* end = nullptr;
  std::strtod(t.c_str(), &end);
  return end == t.c_str() + t.size();
}

}  // namespace

PajekFile parse_pajek(std::istream& in) {
  PajekFile file;
  enum class Section { none, vertices, arcs, edges } section = Section::none;
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string t = trim(line);
    if (t.empty() || t[0] == '%') continue;
    if (t[0] == '*') {
      std::string head = to_upper(split(t, ' ')[0]);
      if (head == "*VERTICES") {
        section = Section::vertices;
      } else if (head == "*ARCS") {
        section = Section::arcs;
      } else if (head == "*EDGES") {
        section = Section::edges;
      } else {
        section = Section::none;  // *Network, *Partition, ...
      }
      continue;
    }
    auto tokens = pajek_tokens(t);
    if (section == Section::vertices) {
      if (tokens.empty()) continue;
      PajekFile::Vertex v;
      try {
        v.id = std::stol(tokens[0]);
        size_t at = 1;
        if (at < tokens.size() && !is_number(tokens[at])) {
          v.label = tokens[at];
          ++at;
        } else if (at < tokens.size() && tokens.size() >= at + 4 && is_number(tokens[at]) &&
                   line.find('"') != std::string::npos) {
          // quoted numeric label
          v.label = tokens[at];
          ++at;
        }
        if (at + 1 >= tokens.size()) {
          throw MalformedNetError("pajek line " + std::to_string(lineno) +
                                  ": vertex needs x and y");
        }
        v.x = std::stod(tokens[at]);
        v.y = std::stod(tokens[at + 1]);
        at += 2;
        if (at < tokens.size() && is_number(tokens[at])) {
          v.z = std::stod(tokens[at]);
          ++at;
        }
        while (at + 1 < tokens.size()) {
          if (to_upper(tokens[at]) == "X_FACT" && is_number(tokens[at + 1])) {
            v.size_factor = std::stod(tokens[at + 1]);
          }
          at += 2;
        }
      } catch (const MalformedNetError&) {
        throw;
      } catch (const std::exception&) {
        throw MalformedNetError("pajek line " + std::to_string(lineno) + ": bad vertex: " + t);
      }
      file.vertices.push_back(std::move(v));
    } else if (section == Section::arcs || section == Section::edges) {
      if (tokens.size() < 2) {
        throw MalformedNetError("pajek line " + std::to_string(lineno) + ": bad link: " + t);
      }
      try {
        long a = std::stol(tokens[0]);
        long b = std::stol(tokens[1]);
        double w = tokens.size() > 2 ? std::stod(tokens[2]) : 1.0;
        (section == Section::arcs ? file.arcs : file.edges).emplace_back(a, b, w);
      } catch (const std::exception&) {
        throw MalformedNetError("pajek line " + std::to_string(lineno) + ": bad link: " + t);
      }
    }
  }
  return file;
}

Coastline load_coastline(const std::filesystem::path& path, CoastCoords coords) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open coastline " + path.string());
  PajekFile file = parse_pajek(in);
  Coastline coast;
  coast.points.reserve(file.vertices.size());
  for (const auto& v : file.vertices) {
    double lat, lon;
    if (coords == CoastCoords::unit) {
      from_unit(v.x, v.y, lat, lon);
    } else {
      lon = v.x;
      lat = v.y;
    }
    coast.points.emplace_back(lat, lon);
  }
  long n = static_cast<long>(coast.points.size());
  auto add_segment = [&](long a, long b) {
    if (a < 1 || a > n || b < 1 || b > n) {
      throw MalformedNetError("coastline " + path.string() + ": vertex index out of range (" +
                              std::to_string(a) + "," + std::to_string(b) + ")");
    }
    coast.segments.emplace_back(a - 1, b - 1);
  };
  for (const auto& [a, b, w] : file.edges) add_segment(a, b);
  for (const auto& [a, b, w] : file.arcs) add_segment(a, b);
  return coast;
}

std::string pajek_project(const GeoNetwork& net, const Coastline* coastline) {
  std::ostringstream out;
  long n_data = static_cast<long>(net.nodes.size());
  long n_coast = coastline ? static_cast<long>(coastline->points.size()) : 0;
  out << "*Network geosci\n";
  out << "*Vertices " << (n_data + n_coast) << "\n";
  for (long i = 0; i < n_data; ++i) {
    const auto& node = net.nodes[static_cast<size_t>(i)];
    UnitXY u = to_unit(node.point.lat, node.point.lon);
    std::string size = format_fixed(std::log(static_cast<double>(node.occurrence) + 1.0), 6);
    out << (i + 1) << " \"" << node.key << "\" " << format_fixed(u.x, 6) << " "
        << format_fixed(u.y, 6) << " 0.5 x_fact " << size << " y_fact " << size << "\n";
  }
  if (coastline) {
    for (long p = 0; p < n_coast; ++p) {
      const auto& [lat, lon] = coastline->points[static_cast<size_t>(p)];
      UnitXY u = to_unit(lat, lon);
      out << (n_data + p + 1) << " " << format_fixed(u.x, 6) << " " << format_fixed(u.y, 6)
          << " 0.5\n";
    }
  }
  out << "*Arcs\n";
  for (const auto& l : net.links) {
    out << (l.i + 1) << " " << (l.j + 1) << " " << l.weight << "\n";
  }
  if (coastline) {
    out << "*Edges\n";
    for (const auto& [a, b] : coastline->segments) {
      out << (n_data + a + 1) << " " << (n_data + b + 1) << " 1\n";
    }
  }
  return out.str();
}

void export_pajek(const GeoNetwork& net, const Coastline* coastline,
                  const std::filesystem::path& path) {
  write_file_atomic(path, pajek_project(net, coastline));
}

}  // namespace geosci
