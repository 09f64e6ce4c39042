#include "geosci/network.hpp"

#include <algorithm>

namespace geosci {

namespace {

// subnetwork restricted to the nodes with keep[i] set; degrees recomputed
GeoNetwork restrict_to(const GeoNetwork& net, const std::vector<bool>& keep) {
  GeoNetwork out;
  std::vector<long> remap(net.nodes.size(), -1);
  for (size_t i = 0; i < net.nodes.size(); ++i) {
    if (keep[i]) {
      remap[i] = static_cast<long>(out.nodes.size());
      GeoNode n = net.nodes[i];
      n.degree = 0;
      out.nodes.push_back(std::move(n));
    }
  }
  for (const auto& l : net.links) {
    long a = remap[static_cast<size_t>(l.i)];
    long b = remap[static_cast<size_t>(l.j)];
    if (a < 0 || b < 0) continue;
    out.links.push_back({a, b, l.weight});
    ++out.nodes[static_cast<size_t>(a)].degree;
    ++out.nodes[static_cast<size_t>(b)].degree;
  }
  return out;
}

}  // namespace

GeoNetwork build_network(const CoocMatrix& m, const ResolutionReport& report,
                         std::vector<std::string>* warnings) {
  GeoNetwork net;
  std::vector<long> remap(static_cast<size_t>(m.size()), -1);
  for (long i = 0; i < m.size(); ++i) {
    const std::string& key = m.keys()[static_cast<size_t>(i)];
    auto it = report.resolved.find(key);
    if (it == report.resolved.end()) {
      if (warnings) warnings->push_back("dropped \"" + key + "\": no coordinates");
      continue;
    }
    remap[static_cast<size_t>(i)] = static_cast<long>(net.nodes.size());
    net.nodes.push_back({key, it->second, m.occurrence(i), 0});
  }
  for (long i = 0; i < m.size(); ++i) {
    for (long j = i + 1; j < m.size(); ++j) {
      long w = m.at(i, j);
      if (w <= 0) continue;
      long a = remap[static_cast<size_t>(i)];
      long b = remap[static_cast<size_t>(j)];
      if (a < 0 || b < 0) continue;
      net.links.push_back({a, b, w});
      ++net.nodes[static_cast<size_t>(a)].degree;
      ++net.nodes[static_cast<size_t>(b)].degree;
    }
  }
  return net;
}

IsolatePartition classify_isolates(const GeoNetwork& net) {
  IsolatePartition p;
  for (size_t i = 0; i < net.nodes.size(); ++i) {
    (net.nodes[i].degree == 0 ? p.unconnected : p.connected).push_back(static_cast<long>(i));
  }
  return p;
}

GeoNetwork k_core(const GeoNetwork& net, int k) {
  if (k <= 0) return net;
  std::vector<bool> alive(net.nodes.size(), true);
  std::vector<long> degree(net.nodes.size(), 0);
  bool changed = true;
  while (changed) {
    changed = false;
    std::fill(degree.begin(), degree.end(), 0);
    for (const auto& l : net.links) {
      if (alive[static_cast<size_t>(l.i)] && alive[static_cast<size_t>(l.j)]) {
        ++degree[static_cast<size_t>(l.i)];
        ++degree[static_cast<size_t>(l.j)];
      }
    }
    for (size_t i = 0; i < alive.size(); ++i) {
      if (alive[i] && degree[i] < k) {
        alive[i] = false;
        changed = true;
      }
    }
  }
  return restrict_to(net, alive);
}

GeoNetwork region_filter(const GeoNetwork& net, const BoundingBox& box) {
  std::vector<bool> keep(net.nodes.size());
  for (size_t i = 0; i < net.nodes.size(); ++i) {
    keep[i] = box.contains(net.nodes[i].point.lat, net.nodes[i].point.lon);
  }
  return restrict_to(net, keep);
}

}  // namespace geosci
