#pragma once

#include <string>
#include <vector>

#include "geosci/cooc.hpp"
#include "geosci/geocode.hpp"

namespace geosci {

struct GeoNode {
  std::string key;
  GeoPoint point;
  long occurrence = 0;  // diagonal count n_i
  long degree = 0;      // incident links, unweighted

  bool operator==(const GeoNode&) const = default;
};

struct GeoLink {
  long i = 0;  // node indices, i < j
  long j = 0;
  long weight = 0;  // c_ij

  bool operator==(const GeoLink&) const = default;
};

// Geocoded network ready for export. Nodes stay in the matrix's
// lexicographic key order.
struct GeoNetwork {
  std::vector<GeoNode> nodes;
  std::vector<GeoLink> links;

  bool operator==(const GeoNetwork&) const = default;
};

// Resolved keys become nodes; failed keys are dropped (with a warning) along
// with their links.
GeoNetwork build_network(const CoocMatrix& m, const ResolutionReport& report,
                         std::vector<std::string>* warnings = nullptr);

struct IsolatePartition {
  std::vector<long> connected;    // degree > 0
  std::vector<long> unconnected;  // degree 0
};

IsolatePartition classify_isolates(const GeoNetwork& net);

// Maximal subnetwork in which every node keeps degree >= k (iterative
// deletion until fixpoint).
GeoNetwork k_core(const GeoNetwork& net, int k);

struct BoundingBox {
  double lat_min = -90.0, lat_max = 90.0;
  double lon_min = -180.0, lon_max = 180.0;

  bool contains(double lat, double lon) const {
    return lat >= lat_min && lat <= lat_max && lon >= lon_min && lon <= lon_max;
  }
};

// Nodes inside the box survive; links are restricted and degrees recomputed.
GeoNetwork region_filter(const GeoNetwork& net, const BoundingBox& box);

}  // namespace geosci
