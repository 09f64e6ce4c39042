#pragma once

#include <optional>
#include <string>

#include "geosci/errors.hpp"

namespace geosci {

// The remote endpoint could not be reached or answered garbage; affected
// keys become failures and the pipeline continues.
class RemoteUnavailable : public Error {
 public:
  using Error::Error;
};

struct GeoFix {
  double lat = 0.0;
  double lon = 0.0;
  std::string country;  // may be empty
};

class RemoteGeocoder {
 public:
  virtual ~RemoteGeocoder() = default;
  // nullopt means the service answered authoritatively with no result.
  // Transport or protocol trouble throws RemoteUnavailable.
  virtual std::optional<GeoFix> lookup(const std::string& query) = 0;
};

enum class ResponseFormat { csv, json };

// HTTP GET against a url template containing "{query}". The long-dead
// geocoders the workflow originally used are not hardcoded anywhere; point
// GEOSCI_GEOCODER_URL at whatever service answers in one of the two formats:
//   csv:  "lat,lon[,country]" (an optional header line is skipped)
//   json: object with lat/latitude, lon/lng/longitude, country keys
class HttpGeocoder final : public RemoteGeocoder {
 public:
  explicit HttpGeocoder(std::string url_template, ResponseFormat format = ResponseFormat::csv);
  std::optional<GeoFix> lookup(const std::string& query) override;

 private:
  std::string url_template_;
  ResponseFormat format_;
};

// Exposed for tests: parses a geocoder response body.
std::optional<GeoFix> parse_geocoder_body(const std::string& body, ResponseFormat format);

}  // namespace geosci
