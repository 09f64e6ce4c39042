#include "geosci/remote.hpp"

#include <httplib.h>
#include <json.hpp>

#include "geosci/util.hpp"

namespace geosci {

namespace {

std::optional<GeoFix> parse_csv_body(const std::string& body) {
  auto lines = split(body, '\n');
  for (auto& raw : lines) {
    std::string line = trim(raw);
    if (line.empty()) continue;
    auto fields = split(line, ',');
    if (fields.size() < 2) continue;
    try {
      GeoFix fix;
      fix.lat = std::stod(trim(fields[0]));
      fix.lon = std::stod(trim(fields[1]));
      if (fields.size() > 2) fix.country = trim(fields[2]);
      return fix;
    } catch (const std::exception&) {
      continue;  // header line; try the next one
    }
  }
  return std::nullopt;
}

std::optional<GeoFix> parse_json_body(const std::string& body) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(body);
  } catch (const nlohmann::json::exception& e) {
    throw RemoteUnavailable(std::string("unparsable JSON response: ") + e.what());
  }
  if (j.is_array()) {
    if (j.empty()) return std::nullopt;
    j = j.front();
  }
  if (!j.is_object()) return std::nullopt;
  auto num = [&](std::initializer_list<const char*> names) -> std::optional<double> {
    for (const char* n : names) {
      if (j.contains(n)) {
        const auto& v = j[n];
        if (v.is_number()) return v.get<double>();
        if (v.is_string()) {
          try {
            return std::stod(v.get<std::string>());
          } catch (const std::exception&) {
          }
        }
      }
    }
    return std::nullopt;
  };
  auto lat = num({"lat", "latitude"});
  auto lon = num({"lon", "lng", "longitude"});
  if (!lat || !lon) return std::nullopt;
  GeoFix fix{*lat, *lon, {}};
  if (j.contains("country") && j["country"].is_string()) fix.country = j["country"];
  return fix;
}

}  // namespace

std::optional<GeoFix> parse_geocoder_body(const std::string& body, ResponseFormat format) {
  return format == ResponseFormat::csv ? parse_csv_body(body) : parse_json_body(body);
}

HttpGeocoder::HttpGeocoder(std::string url_template, ResponseFormat format)
    : url_template_(std::move(url_template)), format_(format) {
  if (url_template_.find("{query}") == std::string::npos) {
    throw RemoteUnavailable("geocoder url template lacks {query} placeholder: " + url_template_);
  }
}

std::optional<GeoFix> HttpGeocoder::lookup(const std::string& query) {
  std::string url = url_template_;
  auto at = url.find("{query}");
  url.replace(at, 7, url_encode(query));

  auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) throw RemoteUnavailable("bad geocoder url: " + url);
  auto path_start = url.find('/', scheme_end + 3);
  std::string base = path_start == std::string::npos ? url : url.substr(0, path_start);
  std::string path = path_start == std::string::npos ? "/" : url.substr(path_start);

  httplib::Client client(base);
  client.set_connection_timeout(10);
  client.set_read_timeout(30);
  auto res = client.Get(path);
  if (!res) {
    throw RemoteUnavailable("geocoder request failed: " + httplib::to_string(res.error()));
  }
  if (res->status == 404 || res->status == 204) return std::nullopt;
  if (res->status != 200) {
    throw RemoteUnavailable("geocoder returned HTTP " + std::to_string(res->status));
  }
  if (trim(res->body).empty()) return std::nullopt;
  return parse_geocoder_body(res->body, format_);
}

}  // namespace geosci
