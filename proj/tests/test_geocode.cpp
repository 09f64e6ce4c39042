#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <httplib.h>

#include <atomic>
#include <random>
#include <sstream>
#include <thread>

#include "geosci/geocode.hpp"
#include "geosci/remote.hpp"
#include "geosci/util.hpp"
#include "oracle.hpp"
#include "support.hpp"

using namespace geosci;

namespace {

PlaceKey city(const std::string& city_name, const std::string& country,
              const std::string& state = "", const std::string& postcode = "") {
  PlaceKey k;
  k.city = city_name;
  k.state = state;
  k.postcode = postcode;
  k.country = country;
  k.key = city_name + (state.empty() ? "" : ", " + state) + ", " + country;
  return k;
}

const CountryTable& countries() {
  static CountryTable t = CountryTable::defaults();
  return t;
}

// in-process stub geocoder; answers a fixed table, 404 elsewhere
class StubGeocoder {
 public:
  explicit StubGeocoder(std::map<std::string, GeoEntry> table) : table_(std::move(table)) {
    server_.Get("/geocode", [this](const httplib::Request& req, httplib::Response& res) {
      ++requests_;
      auto q = req.get_param_value("q");
      auto it = table_.find(q);
      if (it == table_.end()) {
        res.status = 404;
        return;
      }
      res.set_content(format_fixed(it->second.lat, 6) + "," + format_fixed(it->second.lon, 6) +
                          "," + it->second.country,
                      "text/plain");
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this]() { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~StubGeocoder() {
    server_.stop();
    thread_.join();
  }
  std::string url_template() const {
    return "http://127.0.0.1:" + std::to_string(port_) + "/geocode?q={query}";
  }
  int requests() const { return requests_; }

 private:
  std::map<std::string, GeoEntry> table_;
  httplib::Server server_;
  std::thread thread_;
  int port_ = 0;
  std::atomic<int> requests_{0};
};

}  // namespace

TEST_CASE("request lines are city, state, postcode, country with absent parts omitted") {
  CHECK(geocode_query(city("AMSTERDAM", "NETHERLANDS")) == "Amsterdam, Netherlands");
  CHECK(geocode_query(city("PHILADELPHIA", "USA", "PA")) == "Philadelphia, PA, USA");
  CHECK(geocode_query(city("LEUVEN", "BELGIUM", "", "B-3000")) == "Leuven, B-3000, Belgium");
  CHECK(geocode_query(city("BEIJING", "PEOPLES R CHINA")) == "Beijing, Peoples R China");
  CHECK(geocode_query(city("LEUVEN (HEVERLEE)", "BELGIUM")) == "Leuven (Heverlee), Belgium");
}

TEST_CASE("emit_geocode_request writes one deterministic line per key") {
  testsupport::TempDir tmp("emit");
  std::vector<PlaceKey> keys{city("UMEA", "SWEDEN"), city("AMSTERDAM", "NETHERLANDS")};
  emit_geocode_request(keys, tmp / "cities.txt");
  CHECK(testsupport::slurp(tmp / "cities.txt") == "Amsterdam, Netherlands\nUmea, Sweden\n");

  // 21 fixture keys -> 21 lines
  GeoTable gaz = GeoTable::load(testsupport::gazetteer_file());
  CHECK(gaz.size() == 21);
}

TEST_CASE("geocoder output ingests by name alignment") {
  testsupport::TempDir tmp("ingest");
  GeoCache cache(tmp / "geocache.tsv");
  std::vector<PlaceKey> keys{city("AMSTERDAM", "NETHERLANDS"), city("DOUGLAS", "UK"),
                             city("UMEA", "SWEDEN")};
  std::istringstream csv(
      "name,latitude,longitude,country\n"
      "\"Amsterdam, Netherlands\",52.37,4.89,Netherlands\n"
      "\"Umea, Sweden\",91.0,20.26,Sweden\n"
      "\"Nowhere, Atlantis\",1.0,1.0,Atlantis\n");
  std::vector<std::string> warnings;
  auto report = ingest_geocoder_output(csv, keys, countries(), &cache, &warnings);

  REQUIRE(report.resolved.count("AMSTERDAM, NETHERLANDS") == 1);
  auto& p = report.resolved.at("AMSTERDAM, NETHERLANDS");
  CHECK(p.lat == doctest::Approx(52.37));
  CHECK(p.source == GeoPoint::Source::cache);  // persisted, then reported from cache

  REQUIRE(report.failures.size() == 2);
  CHECK(report.failures[0].first == "DOUGLAS, UK");
  CHECK(report.failures[0].second == "no geocoder row");
  CHECK(report.failures[1].first == "UMEA, SWEDEN");
  CHECK(report.failures[1].second == "out of range");

  REQUIRE(warnings.size() == 1);  // the unmatched Atlantis row
  CHECK(warnings[0].find("unmatched") != std::string::npos);

  // persisted: a fresh cache object sees the hit
  GeoCache reread(tmp / "geocache.tsv");
  CHECK(reread.find("AMSTERDAM, NETHERLANDS") != nullptr);
}

TEST_CASE("malformed geocoder header is fatal") {
  testsupport::TempDir tmp("ingest2");
  GeoCache cache(tmp / "geocache.tsv");
  std::istringstream csv("foo,bar\n1,2\n");
  std::vector<PlaceKey> keys{city("X", "Y")};
  CHECK_THROWS_AS(ingest_geocoder_output(csv, keys, countries(), &cache), MalformedCsvError);
}

TEST_CASE("resolve consults gazetteer first, zero remote calls") {
  testsupport::TempDir tmp("resolve1");
  GeoTable gazetteer;
  gazetteer.put("AMSTERDAM, NETHERLANDS", {52.373, 4.8924, ""});
  GeoCache cache(tmp / "geocache.tsv");
  StubGeocoder stub({});
  HttpGeocoder remote(stub.url_template());

  auto report = resolve({city("AMSTERDAM", "NETHERLANDS")}, &gazetteer, &cache, &remote,
                        countries(), {1, std::chrono::milliseconds(0)});
  REQUIRE(report.resolved.size() == 1);
  CHECK(report.resolved.at("AMSTERDAM, NETHERLANDS").source == GeoPoint::Source::gazetteer);
  CHECK(!report.resolved.at("AMSTERDAM, NETHERLANDS").resolved_country.has_value());
  CHECK(stub.requests() == 0);
}

TEST_CASE("remote success persists; second resolve is served from cache") {
  testsupport::TempDir tmp("resolve2");
  StubGeocoder stub({{"Umea, Sweden", {63.8258, 20.263, "Sweden"}}});
  HttpGeocoder remote(stub.url_template());
  ResolveOptions fast{2, std::chrono::milliseconds(0)};

  {
    GeoCache cache(tmp / "geocache.tsv");
    auto report = resolve({city("UMEA", "SWEDEN")}, nullptr, &cache, &remote, countries(), fast);
    REQUIRE(report.resolved.size() == 1);
    CHECK(report.resolved.at("UMEA, SWEDEN").source == GeoPoint::Source::remote);
    CHECK(stub.requests() == 1);
  }
  {
    GeoCache cache(tmp / "geocache.tsv");
    auto report = resolve({city("UMEA", "SWEDEN")}, nullptr, &cache, &remote, countries(), fast);
    REQUIRE(report.resolved.size() == 1);
    CHECK(report.resolved.at("UMEA, SWEDEN").source == GeoPoint::Source::cache);
    CHECK(stub.requests() == 1);  // cache idempotence
  }
}

TEST_CASE("warm cache makes resolve idempotent, failures included") {
  testsupport::TempDir tmp("resolve3");
  StubGeocoder stub({{"Umea, Sweden", {63.8258, 20.263, "Sweden"}}});
  HttpGeocoder remote(stub.url_template());
  ResolveOptions fast{4, std::chrono::milliseconds(0)};
  std::vector<PlaceKey> keys{city("UMEA", "SWEDEN"), city("DOUGLAS", "UK")};

  GeoCache cache(tmp / "geocache.tsv");
  auto first = resolve(keys, nullptr, &cache, &remote, countries(), fast);
  CHECK(first.resolved.size() == 1);
  REQUIRE(first.failures.size() == 1);
  CHECK(first.failures[0].first == "DOUGLAS, UK");
  int after_first = stub.requests();

  GeoCache warm(tmp / "geocache.tsv");
  auto second = resolve(keys, nullptr, &warm, &remote, countries(), fast);
  CHECK(stub.requests() == after_first);  // zero new remote requests
  CHECK(second.resolved.size() == first.resolved.size());
  REQUIRE(second.failures.size() == 1);
  CHECK(second.failures[0].first == first.failures[0].first);
  CHECK(second.resolved.at("UMEA, SWEDEN").lat ==
        doctest::Approx(first.resolved.at("UMEA, SWEDEN").lat));
}

TEST_CASE("stub answering five keys resolves all five") {
  testsupport::TempDir tmp("resolve4");
  std::map<std::string, GeoEntry> table;
  std::vector<PlaceKey> keys;
  for (int i = 0; i < 5; ++i) {
    std::string name = "CITY" + std::to_string(i);
    keys.push_back(city(name, "COUNTRY"));
    table["City" + std::to_string(i) + ", Country"] = {10.0 + i, 20.0 + i, "Country"};
  }
  StubGeocoder stub(std::move(table));
  HttpGeocoder remote(stub.url_template());
  GeoCache cache(tmp / "geocache.tsv");
  auto report =
      resolve(keys, nullptr, &cache, &remote, countries(), {4, std::chrono::milliseconds(0)});
  CHECK(report.resolved.size() == 5);
  CHECK(report.failures.empty());
  for (int i = 0; i < 5; ++i) {
    CHECK(report.resolved.at("CITY" + std::to_string(i) + ", COUNTRY").lat ==
          doctest::Approx(10.0 + i));
  }
}

TEST_CASE("every key lands in exactly one of resolved/failures") {
  testsupport::TempDir tmp("resolve5");
  GeoCache cache(tmp / "geocache.tsv");
  std::vector<PlaceKey> keys{city("A", "X"), city("B", "X"), city("C", "X")};
  GeoTable gazetteer;
  gazetteer.put("B, X", {1, 2, ""});
  auto report = resolve(keys, &gazetteer, &cache, nullptr, countries());
  CHECK(report.resolved.size() + report.failures.size() == keys.size());
  for (const auto& k : keys) {
    bool in_resolved = report.resolved.count(k.key) > 0;
    bool in_failures = false;
    for (const auto& [fk, reason] : report.failures) in_failures |= fk == k.key;
    CHECK(in_resolved != in_failures);
  }
}

TEST_CASE("country mismatches are flagged but coordinates kept") {
  testsupport::TempDir tmp("mismatch");
  StubGeocoder stub({{"Dalian, Taiwan", {38.914, 121.6147, "China"}},
                     {"Leuven, Belgium", {50.8798, 4.7005, "Belgium"}}});
  HttpGeocoder remote(stub.url_template());
  GeoCache cache(tmp / "geocache.tsv");
  std::vector<PlaceKey> keys{city("DALIAN", "TAIWAN"), city("LEUVEN", "BELGIUM")};
  auto report =
      resolve(keys, nullptr, &cache, &remote, countries(), {2, std::chrono::milliseconds(0)});
  REQUIRE(report.resolved.size() == 2);
  REQUIRE(report.country_mismatches.size() == 1);
  CHECK(report.country_mismatches[0].key == "DALIAN, TAIWAN");
  CHECK(report.country_mismatches[0].parsed_country == "TAIWAN");
  CHECK(report.country_mismatches[0].resolved_country == "PEOPLES R CHINA");
  CHECK(report.resolved.at("DALIAN, TAIWAN").lat == doctest::Approx(38.914));  // kept

  // gazetteer hits carry no resolved country and are never flagged
  GeoTable gazetteer;
  gazetteer.put("DALIAN, TAIWAN", {38.914, 121.6147, "China"});
  auto offline = resolve(keys, &gazetteer, &cache, nullptr, countries());
  for (const auto& m : offline.country_mismatches) CHECK(m.key != "DALIAN, TAIWAN");
}

TEST_CASE("unreachable remote turns keys into failures, not errors") {
  testsupport::TempDir tmp("down");
  GeoCache cache(tmp / "geocache.tsv");
  HttpGeocoder remote("http://127.0.0.1:9/geocode?q={query}");  // nothing listens
  auto report = resolve({city("UMEA", "SWEDEN")}, nullptr, &cache, &remote, countries(),
                        {1, std::chrono::milliseconds(0)});
  REQUIRE(report.failures.size() == 1);
  CHECK(report.failures[0].second.find("remote unavailable") != std::string::npos);
  // transport errors are not negative-cached
  GeoCache reread(tmp / "geocache.tsv");
  CHECK(!reread.known_miss("UMEA, SWEDEN"));
}

TEST_CASE("response body parsers") {
  auto csv = parse_geocoder_body("latitude,longitude,country\n52.37,4.89,Netherlands\n",
                                 ResponseFormat::csv);
  REQUIRE(csv.has_value());
  CHECK(csv->lat == doctest::Approx(52.37));
  CHECK(csv->country == "Netherlands");

  auto json = parse_geocoder_body(R"({"lat": 52.37, "lng": 4.89, "country": "Netherlands"})",
                                  ResponseFormat::json);
  REQUIRE(json.has_value());
  CHECK(json->lon == doctest::Approx(4.89));

  CHECK(!parse_geocoder_body("[]", ResponseFormat::json).has_value());
  CHECK_THROWS_AS(parse_geocoder_body("not json", ResponseFormat::json), RemoteUnavailable);
}

TEST_CASE("haversine distances") {
  GeoPoint a{52.37, 4.89};
  GeoPoint b{63.83, 20.26};
  CHECK(great_circle_km(a, a) == 0.0);
  CHECK(great_circle_km({0, 0}, {0, 180}) == doctest::Approx(20015.086796).epsilon(1e-9));
  // frozen from the independent spherical-law-of-cosines oracle
  CHECK(great_circle_km(a, b) == doctest::Approx(1553.117484).epsilon(1e-7));
  CHECK(std::abs(great_circle_km(a, b) -
                 oracle::great_circle_reference_km(a.lat, a.lon, b.lat, b.lon)) < 0.1);
}

TEST_CASE("haversine symmetry and triangle inequality on random triples") {
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> lat(-90, 90), lon(-180, 180);
  for (int i = 0; i < 300; ++i) {
    GeoPoint a{lat(rng), lon(rng)};
    GeoPoint b{lat(rng), lon(rng)};
    GeoPoint c{lat(rng), lon(rng)};
    double ab = great_circle_km(a, b);
    double ba = great_circle_km(b, a);
    CHECK(std::abs(ab - ba) < 1e-9);
    CHECK(ab <= great_circle_km(a, c) + great_circle_km(c, b) + 1e-9);
  }
}
