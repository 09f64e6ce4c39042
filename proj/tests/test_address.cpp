#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <set>
#include <sstream>

#include "geosci/address.hpp"
#include "geosci/util.hpp"
#include "geosci/wos.hpp"
#include "support.hpp"

using namespace geosci;

namespace {
const CountryTable& countries() {
  static CountryTable t = CountryTable::defaults();
  return t;
}

ParsedAddress parse_ok(const std::string& text) {
  auto a = parse_address({text, std::nullopt}, countries());
  REQUIRE(a.has_value());
  return *a;
}
}  // namespace

TEST_CASE("full Dutch byline: org, sub-org, postcode prefix, country") {
  auto a = parse_ok("Univ Amsterdam, ASCoR, Kloveniersburgwal 48, NL-1012 CX Amsterdam, Netherlands");
  CHECK(a.organization == "UNIV AMSTERDAM");
  CHECK(a.sub_org == "ASCOR");
  CHECK(a.city == "AMSTERDAM");
  CHECK(a.postcode == "NL-1012 CX");
  CHECK(a.country == "NETHERLANDS");
  CHECK(!a.state.has_value());
}

TEST_CASE("Belgian postcode prefix before the city") {
  auto a = parse_ok("Katholieke Univ Leuven, B-3000 Louvain, Belgium");
  CHECK(a.city == "LOUVAIN");
  CHECK(a.postcode == "B-3000");
  CHECK(a.country == "BELGIUM");
}

TEST_CASE("trailing UK postcode tokens peel off the city") {
  auto a = parse_ok("Isle Man Int Business Sch, Douglas 1M2 1QB, UK");
  CHECK(a.organization == "ISLE MAN INT BUSINESS SCH");
  CHECK(a.city == "DOUGLAS");
  CHECK(a.postcode == "1M2 1QB");
  CHECK(a.country == "UK");
}

TEST_CASE("US state and zip live in the country subfield") {
  auto a = parse_ok("Drexel Univ, Coll Informat Sci & Technol, Philadelphia, PA 19104 USA");
  CHECK(a.city == "PHILADELPHIA");
  CHECK(a.state == "PA");
  CHECK(a.postcode == "19104");
  CHECK(a.country == "USA");
  CHECK(city_key(a) == "PHILADELPHIA, PA, USA");
}

TEST_CASE("Canadian state+postcode subfield walks left to the city") {
  auto a = parse_ok("Univ Quebec, OST, Montreal, PQ H3C 3P8, Canada");
  CHECK(a.city == "MONTREAL");
  CHECK(a.state == "PQ");
  CHECK(a.postcode == "H3C 3P8");
  CHECK(city_key(a) == "MONTREAL, PQ, CANADA");
}

TEST_CASE("Scopus-style United States with separate zip subfield") {
  auto a = parse_ok("Drexel University, Philadelphia, PA 19104, United States");
  CHECK(a.country == "USA");
  CHECK(a.city == "PHILADELPHIA");
  CHECK(a.state == "PA");
}

TEST_CASE("country normalization folds UK constituents") {
  auto a = parse_ok("City Univ London, Dept Informat Sci, London EC1V 0HB, England");
  CHECK(a.country == "UK");
  CHECK(a.city == "LONDON");
  CHECK(a.postcode == "EC1V 0HB");
}

TEST_CASE("city name variants are preserved verbatim, not merged") {
  auto a = parse_ok("KULeuven, Leuven (Heverlee), Belgium");
  CHECK(a.city == "LEUVEN (HEVERLEE)");
  CHECK(city_key(a) == "LEUVEN (HEVERLEE), BELGIUM");
  auto b = parse_ok("KU Leuven, Leuven, Belgium");
  CHECK(city_key(b) == "LEUVEN, BELGIUM");
  CHECK(city_key(a) != city_key(b));
  // two spellings of one institution stay two institution keys
  CHECK(inst_key(parse_ok("KU LEUVEN, Leuven, Belgium"), true) !=
        inst_key(parse_ok("KATHOLIEKE UNIVERSITEIT LEUVEN, Leuven, Belgium"), true));
}

TEST_CASE("postcode standing in for the city is a warning, not a key") {
  std::vector<AddressWarning> warnings;
  auto a = parse_address({"Katholieke Universiteit Leuven, B-3000, Belgium", std::nullopt},
                         countries(), &warnings);
  CHECK(!a.has_value());
  REQUIRE(warnings.size() == 1);
  CHECK(warnings[0].reason.find("city") != std::string::npos);
}

TEST_CASE("fewer than two subfields is unparsable") {
  std::vector<AddressWarning> warnings;
  CHECK(!parse_address({"Leuven", std::nullopt}, countries(), &warnings).has_value());
  CHECK(warnings.size() == 1);
}

TEST_CASE("parse never yields an empty city or country") {
  const char* samples[] = {
      "Univ X, City, Country",
      "A, B-1 C, D",
      "Org, 12345, USA",
      "Org, , Country",
      "X, Town 9 9, Y",
  };
  for (const char* s : samples) {
    auto a = parse_address({s, std::nullopt}, countries());
    if (a) {
      CAPTURE(s);
      CHECK(!a->city.empty());
      CHECK(!a->country.empty());
    }
  }
}

TEST_CASE("key normalization is idempotent") {
  auto a = parse_ok("  Univ   Amsterdam ,  ASCoR ,  NL-1012 CX Amsterdam ,  Netherlands ");
  std::string once = city_key(a);
  CHECK(once == "AMSTERDAM, NETHERLANDS");
  CHECK(to_upper(collapse_ws(once)) == once);  // re-normalizing changes nothing
}

TEST_CASE("aggregation flag controls postcode-level distinctions") {
  auto a1 = parse_ok("CSIC, CINDOC, E-28006 Madrid, Spain");
  auto a2 = parse_ok("CSIC, Inst Catalisis, E-28049 Madrid, Spain");
  auto v = parse_ok("CSIC, INGENIO, E-46022 Valencia, Spain");

  CHECK(inst_key(a1, true) == inst_key(a2, true));    // same org+city merge
  CHECK(inst_key(a1, false) != inst_key(a2, false));  // postcodes keep them apart
  CHECK(inst_key(a1, true) != inst_key(v, true));     // different cities never merge
  CHECK(inst_key(a1, false) != inst_key(v, false));
}

TEST_CASE("effective addresses prefer C1 and fall back to the reprint") {
  BibRecord with_both;
  with_both.addresses = {{"Univ A, City A, Country", std::nullopt},
                         {"Univ B, City B, Country", std::nullopt},
                         {"Univ C, City C, Country", std::nullopt}};
  with_both.reprint_address = RawAddress{"Univ R, City R, Country", std::nullopt};
  CHECK(effective_addresses(with_both, countries()).size() == 3);

  BibRecord only_reprint;
  only_reprint.reprint_address = RawAddress{"Umea Univ, Dept Sociol, SE-90187 Umea, Sweden",
                                            std::nullopt};
  auto eff = effective_addresses(only_reprint, countries());
  REQUIRE(eff.size() == 1);
  CHECK(eff[0].city == "UMEA");

  BibRecord neither;
  CHECK(effective_addresses(neither, countries()).empty());
}

TEST_CASE("non-aggregated institution keys are never fewer than aggregated") {
  std::istringstream in(testsupport::slurp(testsupport::wos_fixture()));
  auto result = parse_wos(in);
  std::set<std::string> agg, noagg;
  for (const auto& r : result.records) {
    for (const auto& a : effective_addresses(r, countries())) {
      agg.insert(inst_key(a, true));
      noagg.insert(inst_key(a, false));
    }
  }
  CHECK(noagg.size() >= agg.size());
  CHECK(noagg.size() == 23);
  CHECK(agg.size() == 22);  // the two Antwerp postcodes merge
}

TEST_CASE("fixture corpus stats match the hand count") {
  std::istringstream in(testsupport::slurp(testsupport::wos_fixture()));
  auto result = parse_wos(in);
  auto stats = corpus_stats(result.records, countries());
  CHECK(stats.n_records == 20);
  CHECK(stats.n_authors == 47);
  CHECK(stats.n_addresses == 45);
  CHECK(stats.n_unique_city_keys == 21);
  CHECK(stats.n_unique_inst_keys == 23);
  CHECK(unique_city_postcode_variants(result.records, countries()) == 22);
  CHECK(stats.n_unique_city_keys <= stats.n_addresses);

  auto empty = corpus_stats({}, countries());
  CHECK(empty.n_records == 0);
  CHECK(empty.n_authors == 0);
  CHECK(empty.n_addresses == 0);
  CHECK(empty.n_unique_city_keys == 0);
  CHECK(empty.n_unique_inst_keys == 0);
}
