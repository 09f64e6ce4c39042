#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "geosci/wos.hpp"
#include "support.hpp"

using namespace geosci;

namespace {

// independent oracle: count C1 bylines by a naive line scan (C1 tag lines
// plus their three-space continuations)
long scan_c1_lines(const std::string& text) {
  long count = 0;
  bool in_c1 = false;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind("C1 ", 0) == 0) {
      in_c1 = true;
      ++count;
    } else if (in_c1 && line.rfind("   ", 0) == 0) {
      ++count;
    } else {
      in_c1 = false;
    }
  }
  return count;
}

long scan_tag_lines(const std::string& text, const std::string& tag) {
  long count = 0;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind(tag + " ", 0) == 0 || line == tag) ++count;
  }
  return count;
}

}  // namespace

TEST_CASE("single record with bracketed author group") {
  std::istringstream in(
      "FN Thomson Reuters Web of Science\nVR 1.0\n"
      "PT J\n"
      "AU Leydesdorff, L\n"
      "SO SCIENTOMETRICS\n"
      "DT Article\n"
      "C1 [Leydesdorff, L] Univ Amsterdam, ASCoR, NL-1012 CX Amsterdam, Netherlands.\n"
      "PY 2009\n"
      "UT ISI:000000001\n"
      "ER\n\nEF\n");
  auto result = parse_wos(in);
  REQUIRE(result.records.size() == 1);
  CHECK(result.skipped.empty());
  const auto& r = result.records[0];
  CHECK(r.record_id == "ISI:000000001");
  CHECK(r.authors == std::vector<std::string>{"Leydesdorff, L"});
  CHECK(r.source == "SCIENTOMETRICS");
  CHECK(r.doc_type == "Article");
  CHECK(r.year == 2009);
  REQUIRE(r.addresses.size() == 1);
  CHECK(r.addresses[0].text == "Univ Amsterdam, ASCoR, NL-1012 CX Amsterdam, Netherlands");
  REQUIRE(r.addresses[0].author_group.has_value());
  CHECK(*r.addresses[0].author_group == std::vector<std::string>{"Leydesdorff, L"});
}

TEST_CASE("record with no C1 keeps the reprint address") {
  std::istringstream in(
      "PT J\n"
      "AU Persson, O\n"
      "RP Persson, O (reprint author), Umea Univ, Dept Sociol, SE-90187 Umea, Sweden.\n"
      "UT X1\nER\nEF\n");
  auto result = parse_wos(in);
  REQUIRE(result.records.size() == 1);
  const auto& r = result.records[0];
  CHECK(r.addresses.empty());
  REQUIRE(r.reprint_address.has_value());
  CHECK(r.reprint_address->text == "Umea Univ, Dept Sociol, SE-90187 Umea, Sweden");
}

TEST_CASE("continuation lines join wrapped values and split multi-line tags") {
  std::istringstream in(
      "PT J\n"
      "AU One, A\n"
      "   Two, B\n"
      "SO JOURNAL OF VERY\n"
      "   LONG TITLES\n"
      "C1 [One, A] Univ X, City A 1000, Country.\n"
      "   [Two, B] Univ Y, City B 2000, Country.\n"
      "UT X1\nER\nEF\n");
  auto result = parse_wos(in);
  REQUIRE(result.records.size() == 1);
  const auto& r = result.records[0];
  CHECK(r.authors == std::vector<std::string>{"One, A", "Two, B"});
  CHECK(r.source == "JOURNAL OF VERY LONG TITLES");
  CHECK(r.addresses.size() == 2);
}

TEST_CASE("malformed records are skipped with line numbers, parsing continues") {
  std::istringstream in(
      "ER\n"
      "PT J\nAU Good, A\nUT G1\nER\n"
      "PT J\nAU Truncated, B\nUT G2\n");  // EOF before ER
  auto result = parse_wos(in);
  REQUIRE(result.records.size() == 1);
  CHECK(result.records[0].record_id == "G1");
  REQUIRE(result.skipped.size() == 2);
  CHECK(result.skipped[0].line == 1);
  CHECK(result.skipped[0].reason.find("ER without") != std::string::npos);
  CHECK(result.skipped[1].line == 6);
  CHECK(result.skipped[1].reason.find("truncated") != std::string::npos);
}

TEST_CASE("PT while a record is open reports the unterminated record") {
  std::istringstream in("PT J\nAU Lost, A\nUT L1\nPT J\nAU Kept, B\nUT K1\nER\nEF\n");
  auto result = parse_wos(in);
  REQUIRE(result.records.size() == 1);
  CHECK(result.records[0].record_id == "K1");
  REQUIRE(result.skipped.size() == 1);
  CHECK(result.skipped[0].line == 1);
}

TEST_CASE("missing UT gets a generated id") {
  std::istringstream in("PT J\nAU A, A\nER\nPT J\nAU B, B\nER\nEF\n");
  auto result = parse_wos(in);
  REQUIRE(result.records.size() == 2);
  CHECK(result.records[0].record_id == "WOS-1");
  CHECK(result.records[1].record_id == "WOS-2");
}

TEST_CASE("invalid UTF-8 bytes are replaced, not fatal") {
  std::string text = "PT J\nAU Gl\xE4nzel, W\nUT U1\nER\nEF\n";  // latin-1 a-umlaut
  std::istringstream in(text);
  auto result = parse_wos(in);
  REQUIRE(result.records.size() == 1);
  CHECK(result.records[0].authors[0].find("\xEF\xBF\xBD") != std::string::npos);
}

TEST_CASE("fixture file parses to the hand-counted totals") {
  std::string text = testsupport::slurp(testsupport::wos_fixture());
  std::istringstream in(text);
  auto result = parse_wos(in);
  CHECK(result.skipped.empty());
  REQUIRE(result.records.size() == 20);
  CHECK(static_cast<long>(result.records.size()) == scan_tag_lines(text, "PT"));

  long total_addresses = 0;
  long total_authors = 0;
  for (const auto& r : result.records) {
    total_addresses += static_cast<long>(r.addresses.size());
    total_authors += static_cast<long>(r.authors.size());
  }
  CHECK(total_addresses == scan_c1_lines(text));  // oracle: naive line scan
  CHECK(total_addresses == 45);
  CHECK(total_authors == 47);
}

TEST_CASE("serialize then re-parse is the identity on records") {
  std::string text = testsupport::slurp(testsupport::wos_fixture());
  std::istringstream in(text);
  auto first = parse_wos(in);
  REQUIRE(first.records.size() == 20);

  std::ostringstream out;
  serialize_wos(first.records, out);
  std::istringstream again(out.str());
  auto second = parse_wos(again);
  CHECK(second.skipped.empty());
  REQUIRE(second.records.size() == first.records.size());
  for (size_t i = 0; i < first.records.size(); ++i) {
    CAPTURE(i);
    CHECK(first.records[i] == second.records[i]);
  }
}
