#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "geosci/bib.hpp"
#include "geosci/country.hpp"

namespace geosci {

// Structured byline. Key-relevant fields are uppercased and
// whitespace-collapsed; city and country are never empty on a successful
// parse.
struct ParsedAddress {
  std::string organization;  // first comma-delimited subfield
  std::optional<std::string> sub_org;
  std::string city;
  std::optional<std::string> postcode;
  std::optional<std::string> state;  // US/Canada two-letter
  std::string country;               // normalized

  bool operator==(const ParsedAddress&) const = default;
};

struct AddressWarning {
  std::string text;
  std::string reason;
};

// Splits the byline on commas: last subfield carries the country (with state
// and zip for "CITY, ST ZIP USA" forms), the one before it the city and
// postcode, the first the organization. Unparsable bylines (fewer than two
// subfields, or a postcode standing in for the city) are reported as warnings
// and excluded from keys.
std::optional<ParsedAddress> parse_address(const RawAddress& raw, const CountryTable& countries,
                                           std::vector<AddressWarning>* warnings = nullptr);

// "CITY, COUNTRY", with the state inserted for US/Canada addresses.
std::string city_key(const ParsedAddress& a);

// "ORG, CITY, COUNTRY"; with aggregate=false the postcode is kept in the key
// so distinct street locations of one organization stay distinct.
std::string inst_key(const ParsedAddress& a, bool aggregate);

// The record's addresses when any parse; otherwise the reprint address.
std::vector<ParsedAddress> effective_addresses(const BibRecord& r, const CountryTable& countries,
                                               std::vector<AddressWarning>* warnings = nullptr);

enum class KeyLevel { city, institution };

struct KeyOptions {
  KeyLevel level = KeyLevel::city;
  bool aggregate = false;  // institution level only
};

std::string key_of(const ParsedAddress& a, const KeyOptions& opt);

// One key per effective address, in record order (duplicates kept; counting
// semantics are applied by the co-occurrence engine).
std::vector<std::string> record_keys(const BibRecord& r, const KeyOptions& opt,
                                     const CountryTable& countries,
                                     std::vector<AddressWarning>* warnings = nullptr);

// A key plus the place components a geocoder request needs.
struct PlaceKey {
  std::string key;
  std::string city;
  std::string state;     // empty when absent
  std::string postcode;  // kept only for non-aggregated institution keys
  std::string country;

  bool operator==(const PlaceKey&) const = default;
};

PlaceKey place_key(const ParsedAddress& a, const KeyOptions& opt);

// key -> place parts over the whole corpus, first occurrence wins.
std::map<std::string, PlaceKey> collect_place_keys(const std::vector<BibRecord>& records,
                                                   const KeyOptions& opt,
                                                   const CountryTable& countries,
                                                   std::vector<AddressWarning>* warnings = nullptr);

CorpusStats corpus_stats(const std::vector<BibRecord>& records, const CountryTable& countries);

// Unique (city key, postcode) variants; larger than n_unique_city_keys when
// several postcodes map to one city. Reported next to the plain count.
long unique_city_postcode_variants(const std::vector<BibRecord>& records,
                                   const CountryTable& countries);

}  // namespace geosci
