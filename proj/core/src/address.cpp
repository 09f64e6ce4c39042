#include "geosci/address.hpp"

#include <cctype>
#include <set>

#include "geosci/util.hpp"

namespace geosci {

namespace {

bool is_alpha_token(const std::string& t) {
  for (char c : t) {
    if (!std::isalpha(static_cast<unsigned char>(c))) return false;
  }
  return !t.empty();
}

bool is_two_letter(const std::string& t) { return t.size() == 2 && is_alpha_token(t); }

bool all_upper(const std::string& t) {
  for (char c : t) {
    if (std::isalpha(static_cast<unsigned char>(c)) && !std::isupper(static_cast<unsigned char>(c)))
      return false;
  }
  return true;
}

// "NL-1012", "B-3000", "SE-90187": national postcode prefix opening a subfield.
bool is_postcode_prefix(const std::string& t) {
  auto dash = t.find('-');
  if (dash == std::string::npos || dash == 0 || dash > 3) return false;
  for (size_t i = 0; i < dash; ++i) {
    if (!std::isalpha(static_cast<unsigned char>(t[i]))) return false;
  }
  return contains_digit(t.substr(dash + 1));
}

struct CityField {
  std::string city;
  std::string postcode;
  std::string state;
};

// Splits one subfield into city/postcode (and a trailing two-letter state for
// US/Canada forms like "Cambridge MA 02139").
CityField split_city_field(const std::string& field, bool us_ca) {
  CityField out;
  auto tokens = split(collapse_ws(field), ' ');
  if (tokens.empty() || tokens[0].empty()) return out;

  if (is_postcode_prefix(tokens[0]) || contains_digit(tokens[0])) {
    size_t i = 1;
    std::vector<std::string> pc{tokens[0]};
    // digit runs and short all-caps tokens ("1012 CX", "901 87") belong to
    // the postcode, but keep at least one token for the city
    while (i + 1 < tokens.size() &&
           (contains_digit(tokens[i]) ||
            (tokens[i].size() <= 3 && is_alpha_token(tokens[i]) && all_upper(tokens[i])))) {
      pc.push_back(tokens[i]);
      ++i;
    }
    out.postcode = join(pc, " ");
    std::vector<std::string> rest(tokens.begin() + static_cast<long>(i), tokens.end());
    out.city = join(rest, " ");
    return out;
  }

  // trailing tokens containing a digit form the postcode
  size_t end = tokens.size();
  while (end > 0 && contains_digit(tokens[end - 1])) --end;
  if (end < tokens.size()) {
    std::vector<std::string> pc(tokens.begin() + static_cast<long>(end), tokens.end());
    out.postcode = join(pc, " ");
  }
  std::vector<std::string> city_tokens(tokens.begin(), tokens.begin() + static_cast<long>(end));
  if (us_ca && city_tokens.size() >= 1 && is_two_letter(city_tokens.back()) &&
      all_upper(city_tokens.back()) && (city_tokens.size() > 1 || !out.postcode.empty())) {
    out.state = city_tokens.back();
    city_tokens.pop_back();
  }
  out.city = join(city_tokens, " ");
  return out;
}

void warn(std::vector<AddressWarning>* warnings, const std::string& text,
          const std::string& reason) {
  if (warnings) warnings->push_back({text, reason});
}

}  // namespace

std::optional<ParsedAddress> parse_address(const RawAddress& raw, const CountryTable& countries,
                                           std::vector<AddressWarning>* warnings) {
  std::vector<std::string> parts;
  for (auto& p : split(raw.text, ',')) {
    std::string t = collapse_ws(trim(p));
    if (!t.empty()) parts.push_back(std::move(t));
  }
  if (parts.size() < 2) {
    warn(warnings, raw.text, "fewer than 2 subfields");
    return std::nullopt;
  }

  ParsedAddress a;
  std::string state, postcode;
  size_t city_idx = parts.size() - 2;

  auto last_tokens = split(parts.back(), ' ');
  std::string last_token_uc = to_upper(last_tokens.back());
  if (last_token_uc == "USA" || last_token_uc == "CANADA") {
    a.country = countries.normalize(last_tokens.back());
    // "PA 19104 USA": state and zip share the country subfield
    if (last_tokens.size() > 1) {
      size_t i = 0;
      if (is_two_letter(last_tokens[0])) {
        state = to_upper(last_tokens[0]);
        i = 1;
      }
      std::vector<std::string> pc(last_tokens.begin() + static_cast<long>(i),
                                  last_tokens.end() - 1);
      postcode = join(pc, " ");
    }
  } else {
    a.country = countries.normalize(parts.back());
  }
  bool us_ca = a.country == "USA" || a.country == "CANADA";

  // walk left until a subfield yields a city name
  CityField cf;
  while (true) {
    cf = split_city_field(parts[city_idx], us_ca && state.empty());
    if (!cf.city.empty()) break;
    if (city_idx <= 1 || (cf.postcode.empty() && cf.state.empty())) break;
    if (postcode.empty()) postcode = cf.postcode;
    if (state.empty()) state = cf.state;
    --city_idx;
  }
  if (cf.city.empty()) {
    warn(warnings, raw.text, "no city name (postcode in place of city)");
    return std::nullopt;
  }
  if (postcode.empty()) postcode = cf.postcode;
  if (state.empty()) state = cf.state;

  a.city = to_upper(cf.city);
  if (!postcode.empty()) a.postcode = to_upper(postcode);
  if (!state.empty()) a.state = to_upper(state);
  a.organization = to_upper(parts[0]);
  if (parts.size() >= 4 && city_idx >= 2) a.sub_org = to_upper(parts[1]);
  if (a.country.empty()) {
    warn(warnings, raw.text, "empty country");
    return std::nullopt;
  }
  return a;
}

std::string city_key(const ParsedAddress& a) {
  if (a.state) return a.city + ", " + *a.state + ", " + a.country;
  return a.city + ", " + a.country;
}

std::string inst_key(const ParsedAddress& a, bool aggregate) {
  if (!aggregate && a.postcode) {
    return a.organization + ", " + a.city + ", " + *a.postcode + ", " + a.country;
  }
  return a.organization + ", " + a.city + ", " + a.country;
}

std::vector<ParsedAddress> effective_addresses(const BibRecord& r, const CountryTable& countries,
                                               std::vector<AddressWarning>* warnings) {
  std::vector<ParsedAddress> out;
  for (const auto& raw : r.addresses) {
    if (auto a = parse_address(raw, countries, warnings)) out.push_back(std::move(*a));
  }
  if (!out.empty()) return out;
  if (r.reprint_address) {
    if (auto a = parse_address(*r.reprint_address, countries, warnings)) out.push_back(std::move(*a));
  }
  return out;
}

std::string key_of(const ParsedAddress& a, const KeyOptions& opt) {
  return opt.level == KeyLevel::city ? city_key(a) : inst_key(a, opt.aggregate);
}

std::vector<std::string> record_keys(const BibRecord& r, const KeyOptions& opt,
                                     const CountryTable& countries,
                                     std::vector<AddressWarning>* warnings) {
  std::vector<std::string> keys;
  for (const auto& a : effective_addresses(r, countries, warnings)) {
    keys.push_back(key_of(a, opt));
  }
  return keys;
}

PlaceKey place_key(const ParsedAddress& a, const KeyOptions& opt) {
  PlaceKey p;
  p.key = key_of(a, opt);
  p.city = a.city;
  p.state = a.state.value_or("");
  p.country = a.country;
  if (opt.level == KeyLevel::institution && !opt.aggregate && a.postcode) p.postcode = *a.postcode;
  return p;
}

std::map<std::string, PlaceKey> collect_place_keys(const std::vector<BibRecord>& records,
                                                   const KeyOptions& opt,
                                                   const CountryTable& countries,
                                                   std::vector<AddressWarning>* warnings) {
  std::map<std::string, PlaceKey> out;
  for (const auto& r : records) {
    for (const auto& a : effective_addresses(r, countries, warnings)) {
      PlaceKey p = place_key(a, opt);
      out.emplace(p.key, p);  // first occurrence wins
    }
  }
  return out;
}

CorpusStats corpus_stats(const std::vector<BibRecord>& records, const CountryTable& countries) {
  CorpusStats s;
  std::set<std::string> cities, insts;
  for (const auto& r : records) {
    ++s.n_records;
    s.n_authors += static_cast<long>(r.authors.size());
    s.n_addresses += static_cast<long>(r.addresses.size());
    for (const auto& a : effective_addresses(r, countries)) {
      cities.insert(city_key(a));
      insts.insert(inst_key(a, /*aggregate=*/false));
    }
  }
  s.n_unique_city_keys = static_cast<long>(cities.size());
  s.n_unique_inst_keys = static_cast<long>(insts.size());
  return s;
}

long unique_city_postcode_variants(const std::vector<BibRecord>& records,
                                   const CountryTable& countries) {
  std::set<std::string> variants;
  for (const auto& r : records) {
    for (const auto& a : effective_addresses(r, countries)) {
      variants.insert(city_key(a) + "\t" + a.postcode.value_or(""));
    }
  }
  return static_cast<long>(variants.size());
}

}  // namespace geosci
