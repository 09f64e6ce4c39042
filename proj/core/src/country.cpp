#include "geosci/country.hpp"

#include <fstream>

#include "geosci/errors.hpp"
#include "geosci/util.hpp"

namespace geosci {

CountryTable CountryTable::defaults() {
  CountryTable t;
  t.put("ENGLAND", "UK");
  t.put("SCOTLAND", "UK");
  t.put("WALES", "UK");
  t.put("NORTH IRELAND", "UK");
  t.put("NORTHERN IRELAND", "UK");
  t.put("UNITED KINGDOM", "UK");
  t.put("UNITED STATES", "USA");
  t.put("UNITED STATES OF AMERICA", "USA");
  t.put("CHINA", "PEOPLES R CHINA");
  t.put("THE NETHERLANDS", "NETHERLANDS");
  return t;
}

CountryTable CountryTable::load(const std::filesystem::path& file) {
  std::ifstream in(file);
  if (!in) throw IoError("cannot open country table " + file.string());
  CountryTable t = defaults();
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw ConfigError("country table " + file.string() + ":" + std::to_string(lineno) +
                        ": expected FROM<TAB>TO");
    }
    t.put(trim(line.substr(0, tab)), trim(line.substr(tab + 1)));
  }
  return t;
}

void CountryTable::put(std::string_view from, std::string_view to) {
  map_[to_upper(collapse_ws(from))] = to_upper(collapse_ws(to));
}

std::string CountryTable::normalize(std::string_view country) const {
  std::string key = to_upper(collapse_ws(country));
  auto it = map_.find(key);
  return it == map_.end() ? key : it->second;
}

}  // namespace geosci
