#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>

namespace geosci {

// Country-name normalization table. File format: one "FROM<TAB>TO" pair per
// line, "#" starts a comment. Lookups are case-insensitive; the result is
// uppercased either way.
class CountryTable {
 public:
  // The WoS/Scopus disagreements we normalize out of the box. Users extend
  // or override via a table file.
  static CountryTable defaults();
  static CountryTable load(const std::filesystem::path& file);

  void put(std::string_view from, std::string_view to);
  std::string normalize(std::string_view country) const;

  size_t size() const { return map_.size(); }

 private:
  std::map<std::string, std::string> map_;
};

}  // namespace geosci
