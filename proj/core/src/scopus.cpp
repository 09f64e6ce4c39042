#include "geosci/scopus.hpp"

#include <algorithm>

#include "geosci/errors.hpp"
#include "geosci/util.hpp"

namespace geosci {

namespace {

std::string strip_trailing_period(std::string s) {
  s = trim(s);
  if (!s.empty() && s.back() == '.') s.pop_back();
  return trim(s);
}

std::vector<std::string> split_authors(const std::string& cell) {
  std::vector<std::string> out;
  if (cell.find(';') != std::string::npos) {
    for (auto& a : split(cell, ';')) {
      std::string t = trim(a);
      if (!t.empty()) out.push_back(std::move(t));
    }
    return out;
  }
  // "Surname I., Surname I." form: authors are ", "-separated
  size_t start = 0;
  while (start <= cell.size()) {
    size_t pos = cell.find(", ", start);
    std::string piece = pos == std::string::npos ? cell.substr(start)
                                                 : cell.substr(start, pos - start);
    std::string t = trim(piece);
    if (!t.empty()) out.push_back(std::move(t));
    if (pos == std::string::npos) break;
    start = pos + 2;
  }
  return out;
}

std::optional<RawAddress> correspondence_address(const std::string& cell) {
  std::string v = cell;
  // drop the "; email: ..." tail Scopus appends
  std::string lower;
  lower.reserve(v.size());
  for (char c : v) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  auto at = lower.find("email:");
  if (at != std::string::npos) {
    v = v.substr(0, at);
    v = trim(v);
    while (!v.empty() && (v.back() == ';' || v.back() == ',')) v.pop_back();
  }
  RawAddress addr;
  addr.text = strip_trailing_period(v);
  if (addr.text.empty()) return std::nullopt;
  return addr;
}

}  // namespace

ScopusParseResult parse_scopus(std::istream& in, long id_offset) {
  auto header = read_csv_record(in);
  if (!header) throw MissingColumnError("empty Scopus file: no header row");

  auto canon = [](std::string s) {
    if (s.size() >= 3 && static_cast<unsigned char>(s[0]) == 0xEF &&
        static_cast<unsigned char>(s[1]) == 0xBB && static_cast<unsigned char>(s[2]) == 0xBF) {
      s = s.substr(3);
    }
    std::string t = to_upper(collapse_ws(trim(s)));
    return t;
  };
  auto find_col = [&](const std::string& name) -> long {
    std::string want = canon(name);
    for (size_t i = 0; i < header->size(); ++i) {
      if (canon((*header)[i]) == want) return static_cast<long>(i);
    }
    return -1;
  };

  struct Cols {
    long authors, title, year, source, affiliations, correspondence, doc_type;
  } cols{find_col("Authors"), find_col("Title"),   find_col("Year"),
         find_col("Source title"), find_col("Affiliations"), find_col("Correspondence Address"),
         find_col("Document Type")};
  for (auto [idx, name] : {std::pair{cols.authors, "Authors"}, {cols.title, "Title"},
                           {cols.year, "Year"}, {cols.source, "Source title"},
                           {cols.affiliations, "Affiliations"},
                           {cols.correspondence, "Correspondence Address"}}) {
    if (idx < 0) throw MissingColumnError(std::string("Scopus export lacks column: ") + name);
  }

  ScopusParseResult result;
  long row = 0;
  while (auto fields = read_csv_record(in)) {
    ++row;
    bool all_empty = std::all_of(fields->begin(), fields->end(),
                                 [](const std::string& f) { return trim(f).empty(); });
    if (all_empty) continue;
    if (fields->size() != header->size()) {
      result.skipped.push_back({row, "ragged row: " + std::to_string(fields->size()) +
                                         " fields, header has " + std::to_string(header->size())});
      continue;
    }
    for (auto& f : *fields) f = sanitize_utf8(f);

    BibRecord rec;
    rec.record_id = "SCP-" + std::to_string(id_offset + row);
    rec.authors = split_authors(trim((*fields)[cols.authors]));
    rec.source = collapse_ws((*fields)[cols.source]);
    rec.doc_type = cols.doc_type >= 0 ? collapse_ws((*fields)[cols.doc_type]) : "Article";
    try {
      int y = std::stoi(trim((*fields)[cols.year]));
      if (y > 0) rec.year = y;
    } catch (const std::exception&) {
    }
    for (auto& aff : split((*fields)[cols.affiliations], ';')) {
      std::string t = strip_trailing_period(aff);
      if (!t.empty()) rec.addresses.push_back({collapse_ws(t), std::nullopt});
    }
    rec.reprint_address = correspondence_address(trim((*fields)[cols.correspondence]));
    result.records.push_back(std::move(rec));
  }
  return result;
}

}  // namespace geosci
