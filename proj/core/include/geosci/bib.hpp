#pragma once

#include <optional>
#include <string>
#include <vector>

namespace geosci {

// One address byline as it appears in the source record.
struct RawAddress {
  std::string text;  // trimmed, no trailing period
  std::optional<std::vector<std::string>> author_group;  // leading "[A; B]" when present

  bool operator==(const RawAddress&) const = default;
};

// Common record model shared by the WoS and Scopus ingestors. Everything
// downstream consumes this; nothing branches on the record's origin.
struct BibRecord {
  std::string record_id;  // WoS UT value, or generated "SCP-<n>"
  std::vector<std::string> authors;
  std::string source;  // journal title
  std::optional<int> year;
  std::string doc_type;
  std::vector<RawAddress> addresses;
  std::optional<RawAddress> reprint_address;

  bool operator==(const BibRecord&) const = default;
};

// A record a parser had to skip, with the line (WoS) or row (Scopus) number.
struct SkippedRecord {
  long line = 0;
  std::string reason;
};

struct CorpusStats {
  long n_records = 0;
  long n_authors = 0;
  long n_addresses = 0;
  long n_unique_city_keys = 0;
  long n_unique_inst_keys = 0;
};

}  // namespace geosci
