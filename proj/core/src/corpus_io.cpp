#include "geosci/corpus_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "geosci/errors.hpp"
#include "geosci/util.hpp"

namespace geosci {

namespace {

using nlohmann::json;

json address_to_json(const RawAddress& a) {
  json j;
  j["text"] = a.text;
  if (a.author_group) j["authors"] = *a.author_group;
  return j;
}

RawAddress address_from_json(const json& j) {
  RawAddress a;
  a.text = j.at("text").get<std::string>();
  if (j.contains("authors")) a.author_group = j["authors"].get<std::vector<std::string>>();
  return a;
}

}  // namespace

void save_corpus(const std::vector<BibRecord>& records, const std::filesystem::path& path) {
  std::ostringstream out;
  for (const auto& r : records) {
    json j;
    j["id"] = r.record_id;
    j["authors"] = r.authors;
    j["source"] = r.source;
    if (r.year) j["year"] = *r.year;
    j["doc_type"] = r.doc_type;
    j["addresses"] = json::array();
    for (const auto& a : r.addresses) j["addresses"].push_back(address_to_json(a));
    if (r.reprint_address) j["reprint"] = address_to_json(*r.reprint_address);
    out << j.dump() << "\n";
  }
  write_file_atomic(path, out.str());
}

std::vector<BibRecord> load_corpus(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open corpus " + path.string());
  std::vector<BibRecord> records;
  std::string line;
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::exception& e) {
      throw MalformedCsvError("corpus " + path.string() + ":" + std::to_string(lineno) + ": " +
                              e.what());
    }
    BibRecord r;
    r.record_id = j.at("id").get<std::string>();
    r.authors = j.at("authors").get<std::vector<std::string>>();
    r.source = j.value("source", std::string{});
    if (j.contains("year")) r.year = j["year"].get<int>();
    r.doc_type = j.value("doc_type", std::string{});
    for (const auto& a : j.at("addresses")) r.addresses.push_back(address_from_json(a));
    if (j.contains("reprint")) r.reprint_address = address_from_json(j["reprint"]);
    records.push_back(std::move(r));
  }
  return records;
}

}  // namespace geosci
