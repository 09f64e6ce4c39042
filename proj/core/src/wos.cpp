#include "geosci/wos.hpp"

#include <cctype>

#include "geosci/util.hpp"

namespace geosci {

namespace {

bool is_tag_line(const std::string& line) {
  if (line.size() < 2) return false;
  auto tagchar = [](char c) {
    return std::isupper(static_cast<unsigned char>(c)) || std::isdigit(static_cast<unsigned char>(c));
  };
  if (!tagchar(line[0]) || !tagchar(line[1])) return false;
  return line.size() == 2 || line[2] == ' ';
}

std::string strip_trailing_period(std::string s) {
  s = trim(s);
  if (!s.empty() && s.back() == '.') s.pop_back();
  return trim(s);
}

// One physical C1 line -> one address; a leading "[A; B]" bracket group
// becomes the author group.
std::optional<RawAddress> parse_address_line(const std::string& value) {
  std::string v = trim(value);
  RawAddress addr;
  if (!v.empty() && v.front() == '[') {
    auto close = v.find(']');
    if (close != std::string::npos) {
      std::vector<std::string> names;
      for (auto& n : split(v.substr(1, close - 1), ';')) {
        std::string t = trim(n);
        if (!t.empty()) names.push_back(std::move(t));
      }
      addr.author_group = std::move(names);
      v = v.substr(close + 1);
    }
  }
  addr.text = strip_trailing_period(v);
  if (addr.text.empty()) return std::nullopt;
  return addr;
}

RawAddress parse_reprint(const std::string& value) {
  static const std::string kMarker = "(reprint author),";
  std::string v = trim(value);
  auto pos = v.find(kMarker);
  if (pos != std::string::npos) v = v.substr(pos + kMarker.size());
  RawAddress addr;
  addr.text = strip_trailing_period(v);
  return addr;
}

struct RecordBuilder {
  BibRecord rec;
  std::string reprint_raw;
  long start_line = 0;
  bool open = false;

  void reset(long line) {
    rec = BibRecord{};
    reprint_raw.clear();
    start_line = line;
    open = true;
  }
};

}  // namespace

WosParseResult parse_wos(std::istream& in) {
  WosParseResult result;
  RecordBuilder b;
  std::string line;
  std::string cur_tag;
  long lineno = 0;
  bool saw_ef = false;

  auto finalize = [&]() {
    if (!b.reprint_raw.empty()) {
      RawAddress rp = parse_reprint(b.reprint_raw);
      if (!rp.text.empty()) b.rec.reprint_address = std::move(rp);
    }
    result.records.push_back(std::move(b.rec));
    b.open = false;
  };

  while (!saw_ef && std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    line = sanitize_utf8(line);
    if (trim(line).empty()) {
      cur_tag.clear();
      continue;
    }

    bool continuation = line.rfind("   ", 0) == 0;
    std::string tag;
    std::string value;
    if (continuation && !cur_tag.empty()) {
      tag = cur_tag;
      value = trim(line);
    } else if (is_tag_line(line)) {
      tag = line.substr(0, 2);
      value = line.size() > 3 ? trim(line.substr(3)) : "";
      cur_tag = tag;
    } else {
      // Neither a tag nor a continuation of one; stray line.
      continue;
    }

    if (tag == "FN" || tag == "VR") continue;
    if (tag == "EF") {
      saw_ef = true;
      break;
    }
    if (tag == "PT") {
      if (b.open) {
        result.skipped.push_back({b.start_line, "record missing ER (next PT at line " +
                                                    std::to_string(lineno) + ")"});
      }
      b.reset(lineno);
      continue;
    }
    if (tag == "ER") {
      if (!b.open) {
        result.skipped.push_back({lineno, "ER without preceding PT"});
      } else {
        finalize();
      }
      cur_tag.clear();
      continue;
    }
    if (!b.open) continue;

    if (tag == "AU") {
      std::string name = trim(value);
      if (!name.empty()) b.rec.authors.push_back(std::move(name));
    } else if (tag == "C1") {
      if (auto addr = parse_address_line(value)) b.rec.addresses.push_back(std::move(*addr));
    } else if (tag == "RP") {
      if (continuation && !b.reprint_raw.empty()) {
        b.reprint_raw += " " + value;
      } else if (b.reprint_raw.empty()) {
        b.reprint_raw = value;
      }
    } else if (tag == "SO") {
      if (!b.rec.source.empty()) b.rec.source += " ";
      b.rec.source += value;
    } else if (tag == "DT") {
      if (!b.rec.doc_type.empty()) b.rec.doc_type += " ";
      b.rec.doc_type += value;
    } else if (tag == "PY") {
      try {
        int y = std::stoi(value);
        if (y > 0) b.rec.year = y;
      } catch (const std::exception&) {
        // non-numeric PY: leave year absent
      }
    } else if (tag == "UT") {
      if (b.rec.record_id.empty()) b.rec.record_id = trim(value);
    }
    // other tags (TI, AB, CR, ...) are consumed and ignored
  }

  if (b.open) {
    result.skipped.push_back({b.start_line, "truncated record (EOF before ER)"});
  }

  long seq = 0;
  for (auto& r : result.records) {
    ++seq;
    if (r.record_id.empty()) r.record_id = "WOS-" + std::to_string(seq);
  }
  return result;
}

void serialize_wos(const std::vector<BibRecord>& records, std::ostream& out) {
  out << "FN geosci corpus export\nVR 1.0\n";
  for (const auto& r : records) {
    out << "PT J\n";
    for (size_t i = 0; i < r.authors.size(); ++i) {
      out << (i == 0 ? "AU " : "   ") << r.authors[i] << "\n";
    }
    if (!r.source.empty()) out << "SO " << r.source << "\n";
    if (!r.doc_type.empty()) out << "DT " << r.doc_type << "\n";
    for (size_t i = 0; i < r.addresses.size(); ++i) {
      const auto& a = r.addresses[i];
      out << (i == 0 ? "C1 " : "   ");
      if (a.author_group) out << "[" << join(*a.author_group, "; ") << "] ";
      out << a.text << ".\n";
    }
    if (r.reprint_address) out << "RP " << r.reprint_address->text << ".\n";
    if (r.year) out << "PY " << *r.year << "\n";
    out << "UT " << r.record_id << "\n";
    out << "ER\n\n";
  }
  out << "EF\n";
}

}  // namespace geosci
