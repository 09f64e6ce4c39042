#include "geosci/kmz.hpp"

#include <zlib.h>

#include <cstdint>
#include <cstring>
#include <vector>

#include "geosci/errors.hpp"
#include "geosci/util.hpp"

namespace geosci {

namespace {

constexpr uint32_t kLocalSig = 0x04034b50;
constexpr uint32_t kCentralSig = 0x02014b50;
constexpr uint32_t kEndSig = 0x06054b50;
// fixed DOS timestamp 1980-01-01 00:00:00 keeps archives reproducible
constexpr uint16_t kDosTime = 0;
constexpr uint16_t kDosDate = 0x0021;

void put16(std::string& out, uint16_t v) {
  out.push_back(static_cast<char>(v & 0xFF));
  out.push_back(static_cast<char>((v >> 8) & 0xFF));
}

void put32(std::string& out, uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
}

uint16_t get16(const std::string& s, size_t at) {
  return static_cast<uint16_t>(static_cast<unsigned char>(s[at]) |
                               (static_cast<unsigned char>(s[at + 1]) << 8));
}

uint32_t get32(const std::string& s, size_t at) {
  uint32_t v = 0;
  for (int i = 3; i >= 0; --i) v = (v << 8) | static_cast<unsigned char>(s[at + static_cast<size_t>(i)]);
  return v;
}

std::string zip_single_stored(const std::string& name, const std::string& data) {
  uint32_t crc = static_cast<uint32_t>(
      crc32(0L, reinterpret_cast<const Bytef*>(data.data()), static_cast<uInt>(data.size())));
  uint32_t size = static_cast<uint32_t>(data.size());

  std::string out;
  put32(out, kLocalSig);
  put16(out, 20);  // version needed
  put16(out, 0);   // flags
  put16(out, 0);   // method: stored
  put16(out, kDosTime);
  put16(out, kDosDate);
  put32(out, crc);
  put32(out, size);
  put32(out, size);
  put16(out, static_cast<uint16_t>(name.size()));
  put16(out, 0);  // extra length
  out += name;
  out += data;

  size_t central_offset = out.size();
  put32(out, kCentralSig);
  put16(out, 20);  // version made by
  put16(out, 20);
  put16(out, 0);
  put16(out, 0);
  put16(out, kDosTime);
  put16(out, kDosDate);
  put32(out, crc);
  put32(out, size);
  put32(out, size);
  put16(out, static_cast<uint16_t>(name.size()));
  put16(out, 0);
  put16(out, 0);
  put16(out, 0);  // disk number
  put16(out, 0);  // internal attrs
  put32(out, 0);  // external attrs
  put32(out, 0);  // local header offset
  out += name;

  size_t central_size = out.size() - central_offset;
  put32(out, kEndSig);
  put16(out, 0);
  put16(out, 0);
  put16(out, 1);  // entries on disk
  put16(out, 1);  // entries total
  put32(out, static_cast<uint32_t>(central_size));
  put32(out, static_cast<uint32_t>(central_offset));
  put16(out, 0);  // comment length
  return out;
}

std::string inflate_raw(const std::string& in, uint32_t expected_size) {
  std::string out(expected_size, '\0');
  z_stream zs{};
  if (inflateInit2(&zs, -15) != Z_OK) throw Error("inflate init failed");
  zs.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(in.data()));
  zs.avail_in = static_cast<uInt>(in.size());
  zs.next_out = reinterpret_cast<Bytef*>(out.data());
  zs.avail_out = static_cast<uInt>(out.size());
  int rc = inflate(&zs, Z_FINISH);
  inflateEnd(&zs);
  if (rc != Z_STREAM_END) throw Error("corrupt deflate stream in archive");
  out.resize(zs.total_out);
  return out;
}

}  // namespace

void package_kmz(const std::filesystem::path& kml_path, const std::filesystem::path& kmz_path) {
  std::string kml = read_file(kml_path);
  if (trim(kml).empty()) throw Error("refusing to package empty KML: " + kml_path.string());
  write_file_atomic(kmz_path, zip_single_stored("doc.kml", kml));
}

std::string kmz_extract_kml(const std::filesystem::path& kmz_path) {
  std::string zip = read_file(kmz_path);
  if (zip.size() < 22) throw Error("not a zip archive: " + kmz_path.string());

  // end-of-central-directory record, scanning back over a possible comment
  size_t eocd = std::string::npos;
  size_t scan_floor = zip.size() > 22 + 65535 ? zip.size() - 22 - 65535 : 0;
  for (size_t i = zip.size() - 22 + 1; i-- > scan_floor;) {
    if (get32(zip, i) == kEndSig) {
      eocd = i;
      break;
    }
  }
  if (eocd == std::string::npos) throw Error("zip end record not found: " + kmz_path.string());
  uint16_t n_entries = get16(zip, eocd + 10);
  size_t cd = get32(zip, eocd + 16);

  size_t fallback = std::string::npos;
  size_t pos = cd;
  for (uint16_t e = 0; e < n_entries; ++e) {
    if (pos + 46 > zip.size() || get32(zip, pos) != kCentralSig) {
      throw Error("corrupt central directory: " + kmz_path.string());
    }
    uint16_t name_len = get16(zip, pos + 28);
    uint16_t extra_len = get16(zip, pos + 30);
    uint16_t comment_len = get16(zip, pos + 32);
    uint32_t local_offset = get32(zip, pos + 42);
    std::string name = zip.substr(pos + 46, name_len);
    if (name == "doc.kml") {
      fallback = local_offset;
      break;
    }
    if (fallback == std::string::npos && name.size() > 4 &&
        name.substr(name.size() - 4) == ".kml") {
      fallback = local_offset;
    }
    pos += 46u + name_len + extra_len + comment_len;
  }
  if (fallback == std::string::npos) throw Error("no .kml entry in " + kmz_path.string());

  size_t lh = fallback;
  if (lh + 30 > zip.size() || get32(zip, lh) != kLocalSig) {
    throw Error("corrupt local header: " + kmz_path.string());
  }
  uint16_t method = get16(zip, lh + 8);
  uint32_t comp_size = get32(zip, lh + 18);
  uint32_t uncomp_size = get32(zip, lh + 22);
  uint16_t name_len = get16(zip, lh + 26);
  uint16_t extra_len = get16(zip, lh + 28);
  size_t data_at = lh + 30u + name_len + extra_len;
  if (data_at + comp_size > zip.size()) throw Error("truncated archive: " + kmz_path.string());
  std::string data = zip.substr(data_at, comp_size);
  if (method == 0) return data;
  if (method == 8) return inflate_raw(data, uncomp_size);
  throw Error("unsupported zip method " + std::to_string(method) + " in " + kmz_path.string());
}

}  // namespace geosci
