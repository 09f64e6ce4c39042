#pragma once

#include <filesystem>
#include <string>

namespace geosci {

// Zips the KML into a .kmz archive as "doc.kml" (stored entry, fixed
// timestamp, so identical input gives an identical archive). Rejects an
// empty KML.
void package_kmz(const std::filesystem::path& kml_path, const std::filesystem::path& kmz_path);

// Extracts "doc.kml" (or the first .kml entry) from a .kmz archive;
// unzip(zip(x)) is byte-identical to x.
std::string kmz_extract_kml(const std::filesystem::path& kmz_path);

}  // namespace geosci
