#pragma once

#include <filesystem>

#include "geosci/cooc.hpp"

namespace geosci {

// matrix.txt: header row of keys, then one "key<TAB>c_i1<TAB>..." row per
// key. UTF-8, LF line endings.
void write_matrix(const CoocMatrix& m, const std::filesystem::path& path);

// Same layout with fixed six-decimal values (cosine.txt).
void write_similarity(const SimilarityMatrix& s, const std::filesystem::path& path);

}  // namespace geosci
