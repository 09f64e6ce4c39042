#include "geosci/matrix_io.hpp"

#include <sstream>

#include "geosci/util.hpp"

namespace geosci {

void write_matrix(const CoocMatrix& m, const std::filesystem::path& path) {
  std::ostringstream out;
  out << join(m.keys(), "\t") << "\n";
  for (long i = 0; i < m.size(); ++i) {
    out << m.keys()[static_cast<size_t>(i)];
    for (long j = 0; j < m.size(); ++j) out << "\t" << m.at(i, j);
    out << "\n";
  }
  write_file_atomic(path, out.str());
}

void write_similarity(const SimilarityMatrix& s, const std::filesystem::path& path) {
  std::ostringstream out;
  out << join(s.keys, "\t") << "\n";
  long n = static_cast<long>(s.keys.size());
  for (long i = 0; i < n; ++i) {
    out << s.keys[static_cast<size_t>(i)];
    for (long j = 0; j < n; ++j) out << "\t" << format_fixed(s.at(i, j), 6);
    out << "\n";
  }
  write_file_atomic(path, out.str());
}

}  // namespace geosci
