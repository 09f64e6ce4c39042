#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

#include "geosci/bib.hpp"

namespace geosci {

// record: each record contributes at most once per key (integer counting).
// address: every address occurrence counts, for comparison runs.
enum class CountingMode { record, address };

using KeySetFn = std::function<std::vector<std::string>(const BibRecord&)>;

struct OccurrenceTable {
  std::map<std::string, long> entries;  // key -> number of records (or addresses)
};

// Symmetric co-occurrence counts; the diagonal holds occurrences. Keys are
// kept in lexicographic order so every derived file is deterministic.
class CoocMatrix {
 public:
  CoocMatrix() = default;
  explicit CoocMatrix(std::vector<std::string> keys);  // sorted + deduplicated

  long size() const { return static_cast<long>(keys_.size()); }
  const std::vector<std::string>& keys() const { return keys_; }
  long index_of(const std::string& key) const;  // -1 when absent

  long at(long i, long j) const { return data_[static_cast<size_t>(i * size() + j)]; }
  void add(long i, long j, long v);  // symmetric
  long occurrence(long i) const { return at(i, i); }

  bool operator==(const CoocMatrix&) const = default;

 private:
  std::vector<std::string> keys_;
  std::vector<long> data_;
};

struct SimilarityMatrix {
  std::vector<std::string> keys;
  std::vector<double> values;  // row-major, size() == keys.size()^2

  double at(long i, long j) const {
    return values[static_cast<size_t>(i) * keys.size() + static_cast<size_t>(j)];
  }
};

OccurrenceTable build_occurrences(const std::vector<BibRecord>& records, const KeySetFn& keys_of,
                                  CountingMode mode = CountingMode::record);

CoocMatrix build_cooc(const std::vector<BibRecord>& records, const KeySetFn& keys_of,
                      CountingMode mode = CountingMode::record);

// Partitions records across threads and merges partial counts; bitwise equal
// to the single-threaded result (addition is the only combine step).
CoocMatrix build_cooc_parallel(const std::vector<BibRecord>& records, const KeySetFn& keys_of,
                               CountingMode mode = CountingMode::record, int threads = 4);

enum class ThresholdMode { absolute, percent };

// Keeps keys with occurrence >= value (absolute) or >= value% of the maximum
// occurrence; co-occurrence counts of survivors are unchanged.
CoocMatrix apply_threshold(const CoocMatrix& m, ThresholdMode mode, double value);

// s_ij = c_ij / sqrt(n_i * n_j); the diagonal is 1 wherever n_i > 0.
SimilarityMatrix cosine_normalize(const CoocMatrix& m);

}  // namespace geosci
