#pragma once

#include <cstddef>
#include <vector>

#include "secant3/format.hpp"
#include "secant3/linalg.hpp"
#include "secant3/matrix.hpp"

namespace secant3 {

// Per-factor split s_i in [0, d_i]: rows are indexed by exponent tuples of
// degrees (s_1..s_k), columns by (d_1-s_1..d_k-s_k), and the entry is the
// coefficient at the sum of the two tuples.
void check_split(const Format& format, const std::vector<int>& split);

template <class T>
Matrix<T> flatten(const Tensor<T>& tensor, const std::vector<int>& split);

struct FlatteningEntry {
  std::vector<int> split;
  std::size_t rows = 0, cols = 0;
  std::size_t rank = 0;
};

struct FlatteningReport {
  std::vector<FlatteningEntry> entries;
  std::size_t max_rank = 0;
  // Set when the format exceeded the cap and only factor-subset splits ran.
  bool partial = false;
};

struct FlatteningOptions {
  // Full split enumeration up to this many coefficients (N + 1).
  std::size_t full_enumeration_cap = 20000;
};

// Canonical nontrivial splits: both sides at least 2, one of each
// transpose pair (s <= d - s lexicographically).
std::vector<std::vector<int>> enumerate_splits(const Format& format, bool factor_subsets_only);

FlatteningReport flattening_report(const PSTensor& tensor, const FlatteningOptions& options = {});
FlatteningReport flattening_report_serial(const PSTensor& tensor, const FlatteningOptions& options = {});

// Numeric variant (SVD threshold) for oracle comparisons.
FlatteningReport flattening_report_numeric(const PSTensor& tensor, Real tau = kDefaultRankThreshold,
                                           const FlatteningOptions& options = {});

}  // namespace secant3
