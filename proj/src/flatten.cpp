#include "secant3/flatten.hpp"

#include <algorithm>

namespace secant3 {

void check_split(const Format& format, const std::vector<int>& split) {
  require(static_cast<int>(split.size()) == format.k(), ErrorKind::InvalidInput, "split has wrong length");
  for (int i = 0; i < format.k(); ++i) {
    const int s = split[static_cast<std::size_t>(i)];
    require(s >= 0 && s <= format.degree(i), ErrorKind::InvalidInput, "split entry out of range");
  }
}

template <class T>
Matrix<T> flatten(const Tensor<T>& tensor, const std::vector<int>& split) {
  const Format& f = tensor.format;
  check_split(f, split);
  require(tensor.coeffs.size() == f.size(), ErrorKind::InvalidInput, "tensor coefficient count mismatch");
  const auto k = static_cast<std::size_t>(f.k());
  // sum_index[i][r][c]: factor-i monomial index of row tuple r plus column tuple c.
  std::vector<std::vector<std::vector<std::size_t>>> sum_index(k);
  std::vector<std::size_t> row_sizes(k), col_sizes(k);
  for (std::size_t i = 0; i < k; ++i) {
    const int n = f.dim(static_cast<int>(i)) + 1;
    const int s = split[i];
    const auto rows = monomial_exponents(n, s);
    const auto cols = monomial_exponents(n, f.degree(static_cast<int>(i)) - s);
    row_sizes[i] = rows.size();
    col_sizes[i] = cols.size();
    sum_index[i].assign(rows.size(), std::vector<std::size_t>(cols.size()));
    std::vector<int> tmp(static_cast<std::size_t>(n));
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (std::size_t c = 0; c < cols.size(); ++c) {
        for (int j = 0; j < n; ++j)
          tmp[static_cast<std::size_t>(j)] = rows[r][static_cast<std::size_t>(j)] + cols[c][static_cast<std::size_t>(j)];
        sum_index[i][r][c] = monomial_rank(tmp);
      }
  }
  std::size_t R = 1, C = 1;
  for (std::size_t i = 0; i < k; ++i) {
    R *= row_sizes[i];
    C *= col_sizes[i];
  }
  Matrix<T> m(R, C);
  std::vector<std::size_t> rdig(k), cdig(k), idx(k);
  for (std::size_t r = 0; r < R; ++r) {
    std::size_t rest = r;
    for (std::size_t i = k; i-- > 0;) {
      rdig[i] = rest % row_sizes[i];
      rest /= row_sizes[i];
    }
    for (std::size_t c = 0; c < C; ++c) {
      std::size_t crest = c;
      for (std::size_t i = k; i-- > 0;) {
        cdig[i] = crest % col_sizes[i];
        crest /= col_sizes[i];
      }
      for (std::size_t i = 0; i < k; ++i) idx[i] = sum_index[i][rdig[i]][cdig[i]];
      m(r, c) = tensor.coeffs[f.global_index(idx)];
    }
  }
  return m;
}

template Matrix<Rational> flatten(const Tensor<Rational>&, const std::vector<int>&);
template Matrix<Complex> flatten(const Tensor<Complex>&, const std::vector<int>&);

std::vector<std::vector<int>> enumerate_splits(const Format& format, bool factor_subsets_only) {
  const auto k = static_cast<std::size_t>(format.k());
  std::vector<std::vector<int>> out;
  std::vector<int> s(k, 0);
  std::vector<int> complement(k);
  auto side_size = [&](const std::vector<int>& split) {
    std::size_t n = 1;
    for (std::size_t i = 0; i < k; ++i) n *= binomial(format.dim(static_cast<int>(i)) + split[i], split[i]);
    return n;
  };
  while (true) {
    bool subset_ok = true;
    for (std::size_t i = 0; i < k; ++i) {
      complement[i] = format.degree(static_cast<int>(i)) - s[i];
      if (factor_subsets_only && s[i] != 0 && complement[i] != 0) subset_ok = false;
    }
    if (subset_ok && s <= complement && side_size(s) >= 2 && side_size(complement) >= 2) out.push_back(s);
    std::size_t i = k;
    while (i-- > 0) {
      if (s[i] < format.degree(static_cast<int>(i))) {
        ++s[i];
        break;
      }
      s[i] = 0;
    }
    if (i == static_cast<std::size_t>(-1)) break;
  }
  return out;
}

namespace {

template <class RankFn>
FlatteningReport report_impl(const PSTensor& tensor, const FlatteningOptions& options, bool parallel, RankFn rank_of) {
  FlatteningReport report;
  report.partial = tensor.format.size() > options.full_enumeration_cap;
  const auto splits = enumerate_splits(tensor.format, report.partial);
  report.entries.resize(splits.size());
  const auto body = [&](std::size_t j) {
    auto m = flatten(tensor, splits[j]);
    report.entries[j] = {splits[j], m.rows(), m.cols(), rank_of(m)};
  };
  if (parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (std::ptrdiff_t j = 0; j < static_cast<std::ptrdiff_t>(splits.size()); ++j) body(static_cast<std::size_t>(j));
  } else {
    for (std::size_t j = 0; j < splits.size(); ++j) body(j);
  }
  // Rank-1 tensors on a single P^1 with d = 1 have no nontrivial split; the
  // coefficient vector itself bounds the border rank by 1 when nonzero.
  report.max_rank = is_zero(tensor) ? 0 : 1;
  for (const auto& e : report.entries) report.max_rank = std::max(report.max_rank, e.rank);
  return report;
}

}  // namespace

FlatteningReport flattening_report(const PSTensor& tensor, const FlatteningOptions& options) {
  return report_impl(tensor, options, true, [](const Matrix<Rational>& m) { return mat_rank(m); });
}

FlatteningReport flattening_report_serial(const PSTensor& tensor, const FlatteningOptions& options) {
  return report_impl(tensor, options, false, [](const Matrix<Rational>& m) { return mat_rank(m); });
}

FlatteningReport flattening_report_numeric(const PSTensor& tensor, Real tau, const FlatteningOptions& options) {
  return report_impl(tensor, options, true, [tau](const Matrix<Rational>& m) { return mat_rank(to_approx(m), tau); });
}

}  // namespace secant3
