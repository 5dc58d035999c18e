#pragma once

#include <cstddef>
#include <vector>

namespace multiaxial {

/// Deterministic pairwise (tree) reduction; the summation order depends only
/// on the number of terms. Returns `zero` for an empty input.
template <class T>
T pairwise_sum(std::vector<T> terms, const T& zero) {
  if (terms.empty()) return zero;
  while (terms.size() > 1) {
    std::vector<T> next;
    next.reserve((terms.size() + 1) / 2);
    for (std::size_t i = 0; i + 1 < terms.size(); i += 2) next.push_back(terms[i] + terms[i + 1]);
    if (terms.size() % 2 == 1) next.push_back(terms.back());
    terms = std::move(next);
  }
  return terms.front();
}

}  // namespace multiaxial
