#pragma once

#include <initializer_list>
#include <vector>

#include "tropocone/linalg.hpp"

namespace tropocone::testing {

inline Vec V(std::initializer_list<long> xs) {
  Vec v;
  for (long x : xs) v.emplace_back(x);
  return v;
}

inline IntMatrix M(std::initializer_list<std::initializer_list<long>> rows, std::size_t cols = 0) {
  std::vector<Vec> r;
  for (auto& row : rows) r.push_back(V(row));
  std::size_t c = r.empty() ? cols : r.front().size();
  return IntMatrix::from_rows(r, c);
}

}  // namespace tropocone::testing
