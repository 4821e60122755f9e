#include "mcensus/smith.hpp"

#include <cstdlib>

namespace mcensus {

namespace {

Int abs_int(const Int& x) { return x < 0 ? Int(-x) : x; }

}  // namespace

std::vector<Int> smith_normal_form(std::vector<std::vector<Int>> m) {
  std::vector<Int> divisors;
  size_t rows = m.size();
  size_t cols = rows ? m[0].size() : 0;
  size_t top = 0;
  while (top < rows && top < cols) {
    // Pivot: smallest nonzero absolute value in the remaining block.
    size_t pr = rows, pc = cols;
    for (size_t i = top; i < rows; ++i)
      for (size_t j = top; j < cols; ++j)
        if (m[i][j] != 0 &&
            (pr == rows || abs_int(m[i][j]) < abs_int(m[pr][pc]))) {
          pr = i;
          pc = j;
        }
    if (pr == rows) break;  // block is zero
    std::swap(m[top], m[pr]);
    for (size_t i = top; i < rows; ++i) std::swap(m[i][top], m[i][pc]);

    bool clean = false;
    while (!clean) {
      clean = true;
      for (size_t i = top + 1; i < rows; ++i) {
        if (m[i][top] == 0) continue;
        Int q = m[i][top] / m[top][top];
        for (size_t j = top; j < cols; ++j) m[i][j] -= q * m[top][j];
        if (m[i][top] != 0) {  // remainder smaller than pivot: swap up
          std::swap(m[top], m[i]);
          clean = false;
        }
      }
      if (!clean) continue;
      for (size_t j = top + 1; j < cols; ++j) {
        if (m[top][j] == 0) continue;
        Int q = m[top][j] / m[top][top];
        for (size_t i = top; i < rows; ++i) m[i][j] -= q * m[i][top];
        if (m[top][j] != 0) {
          for (size_t i = top; i < rows; ++i) std::swap(m[i][top], m[i][j]);
          clean = false;
        }
      }
      if (!clean) continue;
      // Divisibility: pivot must divide everything below-right; if not, fold
      // the offending row in and restart the reduction.
      for (size_t i = top + 1; i < rows && clean; ++i)
        for (size_t j = top + 1; j < cols && clean; ++j)
          if (m[i][j] % m[top][top] != 0) {
            for (size_t jj = top; jj < cols; ++jj) m[top][jj] += m[i][jj];
            clean = false;
          }
    }
    divisors.push_back(abs_int(m[top][top]));
    ++top;
  }
  return divisors;
}

}  // namespace mcensus
