// Test-only dense symmetric eigensolver: cyclic Jacobi rotations with a
// final insertion sort of the eigenpairs. Kept deliberately independent of
// the library's LAPACK-backed path so it can serve as an oracle.
#pragma once

#include <cmath>
#include <stdexcept>
#include <vector>

namespace oracle {

struct EigenResult {
  int dim = 0;
  std::vector<double> values;   // ascending
  std::vector<double> vectors;  // column-major, column k pairs with values[k]
};

inline EigenResult jacobi_eigensolve(std::vector<double> a, int n) {
  std::vector<double> v(static_cast<size_t>(n) * n, 0.0);
  for (int i = 0; i < n; ++i) v[static_cast<size_t>(i) * n + i] = 1.0;

  auto at = [&](std::vector<double>& m, int r, int c) -> double& {
    return m[static_cast<size_t>(r) * n + c];
  };

  for (int sweep = 0; sweep < 100; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) off += at(a, p, q) * at(a, p, q);
    }
    if (off < 1e-26) break;
    if (sweep == 99) throw std::runtime_error("jacobi oracle did not converge");

    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        double apq = at(a, p, q);
        if (apq == 0.0) continue;
        double theta = (at(a, q, q) - at(a, p, p)) / (2.0 * apq);
        double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        double c = 1.0 / std::sqrt(t * t + 1.0);
        double s = t * c;
        for (int k = 0; k < n; ++k) {
          double akp = at(a, k, p), akq = at(a, k, q);
          at(a, k, p) = c * akp - s * akq;
          at(a, k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          double apk = at(a, p, k), aqk = at(a, q, k);
          at(a, p, k) = c * apk - s * aqk;
          at(a, q, k) = s * apk + c * aqk;
        }
        for (int k = 0; k < n; ++k) {
          double vkp = at(v, k, p), vkq = at(v, k, q);
          at(v, k, p) = c * vkp - s * vkq;
          at(v, k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  EigenResult result;
  result.dim = n;
  result.values.resize(n);
  for (int i = 0; i < n; ++i) result.values[i] = a[static_cast<size_t>(i) * n + i];

  // sort ascending, carrying columns
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  for (int i = 1; i < n; ++i) {
    int key = order[i];
    int j = i - 1;
    while (j >= 0 && result.values[order[j]] > result.values[key]) {
      order[j + 1] = order[j];
      --j;
    }
    order[j + 1] = key;
  }
  std::vector<double> sorted_values(n);
  result.vectors.resize(static_cast<size_t>(n) * n);
  for (int k = 0; k < n; ++k) {
    sorted_values[k] = result.values[order[k]];
    for (int i = 0; i < n; ++i) {
      result.vectors[static_cast<size_t>(k) * n + i] = v[static_cast<size_t>(i) * n + order[k]];
    }
  }
  result.values = std::move(sorted_values);
  return result;
}

}  // namespace oracle
