#include "dequip/spectral.hpp"

#include <lapacke.h>

#include <cmath>
#include <string>

#include "dequip/errors.hpp"

namespace dequip {

double SymMatrix::frobenius_norm() const {
  double s = 0.0;
  for (double v : entries) s += v * v;
  return std::sqrt(s);
}

SymMatrix build_hamiltonian(const Patch& potential, double beta) {
  if (beta <= 0.0) throw ValidationError("beta must be positive");
  const int side = potential.side;
  const int dim = potential.dim();
  if (side <= 0 || static_cast<int>(potential.values.size()) != dim) {
    throw ValidationError("malformed potential patch");
  }
  for (double v : potential.values) {
    if (!std::isfinite(v)) throw ValidationError("non-finite potential value");
  }
  SymMatrix h(dim);
  for (int i = 0; i < dim; ++i) {
    h.at(i, i) = potential.values[i] + 4.0 * beta;
    int r = i / side, c = i % side;
    if (c + 1 < side) {  // horizontal neighbor, same row only
      h.at(i, i + 1) = -beta;
      h.at(i + 1, i) = -beta;
    }
    if (r + 1 < side) {  // vertical neighbor
      h.at(i, i + side) = -beta;
      h.at(i + side, i) = -beta;
    }
  }
  return h;
}

EigenBasis eigendecompose(const SymMatrix& h, int k) {
  const int dim = h.dim;
  if (k < 1 || k > dim) throw ValidationError("k must be in [1, dim]");

  // Full decomposition via LAPACK divide-and-conquer; patch Hamiltonians are
  // small and the large tile/IPR cases need all eigenvectors anyway.
  std::vector<double> a = h.entries;
  std::vector<double> w(dim);
  lapack_int info = LAPACKE_dsyevd(LAPACK_ROW_MAJOR, 'V', 'L', dim, a.data(), dim, w.data());
  if (info != 0) {
    throw NumericalError("symmetric eigensolver failed to converge (info=" +
                         std::to_string(info) + ")");
  }

  // dsyevd leaves eigenvector j in column j of the row-major array.
  EigenBasis basis;
  basis.dim = dim;
  basis.eigenvalues.assign(w.begin(), w.begin() + k);
  basis.vectors.resize(static_cast<size_t>(dim) * k);
  for (int j = 0; j < k; ++j) {
    double* out = basis.vectors.data() + static_cast<size_t>(j) * dim;
    for (int i = 0; i < dim; ++i) out[i] = a[static_cast<size_t>(i) * dim + j];
    // sign convention: largest-magnitude entry positive
    int imax = 0;
    for (int i = 1; i < dim; ++i) {
      if (std::abs(out[i]) > std::abs(out[imax])) imax = i;
    }
    if (out[imax] < 0.0) {
      for (int i = 0; i < dim; ++i) out[i] = -out[i];
    }
  }
  return basis;
}

double ipr(std::span<const double> v) {
  double norm2 = 0.0, quart = 0.0;
  for (double x : v) {
    norm2 += x * x;
    quart += x * x * x * x;
  }
  if (quart == 0.0) throw ValidationError("ipr of zero vector");
  if (std::abs(norm2 - 1.0) > 1e-8) throw ValidationError("ipr requires a unit vector");
  return 1.0 / quart;
}

double average_ipr(const Image& image, int side, double beta, int max_patches) {
  validate_image(image);
  if (side <= 0 || side > image.width || side > image.height) {
    throw ValidationError("patch side must fit in the image");
  }
  double total = 0.0;
  long vectors = 0;
  int taken = 0;
  for (int r = 0; r + side <= image.height; r += side) {
    for (int c = 0; c + side <= image.width; c += side) {
      if (max_patches > 0 && taken >= max_patches) break;
      Patch patch = extract_patch(image, r, c, side, false);
      EigenBasis basis = eigendecompose(build_hamiltonian(patch, beta), patch.dim());
      for (int k = 0; k < basis.count(); ++k) total += ipr(basis.vec(k));
      vectors += basis.count();
      ++taken;
    }
    if (max_patches > 0 && taken >= max_patches) break;
  }
  return total / static_cast<double>(vectors);
}

}  // namespace dequip
