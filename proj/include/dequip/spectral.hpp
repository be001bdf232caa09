#pragma once

#include <span>
#include <vector>

#include "dequip/image.hpp"

namespace dequip {

// Dense symmetric matrix, stored full, row-major.
struct SymMatrix {
  int dim = 0;
  std::vector<double> entries;  // dim*dim

  explicit SymMatrix(int d = 0) : dim(d), entries(static_cast<size_t>(d) * d, 0.0) {}
  double& at(int i, int j) { return entries[static_cast<size_t>(i) * dim + j]; }
  double at(int i, int j) const { return entries[static_cast<size_t>(i) * dim + j]; }
  double frobenius_norm() const;
};

// Ascending eigenvalues with orthonormal eigenvectors (column k of `vectors`
// pairs with eigenvalues[k]; vectors stored column-major, dim rows).
struct EigenBasis {
  int dim = 0;
  std::vector<double> eigenvalues;
  std::vector<double> vectors;

  int count() const { return static_cast<int>(eigenvalues.size()); }
  std::span<const double> vec(int k) const {
    return {vectors.data() + static_cast<size_t>(k) * dim, static_cast<size_t>(dim)};
  }
};

// Discretized Schroedinger Hamiltonian over a square potential patch:
// H[i,i] = potential[i] + 4*beta, H[i,j] = -beta for 4-neighborhood adjacency
// in the patch grid (no coupling across row ends), zero elsewhere.
SymMatrix build_hamiltonian(const Patch& potential, double beta);

// The k algebraically smallest eigenpairs, ascending. Each eigenvector's sign
// is fixed so its largest-magnitude entry is positive.
EigenBasis eigendecompose(const SymMatrix& h, int k);

// Inverse participation ratio 1/sum(v_i^4) of a unit vector.
double ipr(std::span<const double> v);

// Mean IPR over all eigenvectors of the Hamiltonians of non-overlapping
// side x side patches (raw pixel potentials). max_patches = 0 means all
// patches; otherwise only the first max_patches in row-major order.
double average_ipr(const Image& image, int side, double beta, int max_patches = 0);

}  // namespace dequip
