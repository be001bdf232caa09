#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "dequip/errors.hpp"
#include "dequip/spectral.hpp"
#include "support/jacobi_oracle.hpp"

using namespace dequip;

namespace {
Patch make_patch(int side, std::vector<double> values) {
  Patch p;
  p.side = side;
  p.values = std::move(values);
  return p;
}

double residual_norm(const SymMatrix& h, const EigenBasis& basis, int k) {
  auto psi = basis.vec(k);
  double norm = 0.0;
  for (int i = 0; i < h.dim; ++i) {
    double hv = 0.0;
    for (int j = 0; j < h.dim; ++j) hv += h.at(i, j) * psi[j];
    double r = hv - basis.eigenvalues[k] * psi[i];
    norm += r * r;
  }
  return std::sqrt(norm);
}
}  // namespace

TEST_CASE("build_hamiltonian applies the stencil on a 2x2 zero patch") {
  SymMatrix h = build_hamiltonian(make_patch(2, {0, 0, 0, 0}), 1.0);
  std::vector<double> expected = {4, -1, -1, 0, -1, 4, 0, -1, -1, 0, 4, -1, 0, -1, -1, 4};
  CHECK(h.entries == expected);
}

TEST_CASE("build_hamiltonian degenerate 1x1") {
  SymMatrix h = build_hamiltonian(make_patch(1, {7.0}), 2.0);
  REQUIRE(h.dim == 1);
  CHECK(h.entries[0] == doctest::Approx(15.0));
}

TEST_CASE("build_hamiltonian adds the potential on the diagonal") {
  SymMatrix h = build_hamiltonian(make_patch(2, {10, 20, 30, 40}), 1.0);
  CHECK(h.at(0, 0) == 14);
  CHECK(h.at(1, 1) == 24);
  CHECK(h.at(2, 2) == 34);
  CHECK(h.at(3, 3) == 44);
  CHECK(h.at(0, 1) == -1);
  CHECK(h.at(0, 3) == 0);
}

TEST_CASE("build_hamiltonian has no coupling across row ends") {
  // pixels 2 and 3 of a 3x3 patch are (0,2) and (1,0): not spatial neighbors
  SymMatrix h = build_hamiltonian(make_patch(3, std::vector<double>(9, 0.0)), 1.0);
  CHECK(h.at(2, 3) == 0.0);
  CHECK(h.at(3, 2) == 0.0);
  CHECK(h.at(2, 5) == -1.0);
}

TEST_CASE("build_hamiltonian rejects non-finite potentials") {
  CHECK_THROWS_AS(build_hamiltonian(make_patch(1, {std::nan("")}), 1.0), ValidationError);
}

TEST_CASE("hamiltonian symmetry for random potentials") {
  std::mt19937 gen(5);
  std::uniform_real_distribution<double> dist(0.0, 255.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> vals(25);
    for (double& v : vals) v = dist(gen);
    SymMatrix h = build_hamiltonian(make_patch(5, vals), 1.7);
    for (int i = 0; i < h.dim; ++i) {
      for (int j = 0; j < h.dim; ++j) REQUIRE(h.at(i, j) == h.at(j, i));
    }
  }
}

TEST_CASE("zero-potential 2x2 spectrum is the Dirichlet Laplacian spectrum") {
  SymMatrix h = build_hamiltonian(make_patch(2, {0, 0, 0, 0}), 1.0);
  EigenBasis basis = eigendecompose(h, 4);
  // 4 - 2cos(p pi/3) - 2cos(q pi/3), p,q in {1,2}
  CHECK(basis.eigenvalues[0] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(basis.eigenvalues[1] == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(basis.eigenvalues[2] == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(basis.eigenvalues[3] == doctest::Approx(6.0).epsilon(1e-12));
}

TEST_CASE("eigendecompose of a diagonal matrix picks the k smallest") {
  SymMatrix h(3);
  h.at(0, 0) = 3;
  h.at(1, 1) = 1;
  h.at(2, 2) = 2;
  EigenBasis basis = eigendecompose(h, 2);
  CHECK(basis.eigenvalues[0] == doctest::Approx(1.0));
  CHECK(basis.eigenvalues[1] == doctest::Approx(2.0));
  CHECK(basis.vec(0)[1] == doctest::Approx(1.0));
  CHECK(basis.vec(1)[2] == doctest::Approx(1.0));
}

TEST_CASE("eigendecompose of 5I returns an orthonormal basis") {
  SymMatrix h(3);
  for (int i = 0; i < 3; ++i) h.at(i, i) = 5.0;
  EigenBasis basis = eigendecompose(h, 3);
  for (double e : basis.eigenvalues) CHECK(e == doctest::Approx(5.0));
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      double dot = 0.0;
      for (int k = 0; k < 3; ++k) dot += basis.vec(i)[k] * basis.vec(j)[k];
      CHECK(std::abs(dot - (i == j ? 1.0 : 0.0)) <= 1e-10);
    }
  }
}

TEST_CASE("spectral shift: adding a constant shifts eigenvalues exactly") {
  std::mt19937 gen(17);
  std::uniform_real_distribution<double> dist(0.0, 200.0);
  std::vector<double> vals(16);
  for (double& v : vals) v = dist(gen);
  Patch base = make_patch(4, vals);
  Patch shifted = base;
  const double c = 37.25;
  for (double& v : shifted.values) v += c;

  EigenBasis b0 = eigendecompose(build_hamiltonian(base, 2.0), 16);
  EigenBasis b1 = eigendecompose(build_hamiltonian(shifted, 2.0), 16);
  for (int k = 0; k < 16; ++k) {
    CHECK(b1.eigenvalues[k] == doctest::Approx(b0.eigenvalues[k] + c).epsilon(1e-11));
    for (int i = 0; i < 16; ++i) {
      CHECK(b1.vec(k)[i] == doctest::Approx(b0.vec(k)[i]).epsilon(1e-7));
    }
  }
}

TEST_CASE("completeness: full basis resolves the identity") {
  std::mt19937 gen(23);
  std::uniform_real_distribution<double> dist(0.0, 255.0);
  std::vector<double> vals(9);
  for (double& v : vals) v = dist(gen);
  EigenBasis basis = eigendecompose(build_hamiltonian(make_patch(3, vals), 1.0), 9);
  for (int i = 0; i < 9; ++i) {
    for (int j = 0; j < 9; ++j) {
      double sum = 0.0;
      for (int k = 0; k < 9; ++k) sum += basis.vec(k)[i] * basis.vec(k)[j];
      CHECK(std::abs(sum - (i == j ? 1.0 : 0.0)) <= 1e-8);
    }
  }
}

TEST_CASE("eigenvalues match the jacobi oracle on random 3x3 potentials") {
  std::mt19937 gen(29);
  std::uniform_real_distribution<double> dist(0.0, 255.0);
  for (int trial = 0; trial < 25; ++trial) {
    std::vector<double> vals(9);
    for (double& v : vals) v = dist(gen);
    SymMatrix h = build_hamiltonian(make_patch(3, vals), 1.5);
    EigenBasis basis = eigendecompose(h, 9);
    oracle::EigenResult ref = oracle::jacobi_eigensolve(h.entries, 9);
    for (int k = 0; k < 9; ++k) {
      REQUIRE(basis.eigenvalues[k] == doctest::Approx(ref.values[k]).epsilon(1e-10));
    }
  }
}

TEST_CASE("residuals and orthonormality on random potentials") {
  std::mt19937 gen(31);
  std::uniform_real_distribution<double> dist(0.0, 255.0);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<double> vals(49);
    for (double& v : vals) v = dist(gen);
    SymMatrix h = build_hamiltonian(make_patch(7, vals), 1.7);
    EigenBasis basis = eigendecompose(h, 49);
    double tol = 1e-8 * (1.0 + h.frobenius_norm());
    for (int k = 0; k < 49; ++k) REQUIRE(residual_norm(h, basis, k) <= tol);
  }
}

TEST_CASE("sign convention makes the largest-magnitude entry positive") {
  std::mt19937 gen(37);
  std::uniform_real_distribution<double> dist(0.0, 255.0);
  std::vector<double> vals(16);
  for (double& v : vals) v = dist(gen);
  EigenBasis basis = eigendecompose(build_hamiltonian(make_patch(4, vals), 1.0), 16);
  for (int k = 0; k < 16; ++k) {
    auto psi = basis.vec(k);
    double best = 0.0;
    for (double x : psi) {
      if (std::abs(x) > std::abs(best)) best = x;
    }
    CHECK(best > 0.0);
  }
}

TEST_CASE("eigendecompose validates k") {
  SymMatrix h(2);
  CHECK_THROWS_AS(eigendecompose(h, 0), ValidationError);
  CHECK_THROWS_AS(eigendecompose(h, 3), ValidationError);
}

TEST_CASE("ipr of uniform and basis vectors") {
  std::vector<double> uniform4(4, 0.5);
  CHECK(ipr(uniform4) == doctest::Approx(4.0));
  std::vector<double> uniform49(49, 1.0 / 7.0);
  CHECK(ipr(uniform49) == doctest::Approx(49.0));
  std::vector<double> e1 = {1.0, 0.0, 0.0};
  CHECK(ipr(e1) == doctest::Approx(1.0));
}

TEST_CASE("ipr rejects the zero vector and non-unit vectors") {
  std::vector<double> zero(4, 0.0);
  CHECK_THROWS_AS(ipr(zero), ValidationError);
  std::vector<double> scaled(4, 1.0);
  CHECK_THROWS_AS(ipr(scaled), ValidationError);
}

TEST_CASE("ipr bounds hold for random unit vectors") {
  std::mt19937 gen(41);
  std::normal_distribution<double> dist;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<double> v(25);
    double norm = 0.0;
    for (double& x : v) {
      x = dist(gen);
      norm += x * x;
    }
    norm = std::sqrt(norm);
    for (double& x : v) x /= norm;
    double value = ipr(v);
    REQUIRE(value >= 1.0);
    REQUIRE(value <= 25.0 + 1e-9);
  }
}

TEST_CASE("average_ipr matches a direct computation on a constant image") {
  Image img(2, 2, 0.0);
  double expected = 0.0;
  SymMatrix h = build_hamiltonian(make_patch(2, {0, 0, 0, 0}), 1.0);
  EigenBasis basis = eigendecompose(h, 4);
  for (int k = 0; k < 4; ++k) expected += ipr(basis.vec(k));
  expected /= 4.0;
  CHECK(average_ipr(img, 2, 1.0) == doctest::Approx(expected));
}

TEST_CASE("average_ipr with 1x1 patches is exactly one") {
  Image img(4, 4);
  for (int i = 0; i < 16; ++i) img.data[i] = i;
  CHECK(average_ipr(img, 1, 1.0) == doctest::Approx(1.0));
}
