#include <doctest.h>

#include <cmath>
#include <limits>

#include "fixtures.hpp"
#include "socf/error.hpp"
#include "socf/linalg.hpp"
#include "socf/oracle.hpp"

using namespace socf;
using fixtures::mat;
using fixtures::vec;

namespace {

double rel_err(const Matrix& got, const Matrix& want, double floor = 1.0) {
  return (got - want).norm() / std::max(floor, want.norm());
}

// Random m x n matrix of rank r (r <= min(m, n)).
Matrix random_rank(oracle::Rng& rng, Eigen::Index m, Eigen::Index n, Eigen::Index r) {
  Matrix left(m, r), right(r, n);
  for (Eigen::Index j = 0; j < r; ++j) left.col(j) = oracle::random_normal(rng, m);
  for (Eigen::Index j = 0; j < n; ++j) right.col(j) = oracle::random_normal(rng, r);
  return left * right;
}

}  // namespace

TEST_SUITE("linalg") {
  TEST_CASE("sym_eigen of a diagonal matrix is trivial") {
    const SymEigen e = linalg::sym_eigen(mat({{2, 0}, {0, 5}}));
    CHECK(e.eigenvalues(0) == doctest::Approx(2.0));
    CHECK(e.eigenvalues(1) == doctest::Approx(5.0));
    CHECK(rel_err(e.eigenvectors, Matrix::Identity(2, 2)) < 1e-14);
  }

  TEST_CASE("sym_eigen reproduces (7 -+ sqrt 13) / 2") {
    const SymEigen e = linalg::sym_eigen(fixtures::six_case_matrix());
    CHECK(std::abs(e.eigenvalues(0) - (7.0 - std::sqrt(13.0)) / 2.0) < 1e-13);
    CHECK(std::abs(e.eigenvalues(1) - (7.0 + std::sqrt(13.0)) / 2.0) < 1e-13);
  }

  TEST_CASE("sym_eigen reconstructs random symmetric matrices") {
    oracle::Rng rng(7);
    for (int trial = 0; trial < 50; ++trial) {
      Matrix s(5, 5);
      for (int j = 0; j < 5; ++j) s.col(j) = oracle::random_normal(rng, 5);
      s = 0.5 * (s + s.transpose()).eval();
      const SymEigen e = linalg::sym_eigen(s);
      const Matrix back = e.eigenvectors * e.eigenvalues.asDiagonal() * e.eigenvectors.transpose();
      CHECK(linalg::max_abs(back - s) < 1e-10);
      CHECK(linalg::max_abs(e.eigenvectors.transpose() * e.eigenvectors - Matrix::Identity(5, 5)) <
            1e-10);
      for (int i = 1; i < 5; ++i) CHECK(e.eigenvalues(i - 1) <= e.eigenvalues(i));
      const SymEigen again = linalg::sym_eigen(s);
      CHECK(again.eigenvectors == e.eigenvectors);
    }
  }

  TEST_CASE("sym_eigen rejects asymmetric and non-finite input") {
    CHECK_THROWS_AS(linalg::sym_eigen(mat({{1, 2}, {0, 1}})), Error);
    try {
      linalg::sym_eigen(mat({{1, 2}, {0, 1}}));
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::NonSymmetric);
    }
    Matrix bad = Matrix::Identity(2, 2);
    bad(0, 1) = std::numeric_limits<double>::quiet_NaN();
    try {
      linalg::sym_eigen(bad);
      FAIL("expected NonFinite");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::NonFinite);
    }
  }

  TEST_CASE("pseudoinverse of the 3x2 example") {
    const Matrix a = mat({{1, 0}, {-1, 1}, {0, 2}});
    const Matrix want = mat({{5, -4, 2}, {1, 1, 4}}) / 9.0;
    CHECK(linalg::max_abs(linalg::pseudoinverse(a) - want) < 1e-14);
  }

  TEST_CASE("pseudoinverse trivial cases") {
    CHECK(linalg::max_abs(linalg::pseudoinverse(Matrix::Identity(4, 4)) - Matrix::Identity(4, 4)) <
          1e-15);
    const Matrix z = linalg::pseudoinverse(Matrix::Zero(3, 2));
    CHECK(z.rows() == 2);
    CHECK(z.cols() == 3);
    CHECK(linalg::max_abs(z) == 0.0);
  }

  TEST_CASE("Moore-Penrose identities on random matrices") {
    oracle::Rng rng(11);
    std::uniform_int_distribution<int> dim(1, 8);
    for (int trial = 0; trial < 250; ++trial) {
      const int m = dim(rng);
      const int n = std::uniform_int_distribution<int>(1, 6)(rng);
      const int r = std::uniform_int_distribution<int>(0, std::min(m, n))(rng);
      const Matrix a = r == 0 ? Matrix::Zero(m, n) : random_rank(rng, m, n, r);
      const Matrix p = linalg::pseudoinverse(a);
      const double scale = std::max(1.0, a.norm()) * std::max(1.0, p.norm());
      const double tau = 1e-9 * scale * scale;
      CHECK((a * p * a - a).norm() <= tau);
      CHECK((p * a * p - p).norm() <= tau * std::max(1.0, p.norm()));
      CHECK(((a * p).transpose() - a * p).norm() <= tau);
      CHECK(((p * a).transpose() - p * a).norm() <= tau);
      CHECK(linalg::rank_of(a) == static_cast<std::size_t>(r));
    }
  }

  TEST_CASE("psd_sqrt") {
    CHECK(linalg::max_abs(linalg::psd_sqrt(mat({{4, 0}, {0, 0}})) - mat({{2, 0}, {0, 0}})) < 1e-15);
    CHECK(linalg::max_abs(linalg::psd_sqrt(Matrix::Identity(3, 3)) - Matrix::Identity(3, 3)) < 1e-15);
    const Matrix m = fixtures::six_case_matrix();
    const Matrix r = linalg::psd_sqrt(m);
    CHECK(linalg::max_abs(r * r - m) < 1e-10);
    CHECK(linalg::max_abs(r - r.transpose()) == 0.0);
  }

  TEST_CASE("psd_sqrt clamps rounding-level negatives and rejects real ones") {
    CHECK_NOTHROW(linalg::psd_sqrt(mat({{1, 0}, {0, -1e-14}})));
    try {
      linalg::psd_sqrt(mat({{1, 0}, {0, -1e-3}}));
      FAIL("expected NotPSD");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::NotPSD);
    }
  }

  TEST_CASE("psd_sqrt on random PSD matrices") {
    oracle::Rng rng(3);
    for (int trial = 0; trial < 100; ++trial) {
      const int n = std::uniform_int_distribution<int>(1, 6)(rng);
      const int r = std::uniform_int_distribution<int>(0, n)(rng);
      const Matrix b = r == 0 ? Matrix::Zero(n, n) : random_rank(rng, r, n, r);
      const Matrix m = b.transpose() * b;
      const Matrix root = linalg::psd_sqrt(m);
      CHECK(linalg::max_abs(root - root.transpose()) == 0.0);
      CHECK(linalg::sym_eigen(root).eigenvalues(0) >= -1e-12 * std::max(1.0, root.norm()));
      CHECK(linalg::max_abs(root * root - m) <= 1e-10 * std::max(1.0, linalg::max_abs(m)));
    }
  }

  TEST_CASE("rank_of") {
    CHECK(linalg::rank_of(mat({{1, 0}, {-1, 1}, {0, 2}})) == 2);
    CHECK(linalg::rank_of(Matrix::Zero(3, 4)) == 0);
    CHECK(linalg::rank_of(mat({{1, 0}, {0, 0}, {0, 0}})) == 1);
  }

  TEST_CASE("rank_of is invariant under orthogonal left factors") {
    oracle::Rng rng(5);
    for (int trial = 0; trial < 120; ++trial) {
      const int m = std::uniform_int_distribution<int>(1, 7)(rng);
      const int n = std::uniform_int_distribution<int>(1, 6)(rng);
      const int r = std::uniform_int_distribution<int>(0, std::min(m, n))(rng);
      const Matrix a = r == 0 ? Matrix::Zero(m, n) : random_rank(rng, m, n, r);
      const Matrix q = oracle::random_orthogonal(rng, static_cast<std::size_t>(m));
      CHECK(linalg::rank_of(q * a) == linalg::rank_of(a));
    }
  }

  TEST_CASE("colspace_projector") {
    CHECK(linalg::max_abs(linalg::colspace_projector(mat({{4, 0}, {0, 0}})) - mat({{1, 0}, {0, 0}})) <
          1e-15);
    CHECK(linalg::max_abs(linalg::colspace_projector(fixtures::six_case_matrix()) -
                          Matrix::Identity(2, 2)) < 1e-14);
    // span{(1, 1)}: v v^T / (v^T v).
    const Vector v = vec({1, 1});
    const Matrix want = v * v.transpose() / v.squaredNorm();
    CHECK(linalg::max_abs(linalg::colspace_projector(mat({{1, 1}, {1, 1}})) - want) < 1e-14);
    CHECK_THROWS_AS(linalg::colspace_projector(mat({{1, 0}, {0, -1}})), Error);
  }

  TEST_CASE("colspace_projector fixes the range of M") {
    oracle::Rng rng(9);
    for (int trial = 0; trial < 100; ++trial) {
      const int n = std::uniform_int_distribution<int>(1, 6)(rng);
      const int r = std::uniform_int_distribution<int>(1, n)(rng);
      const Matrix b = random_rank(rng, r, n, r);
      const Matrix m = b.transpose() * b;
      const Matrix p = linalg::colspace_projector(m);
      const Vector y = m * oracle::random_normal(rng, n);
      CHECK((p * y - y).norm() <= 1e-10 * std::max(1.0, y.norm()));
      CHECK(linalg::max_abs(p * p - p) < 1e-12);
      CHECK(linalg::max_abs(p - p.transpose()) < 1e-12);
      CHECK(linalg::max_abs(p * m - m) <= 1e-10 * std::max(1.0, linalg::max_abs(m)));
    }
  }
}
