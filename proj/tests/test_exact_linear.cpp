#include <random>
#include <sstream>

#include "doctest.h"
#include "lmph/errors.hpp"
#include "lmph/filtration.hpp"
#include "lmph/leaf_removal.hpp"
#include "lmph/rank.hpp"
#include "lmph/rng.hpp"
#include "lmph/tanner.hpp"

using namespace lmph;

namespace {

SparseSignMatrix random_sign_matrix(std::size_t rows, std::size_t cols, double density, Rng& rng) {
  std::vector<std::vector<int>> dense(rows, std::vector<int>(cols, 0));
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (auto& row : dense)
    for (int& x : row)
      if (u(rng) < density) x = u(rng) < 0.5 ? -1 : 1;
  return SparseSignMatrix::from_dense(dense);
}

}  // namespace

TEST_CASE("matrix construction validates entries") {
  CHECK_THROWS_AS(SparseSignMatrix(2, 2, {{0, 0, 1}, {0, 0, -1}}), InvalidParameters);
  CHECK_THROWS_AS(SparseSignMatrix(2, 2, {{0, 2, 1}}), InvalidParameters);
  CHECK_THROWS_AS(SparseSignMatrix(2, 2, {{0, 0, 2}}), InvalidParameters);
  const auto m = SparseSignMatrix::from_dense({{1, 0, -1}, {0, 1, 1}});
  CHECK(m.nnz() == 4);
  CHECK(m.transpose().to_dense() == std::vector<std::vector<int>>{{1, 0}, {0, 1}, {-1, 1}});
}

TEST_CASE("matrix text format round trip and errors") {
  const auto m = SparseSignMatrix::from_dense({{1, 0}, {1, 1}});
  std::stringstream ss;
  write_matrix(ss, m);
  CHECK(ss.str() == "2 2\n0 0 1\n1 0 1\n1 1 1\n");
  CHECK(read_matrix(ss).to_dense() == m.to_dense());
  std::istringstream bad_value("1 1\n0 0 2\n");
  CHECK_THROWS_AS(read_matrix(bad_value), ParseError);
  std::istringstream out_of_range("1 1\n0 1 1\n");
  CHECK_THROWS_AS(read_matrix(out_of_range), ParseError);
  std::istringstream dup("1 1\n0 0 1\n0 0 -1\n");
  CHECK_THROWS_AS(read_matrix(dup), ParseError);
  std::istringstream empty("");
  CHECK_THROWS_AS(read_matrix(empty), ParseError);
}

TEST_CASE("primality and field arithmetic") {
  CHECK(is_prime(kPrimaryPrime));
  CHECK(is_prime(kConfirmPrime));
  CHECK_FALSE(is_prime((std::uint64_t{1} << 61) + 1));
  CHECK_FALSE(is_prime(561));  // Carmichael
  CHECK_THROWS_AS(PrimeField(15), InvalidParameters);
  CHECK_THROWS_AS(PrimeField(2), InvalidParameters);
  const PrimeField f(kPrimaryPrime);
  for (std::uint64_t a : {std::uint64_t{1}, std::uint64_t{2}, std::uint64_t{12345}, kPrimaryPrime - 1}) CHECK(f.mul(a, f.inv(a)) == 1);
  CHECK(f.from_int(-1) == kPrimaryPrime - 1);
  CHECK_THROWS_AS(f.inv(0), DomainError);
}

TEST_CASE("rank: hand examples") {
  const auto triangle = SparseSignMatrix::from_dense({{-1, 1, 0}, {-1, 0, 1}, {0, -1, 1}});
  CHECK(rank_mod_p(triangle) == 2);
  CHECK(rank_exact_small(triangle) == 2);
  CHECK(rank_mod_p(SparseSignMatrix(3, 4, {})) == 0);
  CHECK(rank_exact_small(SparseSignMatrix(3, 4, {})) == 0);
  CHECK(rank_mod_p(SparseSignMatrix(0, 0, {})) == 0);
  const auto identity = SparseSignMatrix::from_dense({{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}});
  CHECK(rank_exact_small(identity) == 4);
  CHECK(rank_mod_p(identity) == 4);
  CHECK(rank_exact_small(SparseSignMatrix::from_dense({{1, 0}, {1, 1}})) == 2);
  // Singular over Q though every column and row has two entries.
  const auto cycle4 = SparseSignMatrix::from_dense({{1, 1, 0, 0}, {0, 1, 1, 0}, {0, 0, 1, 1}, {1, 0, 0, -1}});
  CHECK(rank_exact_small(cycle4) == 4);
  const auto cycle4s = SparseSignMatrix::from_dense({{1, 1, 0, 0}, {0, 1, 1, 0}, {0, 0, 1, 1}, {1, 0, 0, 1}});
  CHECK(rank_exact_small(cycle4s) == 3);
  CHECK(rank_mod_p(cycle4s) == 3);
  CHECK(rank_mod_p(cycle4s, kConfirmPrime) == 3);
  // A matrix whose rank differs over F_2 and Q; odd primes agree with Q.
  CHECK(rank_mod_p(cycle4) == 4);
  const Filtration f = Filtration::sample(6, 2, 3);
  CHECK(rank_checked(coboundary_matrix(f, 6.0)) == 10);
}

TEST_CASE("rational oracle refuses large inputs") {
  CHECK_THROWS_AS(rank_exact_small(SparseSignMatrix(61, 61, {})), OracleScaleError);
  CHECK_NOTHROW(rank_exact_small(SparseSignMatrix(60, 500, {})));
}

TEST_CASE("rank_mod_p agrees with the rational oracle on random sign matrices") {
  Rng rng = make_rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    const double density = 0.1 + 0.5 * (trial % 5) / 4.0;
    const auto m = random_sign_matrix(12, 15, density, rng);
    const std::size_t exact = rank_exact_small(m);
    CHECK(rank_mod_p(m, kPrimaryPrime) == exact);
    CHECK(rank_mod_p(m, kConfirmPrime) == exact);
    CHECK(rank_mod_p(m.transpose()) == exact);
  }
  // Larger, sparser instances exercise the elimination phase beyond peeling.
  for (int trial = 0; trial < 20; ++trial) {
    const auto m = random_sign_matrix(60, 45, 0.06, rng);
    CHECK(rank_checked(m) == rank_exact_small(m));
  }
}

TEST_CASE("echelon basis") {
  EchelonBasis basis(kPrimaryPrime, 4);
  const PrimeField& f = basis.field();
  CHECK(basis.insert({{0, 1}, {1, f.from_int(-1)}}));
  CHECK(basis.insert({{1, 1}, {2, f.from_int(-1)}}));
  CHECK_FALSE(basis.insert({{0, 1}, {2, f.from_int(-1)}}));
  CHECK(basis.contains({{0, 2}, {2, f.from_int(-2)}}));
  CHECK_FALSE(basis.contains({{3, 1}}));
  CHECK(basis.rank() == 2);
  CHECK(basis.reduce_fully({{0, 1}, {3, 5}}) == SparseVec{{2, 1}, {3, 5}});
  CHECK_THROWS_AS(basis.insert({{4, 1}}), InvalidParameters);
}

TEST_CASE("leaf removal: worked example [[1,0],[1,1]]") {
  const auto m = SparseSignMatrix::from_dense({{1, 0}, {1, 1}});
  const PeelResult p = leaf_removal(m);
  CHECK(p.columns_at(1) == std::vector<std::uint32_t>{1});
  CHECK(p.rows_at(1) == std::vector<std::uint32_t>{1});
  CHECK(p.columns_at(2) == std::vector<std::uint32_t>{0, 1});
  CHECK(p.rows_at(2) == std::vector<std::uint32_t>{0, 1});
  CHECK(p.rounds == 2);
  CHECK(p.removed_rank == 2);
  CHECK(p.residual.rows() == 0);
  CHECK(p.residual.cols() == 0);
  CHECK(p.rank_upper_bound() == 2);
  const auto w = peel_witnesses(m, p);
  REQUIRE(w.size() == 2);
  CHECK(w[0] == std::pair<std::uint32_t, std::uint32_t>{1, 1});
  CHECK(w[1] == std::pair<std::uint32_t, std::uint32_t>{0, 0});
  const PeelResult one_round = leaf_removal(m, 1);
  CHECK(one_round.rounds == 1);
  CHECK(one_round.removed_rank == 1);
}

TEST_CASE("leaf removal: degree-zero columns and no rows") {
  const SparseSignMatrix m(0, 3, {});
  const PeelResult p = leaf_removal(m);
  CHECK(p.columns_at(1) == std::vector<std::uint32_t>{0, 1, 2});
  CHECK(p.removed_rank == 0);
  CHECK(p.rank_upper_bound() == 0);
}

TEST_CASE("leaf removal transpose bound: hand examples") {
  const auto wide = SparseSignMatrix::from_dense({{1, 1}});
  CHECK(leaf_removal(wide).rank_upper_bound() == 1);
  CHECK(leaf_removal(wide.transpose()).rank_upper_bound() == 1);
  CHECK(leaf_removal_transpose_bound(wide) == 1);
  const auto sym = SparseSignMatrix::from_dense({{1, 1, 0}, {1, 0, 1}, {0, 1, 1}});
  CHECK(leaf_removal(sym).rank_upper_bound() == leaf_removal(sym.transpose()).rank_upper_bound());
}

TEST_CASE("leaf removal certificate and bounds on random and coboundary matrices") {
  Rng rng = make_rng(77);
  for (int trial = 0; trial < 60; ++trial) {
    const auto m = random_sign_matrix(14, 18, 0.12, rng);
    const PeelResult p = leaf_removal(m);
    const std::size_t rank = rank_exact_small(m);
    CHECK(p.removed_rank + rank_exact_small(p.residual) == rank);
    CHECK(p.rank_upper_bound() >= rank);
    CHECK(leaf_removal_transpose_bound(m) >= rank);
    // Nested sets and witnesses.
    for (int i = 1; i < p.rounds; ++i) {
      const auto a = p.columns_at(i);
      const auto b = p.columns_at(i + 1);
      CHECK(std::includes(b.begin(), b.end(), a.begin(), a.end()));
      const auto ra = p.rows_at(i);
      const auto rb = p.rows_at(i + 1);
      CHECK(std::includes(rb.begin(), rb.end(), ra.begin(), ra.end()));
    }
    CHECK(p.rounds <= static_cast<int>(m.rows() + m.cols()));
    CHECK(peel_witnesses(m, p).size() == p.removed_rank);
  }
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const Filtration f = Filtration::sample(60, 1, seed);
    const auto m = coboundary_matrix(f, 2.0, 0.5);
    const PeelResult p = leaf_removal(m);
    CHECK(p.removed_rank + rank_checked(p.residual) == rank_checked(m));
    CHECK(leaf_removal_transpose_bound(m) >= rank_checked(m));
  }
}

TEST_CASE("tanner graph") {
  const auto diag = SparseSignMatrix::from_dense({{1, 0, 0}, {0, -1, 0}, {0, 0, 1}});
  const TannerGraph g(diag);
  CHECK(g.edge_count() == 3);
  for (std::uint32_t r = 0; r < 3; ++r) {
    REQUIRE(g.neighbors(g.row_vertex(r)).size() == 1);
    CHECK(g.neighbors(g.row_vertex(r))[0] == g.col_vertex(r));
  }
  const TannerGraph path(SparseSignMatrix::from_dense({{1, 1}}));
  CHECK(path.degree(0) == 2);
  CHECK(path.degree(path.col_vertex(0)) == 1);
  CHECK(path.degree(path.col_vertex(1)) == 1);
  const Filtration f = Filtration::sample(8, 2, 5);
  const TannerGraph j = tanner(coboundary_matrix(f, 8.0));
  for (std::uint32_t r = 0; r < j.row_count(); ++r) CHECK(j.degree(r) == 3);
}
