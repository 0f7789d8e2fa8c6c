#include <algorithm>
#include <numeric>
#include <sstream>

#include "doctest.h"
#include "lmph/combinatorics.hpp"
#include "lmph/errors.hpp"
#include "lmph/filtration.hpp"
#include "lmph/rank.hpp"

using namespace lmph;

TEST_CASE("binomial coefficients") {
  CHECK(binomial(0, 0) == 1);
  CHECK(binomial(5, 2) == 10);
  CHECK(binomial(6, 3) == 20);
  CHECK(binomial(4, 5) == 0);
  CHECK(binomial(500, 2) == 124750);
  CHECK(binomial(60, 30) == 118264581564861424ULL);
  CHECK_THROWS_AS(binomial(200, 100), InvalidParameters);
  const BinomialTable t(10, 4);
  for (int n = 0; n <= 10; ++n)
    for (int k = 0; k <= 4; ++k) CHECK(t(n, k) == binomial(n, k));
}

TEST_CASE("colex rank and unrank are mutual inverses over the full range") {
  const int n = 9;
  const BinomialTable binom(n, 5);
  for (int size = 1; size <= 5; ++size) {
    std::vector<int> v(static_cast<std::size_t>(size));
    std::iota(v.begin(), v.end(), 0);
    Index expected = 0;
    do {
      CHECK(colex_rank(v, binom) == expected);
      std::vector<int> back(static_cast<std::size_t>(size));
      colex_unrank(expected, back, binom);
      CHECK(back == v);
      ++expected;
    } while (colex_next(v, n));
    CHECK(expected == binomial(n, size));
  }
  std::vector<int> out(2);
  CHECK_THROWS_AS(colex_unrank(binomial(n, 2), out, binom), InvalidParameters);
}

TEST_CASE("facet ranks match ranks of explicit facets") {
  const BinomialTable binom(12, 4);
  const std::vector<int> simplex{1, 4, 7, 11};
  std::vector<Index> facets(4);
  facet_ranks(simplex, binom, facets);
  for (std::size_t i = 0; i < 4; ++i) {
    std::vector<int> facet;
    for (std::size_t j = 0; j < 4; ++j) if (j != i) facet.push_back(simplex[j]);
    CHECK(facets[i] == colex_rank(facet, binom));
  }
}

TEST_CASE("face validation") {
  CHECK_THROWS_AS(Face({2, 1}), InvalidFace);
  CHECK_THROWS_AS(Face({0, 1}), InvalidFace);
  CHECK_THROWS_AS(Face({1, 1}), InvalidFace);
  CHECK(Face({1, 3}).is_subset_of(Face({1, 2, 3})));
  CHECK_FALSE(Face({1, 4}).is_subset_of(Face({1, 2, 3})));
}

TEST_CASE("sampling: counts, ranges, determinism") {
  const Filtration two = Filtration::sample(2, 1, 5);
  REQUIRE(two.top_count() == 1);
  CHECK(two.top_times()[0] > 0.0);
  CHECK(two.top_times()[0] < 2.0);
  CHECK(Filtration::sample(5, 1, 1).top_count() == 10);
  const Filtration a = Filtration::sample(6, 2, 7);
  const Filtration b = Filtration::sample(6, 2, 7);
  CHECK(std::equal(a.top_times().begin(), a.top_times().end(), b.top_times().begin()));
  const Filtration c = Filtration::sample(6, 2, 8);
  CHECK_FALSE(std::equal(a.top_times().begin(), a.top_times().end(), c.top_times().begin()));
  CHECK_THROWS_AS(Filtration::sample(2, 2, 1), InvalidParameters);
  CHECK_THROWS_AS(Filtration::sample(3, 0, 1), InvalidParameters);
  const Filtration big = Filtration::sample(40, 1, 3);
  std::vector<double> sorted(big.top_times().begin(), big.top_times().end());
  std::sort(sorted.begin(), sorted.end());
  CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
  CHECK(sorted.front() >= 0.0);
  CHECK(sorted.back() <= 40.0);
}

TEST_CASE("from_times validates") {
  CHECK_THROWS_AS(Filtration::from_times(3, 1, 0, {0.5, 0.5, 1.0}), InvalidParameters);
  CHECK_THROWS_AS(Filtration::from_times(3, 1, 0, {0.5, 4.0, 1.0}), InvalidParameters);
  CHECK_THROWS_AS(Filtration::from_times(3, 1, 0, {0.5, 1.0}), InvalidParameters);
}

TEST_CASE("face times are minima over containers") {
  const Filtration two = Filtration::sample(2, 1, 11);
  const double t = two.top_times()[0];
  CHECK(two.face_time(Face{1}) == t);
  CHECK(two.face_time(Face{1, 2}) == t);
  // n=3, k=1: colex order of edges is {1,2}, {1,3}, {2,3}.
  const Filtration tri = Filtration::from_times(3, 1, 0, {2.5, 0.5, 1.5});
  CHECK(tri.face_time(Face{1}) == 0.5);
  CHECK(tri.face_time(Face{2}) == 1.5);
  CHECK(tri.face_time(Face{3}) == 0.5);
  CHECK(tri.face_time(Face{1, 2}) == 2.5);
  CHECK_THROWS_AS(tri.face_time(Face{4}), InvalidFace);
  CHECK_THROWS_AS(tri.face_time(Face{1, 2, 3}), InvalidFace);
}

TEST_CASE("filtration is monotone and face_times agrees with face_time") {
  const Filtration f = Filtration::sample(7, 2, 99);
  for (int size = 1; size <= 3; ++size) {
    const std::vector<double> times = f.face_times(size);
    for (Index rank = 0; rank < times.size(); ++rank) {
      const Face face = f.face(size, rank);
      CHECK(f.rank_of(face) == rank);
      CHECK(times[rank] == f.face_time(face));
      if (size > 1) {
        // every facet arrives no later
        for (std::size_t drop = 0; drop < face.size(); ++drop) {
          std::vector<int> sub;
          for (std::size_t j = 0; j < face.size(); ++j) if (j != drop) sub.push_back(face.vertices()[j]);
          CHECK(f.face_time(Face(sub)) <= times[rank]);
        }
      }
    }
  }
}

TEST_CASE("complex_at: empty at 0, complete at n, closed, nested") {
  const Filtration f = Filtration::sample(6, 2, 4);
  const auto empty = complex_at(f, 0.0);
  for (const auto& faces : empty) CHECK(faces.empty());
  const auto full = complex_at(f, 6.0);
  for (int size = 1; size <= 3; ++size) CHECK(full[static_cast<std::size_t>(size - 1)].size() == binomial(6, size));
  for (double t : {1.0, 2.5, 4.0}) {
    auto cx = complex_at(f, t);
    auto later = complex_at(f, t + 0.5);
    // Lists come in colex order; sort lexicographically for set algorithms.
    for (auto& faces : cx) std::sort(faces.begin(), faces.end());
    for (auto& faces : later) std::sort(faces.begin(), faces.end());
    for (std::size_t d = 1; d < cx.size(); ++d) {
      for (const Face& face : cx[d]) {
        for (std::size_t drop = 0; drop < face.size(); ++drop) {
          std::vector<int> sub;
          for (std::size_t j = 0; j < face.size(); ++j) if (j != drop) sub.push_back(face.vertices()[j]);
          CHECK(std::binary_search(cx[d - 1].begin(), cx[d - 1].end(), Face(sub)));
        }
      }
    }
    for (std::size_t d = 0; d < cx.size(); ++d) {
      CHECK(std::includes(later[d].begin(), later[d].end(), cx[d].begin(), cx[d].end()));
    }
  }
}

TEST_CASE("coboundary matrices: hand examples") {
  const Filtration two = Filtration::sample(2, 1, 1);
  const SparseSignMatrix j2 = coboundary_matrix(two, 2.0);
  CHECK(j2.to_dense() == std::vector<std::vector<int>>{{-1, 1}});
  // Triangle: edges {0,1},{0,2},{1,2}; row of [a<b] is -e_a + e_b.
  const Filtration tri = Filtration::from_times(3, 1, 0, {2.5, 0.5, 1.5});
  const SparseSignMatrix j3 = coboundary_matrix(tri, 3.0);
  CHECK(j3.to_dense() == std::vector<std::vector<int>>{{-1, 1, 0}, {-1, 0, 1}, {0, -1, 1}});
  CHECK(rank_exact_small(j3) == 2);
  // K(1.0) keeps only the edge {1,3}.
  const SparseSignMatrix k1 = coboundary_matrix(tri, 1.0);
  CHECK(k1.rows() == 1);
  CHECK(k1.cols() == 3);
  CHECK(k1.row_ids()[0] == 1);
  // M(1.0, 3.0): drop edge {1,3} and vertices 1, 3 -> rows {1,2},{2,3}, column {2}.
  const SparseSignMatrix m = coboundary_matrix(tri, 3.0, 1.0);
  CHECK(m.to_dense() == std::vector<std::vector<int>>{{1}, {-1}});
  CHECK_THROWS_AS(coboundary_matrix(tri, 1.0, 1.0), InvalidWindow);
  CHECK_THROWS_AS(coboundary_matrix(tri, 1.0, 2.0), InvalidWindow);
}

TEST_CASE("full coboundary rank is C(n-1,k) over the rationals") {
  for (int k = 1; k <= 3; ++k) {
    for (int n = k + 1; n <= 8; ++n) {
      const Filtration f = Filtration::sample(n, k, static_cast<std::uint64_t>(10 * n + k));
      const SparseSignMatrix j = coboundary_matrix(f, n);
      CAPTURE(n);
      CAPTURE(k);
      CHECK(rank_exact_small(j) == binomial(n - 1, k));
      CHECK(rank_checked(j) == binomial(n - 1, k));
      for (std::size_t r = 0; r < j.rows(); ++r) CHECK(j.row_lines()[r].size() == static_cast<std::size_t>(k + 1));
    }
  }
}

TEST_CASE("boundary of boundary vanishes") {
  for (int k = 1; k <= 3; ++k) {
    const int n = 7;
    const Filtration f = Filtration::sample(n, k, 17);
    const auto upper = coboundary_matrix(f, n).to_dense();   // top x (k-1)-faces
    const auto lower = lower_boundary_matrix(f, n).to_dense();  // (k-1)-faces x (k-2)-faces
    for (const auto& row : upper) {
      for (std::size_t c = 0; c < lower.front().size(); ++c) {
        int sum = 0;
        for (std::size_t mid = 0; mid < row.size(); ++mid) sum += row[mid] * lower[mid][c];
        CHECK(sum == 0);
      }
    }
  }
}

TEST_CASE("M_n column count and row selection") {
  const Filtration f = Filtration::sample(20, 1, 8);
  for (auto [r, s] : {std::pair{0.5, 2.0}, std::pair{1.0, 3.0}, std::pair{0.0, 1.0}}) {
    const auto ridge = f.face_times(1);
    const auto present = static_cast<std::size_t>(std::count_if(ridge.begin(), ridge.end(), [&](double t) { return t <= r; }));
    const SparseSignMatrix m = coboundary_matrix(f, s, r);
    CHECK(m.cols() == binomial(20, 1) - present);
    std::size_t rows = 0;
    for (double t : f.top_times()) rows += (t > r && t <= s) ? 1 : 0;
    CHECK(m.rows() == rows);
  }
}

TEST_CASE("promoting count") {
  CHECK(Filtration::sample(2, 1, 3).promoting_count() == 1);
  CHECK(Filtration::sample(3, 2, 3).promoting_count() == 1);
  // All 6 orderings of the triangle's edges: exactly two promoting edges.
  std::vector<double> times{1.0, 2.0, 3.0};
  do {
    CHECK(Filtration::from_times(3, 1, 0, times).promoting_count() == 2);
  } while (std::next_permutation(times.begin(), times.end()));
  // Brute-force definition on random instances.
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const Filtration f = Filtration::sample(7, 2, seed);
    Index brute = 0;
    for (Index top = 0; top < f.top_count(); ++top) {
      const Face sigma = f.top_face(top);
      bool promoting = false;
      for (std::size_t drop = 0; drop < sigma.size(); ++drop) {
        std::vector<int> sub;
        for (std::size_t j = 0; j < sigma.size(); ++j) if (j != drop) sub.push_back(sigma.vertices()[j]);
        promoting = promoting || f.face_time(Face(sub)) == f.top_time(top);
      }
      brute += promoting ? 1 : 0;
    }
    CHECK(f.promoting_count() == brute);
  }
}

TEST_CASE("filtration text round trip and parse errors") {
  const Filtration f = Filtration::sample(6, 2, 123);
  std::stringstream ss;
  write_filtration(ss, f);
  const Filtration g = read_filtration(ss);
  CHECK(g.n() == 6);
  CHECK(g.k() == 2);
  CHECK(g.seed() == 123);
  CHECK(std::equal(f.top_times().begin(), f.top_times().end(), g.top_times().begin()));

  std::istringstream missing("3 1 0\n1 2 0.5\n1 3 1.0\n");
  CHECK_THROWS_AS(read_filtration(missing), ParseError);
  std::istringstream dup("3 1 0\n1 2 0.5\n1 2 0.7\n2 3 1.0\n");
  CHECK_THROWS_AS(read_filtration(dup), ParseError);
  std::istringstream unsorted("3 1 0\n2 1 0.5\n1 3 0.7\n2 3 1.0\n");
  CHECK_THROWS_AS(read_filtration(unsorted), ParseError);
  std::istringstream bad_time("3 1 0\n1 2 5.5\n1 3 0.7\n2 3 1.0\n");
  CHECK_THROWS_AS(read_filtration(bad_time), ParseError);
}
