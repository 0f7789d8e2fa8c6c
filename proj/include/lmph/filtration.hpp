// The Linial-Meshulam filtration: every (k+1)-subset of [n] (a "top face",
// i.e. a k-simplex) receives an i.i.d. Uniform[0, n] arrival time, and every
// smaller face arrives with its earliest container.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "lmph/combinatorics.hpp"
#include "lmph/face.hpp"
#include "lmph/sparse_matrix.hpp"

namespace lmph {

class Filtration {
 public:
  /// Samples one uniform time per top face; redraws exact ties.
  static Filtration sample(int n, int k, std::uint64_t seed);
  /// Wraps given top-face times (indexed by colex rank); validates range and
  /// distinctness.
  static Filtration from_times(int n, int k, std::uint64_t seed, std::vector<double> top_times);

  int n() const noexcept { return n_; }
  int k() const noexcept { return k_; }
  std::uint64_t seed() const noexcept { return seed_; }
  const BinomialTable& binomials() const noexcept { return binom_; }

  /// Number of top faces, C(n, k+1).
  Index top_count() const noexcept { return binom_(n_, k_ + 1); }
  /// Number of faces with `size` vertices, C(n, size).
  Index face_count(int size) const noexcept { return binom_(n_, size); }
  /// dim Z_{k-1} of the complete complex, C(n-1, k).
  Index normalizer() const noexcept { return binom_(n_ - 1, k_); }

  std::span<const double> top_times() const noexcept { return top_times_; }
  double top_time(Index rank) const { return top_times_.at(rank); }

  /// Face with `size` vertices and the given colex rank.
  Face face(int size, Index rank) const;
  Face top_face(Index rank) const { return face(k_ + 1, rank); }
  /// Colex rank of a face (among faces of its size); validates vertices <= n.
  Index rank_of(const Face& f) const;

  /// Arrival time of any face with 1..k+1 vertices (min over containing top faces).
  double face_time(const Face& f) const;
  /// Arrival times of all faces with `size` vertices, indexed by colex rank,
  /// computed in one pass over the top faces.
  std::vector<double> face_times(int size) const;

  /// Top faces whose arrival introduces at least one new (k-1)-face.
  Index promoting_count() const;

 private:
  Filtration(int n, int k, std::uint64_t seed, std::vector<double> times);

  int n_ = 0;
  int k_ = 0;
  std::uint64_t seed_ = 0;
  BinomialTable binom_;
  std::vector<double> top_times_;
};

/// Faces present at time t, grouped by dimension 0..k (each list in colex order).
std::vector<std::vector<Face>> complex_at(const Filtration& f, double t);

/// Signed (k)->(k-1) coboundary matrix. Without r: K_n(s), rows = top faces
/// with time <= s (in colex order), columns = all (k-1)-faces. With r (< s):
/// M_n(r, s), which additionally drops rows with time <= r and columns of
/// (k-1)-faces present at time r. Row/column labels are colex ranks.
/// Entry (sigma, tau) = (-1)^i when tau omits the i-th vertex of sigma.
SparseSignMatrix coboundary_matrix(const Filtration& f, double s,
                                   std::optional<double> r = std::nullopt);

/// Signed boundary map from the (k-1)-faces present at time r (rows) to the
/// (k-2)-faces (columns). For k = 1 the target is a single virtual empty face
/// (augmentation), so the kernel is the reduced 0-cycles.
SparseSignMatrix lower_boundary_matrix(const Filtration& f, double r);

/// Text format: "n k seed" then one "v1 ... v_{k+1} time" line per top face
/// (1-based vertices, times at round-trip precision).
void write_filtration(std::ostream& os, const Filtration& f);
Filtration read_filtration(std::istream& is);

}  // namespace lmph
