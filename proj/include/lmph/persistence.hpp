// Persistent homology of the filtration in degree k-1, computed three ways:
//  * reduce_diagram: column reduction of the boundary matrix in filtration
//    order, producing the verbose diagram (including zero-length atoms);
//  * betti_grid / cycles_in_boundaries: the rank-difference identity
//      dim Z(r) ∩ B(s) = rank K(s) - rank M(r, s)   (r < s),
//      dim Z(r) ∩ B(s) = rank K(s)                   (r >= s);
//  * good_basis: a greedy basis of Z_{k-1} adapted to (birth, death).
#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "lmph/filtration.hpp"
#include "lmph/rank.hpp"

namespace lmph {

struct Atom {
  double birth = 0.0;
  double death = 0.0;
  std::uint64_t multiplicity = 1;
  friend bool operator==(const Atom&, const Atom&) = default;
};

/// Weighted multiset of (birth, death) atoms with a normalizing constant.
class VerboseDiagram {
 public:
  VerboseDiagram() = default;
  /// Merges equal atoms and sorts by (birth, death). Validates birth <= death,
  /// positive multiplicities and total multiplicity <= normalizer.
  VerboseDiagram(int n, int k, std::uint64_t seed, std::uint64_t normalizer, std::vector<Atom> atoms);

  int n() const noexcept { return n_; }
  int k() const noexcept { return k_; }
  std::uint64_t seed() const noexcept { return seed_; }
  std::uint64_t normalizer() const noexcept { return normalizer_; }
  std::span<const Atom> atoms() const noexcept { return atoms_; }
  std::uint64_t total_multiplicity() const noexcept;
  /// Number of atoms (with multiplicity) satisfying birth <= r and death <= s.
  std::uint64_t count_at_most(double r, double s) const noexcept;

 private:
  int n_ = 0;
  int k_ = 0;
  std::uint64_t seed_ = 0;
  std::uint64_t normalizer_ = 1;
  std::vector<Atom> atoms_;
};

/// Verbose diagram of the filtration in degree k-1 (reduced for k = 1).
/// Faces are ordered by (time, dimension, colex rank), so facets precede the
/// top face that brings them and promoting top faces yield atoms with b = d.
VerboseDiagram reduce_diagram(const Filtration& f, std::uint64_t p = kPrimaryPrime);

/// (Sum of multiplicities with b <= r, d <= s) / normalizer.
double diagram_cdf(const VerboseDiagram& d, double r, double s) noexcept;
/// Atoms with b < d only (normalizer unchanged).
VerboseDiagram off_diagonal_restriction(const VerboseDiagram& d);
/// Mass of the atoms with b = d.
double diagram_diagonal_mass(const VerboseDiagram& d) noexcept;
/// Mass of atoms with death > u.
double diagram_tail_mass(const VerboseDiagram& d, double u) noexcept;

struct BettiGrid {
  std::vector<double> r_values;
  std::vector<double> s_values;
  /// values[i * s_values.size() + j] = dim(Z_{k-1}(r_i) ∩ B_{k-1}(s_j)).
  std::vector<std::int64_t> values;
  std::int64_t at(std::size_t i, std::size_t j) const { return values.at(i * s_values.size() + j); }
};

/// dim Z(r) ∩ B(s) on the product grid r_list x s_list, computed by
/// incremental echelon sweeps over F_p.
BettiGrid betti_grid(const Filtration& f, std::span<const double> r_list,
                     std::span<const double> s_list, std::uint64_t p = kPrimaryPrime);

/// dim Z(r) ∩ B(s) at one point via rank_checked on K(s) and M(r, s).
std::int64_t cycles_in_boundaries(const Filtration& f, double r, double s);
/// dim Z_{k-1}(r) = #(k-1)-faces at r - rank of their boundary map.
std::int64_t cycle_space_dim(const Filtration& f, double r);
/// beta^{r,s} = dim Z(r) - dim Z(r) ∩ B(s). Throws InvalidParameters unless
/// r, s lie in [0, n].
std::int64_t persistent_betti(const Filtration& f, double r, double s);

/// Sorted top-face times at which the diagram has activity: all top times up
/// to and including the last death.
std::vector<double> event_times(const Filtration& f, const VerboseDiagram& d);

struct BasisCycle {
  SparseVec coordinates;  // over (k-1)-faces (colex ranks), values mod prime
  double birth = 0.0;
  double death = 0.0;
};

struct GoodBasis {
  std::uint64_t prime = kPrimaryPrime;
  std::vector<BasisCycle> cycles;  // in selection order (birth, then death)
};

/// Largest normalizer accepted by good_basis.
inline constexpr std::uint64_t kGoodBasisLimit = 200;

/// Greedy basis of Z_{k-1}: scan (b, d) over event times lexicographically
/// and add every vector of Z(b) ∩ B(d) not already spanned. Throws
/// OracleScaleError when C(n-1, k) exceeds kGoodBasisLimit.
GoodBasis good_basis(const Filtration& f, std::uint64_t p = kPrimaryPrime);

/// Text format: "n k seed normalizer" then "birth death multiplicity" lines.
void write_diagram(std::ostream& os, const VerboseDiagram& d);
VerboseDiagram read_diagram(std::istream& is);

}  // namespace lmph
