#include "lmph/persistence.hpp"

#include <algorithm>
#include <iomanip>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>

#include "lmph/errors.hpp"

namespace lmph {

namespace {

/// Top faces sorted by arrival time, each with its signed facet list over
/// (k-1)-face colex ranks.
struct TimedRow {
  double time;
  Index rank;
  SparseVec facets;  // sorted by coordinate
};

std::vector<TimedRow> timed_rows(const Filtration& f, const PrimeField& field, double max_time) {
  const int k = f.k();
  std::vector<TimedRow> rows;
  std::vector<int> vertices(static_cast<std::size_t>(k + 1));
  std::iota(vertices.begin(), vertices.end(), 0);
  std::vector<Index> facets(static_cast<std::size_t>(k + 1));
  Index top = 0;
  do {
    const double t = f.top_times()[top];
    if (t <= max_time) {
      facet_ranks(vertices, f.binomials(), facets);
      SparseVec v;
      for (int i = 0; i <= k; ++i) {
        v.emplace_back(static_cast<std::uint32_t>(facets[static_cast<std::size_t>(i)]),
                       field.from_int(i % 2 == 0 ? 1 : -1));
      }
      std::sort(v.begin(), v.end());
      rows.push_back({t, top, std::move(v)});
    }
    ++top;
  } while (colex_next(vertices, f.n()));
  std::sort(rows.begin(), rows.end(), [](const TimedRow& a, const TimedRow& b) { return a.time < b.time; });
  return rows;
}

void check_time(const Filtration& f, double t, const char* what) {
  if (!(t >= 0.0 && t <= f.n())) {
    throw InvalidParameters(std::string(what) + " must lie in [0, n]");
  }
}

}  // namespace

VerboseDiagram::VerboseDiagram(int n, int k, std::uint64_t seed, std::uint64_t normalizer,
                               std::vector<Atom> atoms)
    : n_(n), k_(k), seed_(seed), normalizer_(normalizer) {
  if (normalizer == 0) throw InvalidParameters("VerboseDiagram: normalizer must be positive");
  std::sort(atoms.begin(), atoms.end(), [](const Atom& a, const Atom& b) {
    return a.birth != b.birth ? a.birth < b.birth : a.death < b.death;
  });
  std::uint64_t total = 0;
  for (const Atom& a : atoms) {
    if (!(a.birth <= a.death)) throw InvalidParameters("VerboseDiagram: atom with birth > death");
    if (a.multiplicity == 0) throw InvalidParameters("VerboseDiagram: zero multiplicity");
    total += a.multiplicity;
    if (!atoms_.empty() && atoms_.back().birth == a.birth && atoms_.back().death == a.death) {
      atoms_.back().multiplicity += a.multiplicity;
    } else {
      atoms_.push_back(a);
    }
  }
  if (total > normalizer) throw InvalidParameters("VerboseDiagram: total multiplicity exceeds normalizer");
}

std::uint64_t VerboseDiagram::total_multiplicity() const noexcept {
  std::uint64_t total = 0;
  for (const Atom& a : atoms_) total += a.multiplicity;
  return total;
}

std::uint64_t VerboseDiagram::count_at_most(double r, double s) const noexcept {
  std::uint64_t count = 0;
  for (const Atom& a : atoms_) {
    if (a.birth > r) break;  // sorted by birth
    if (a.death <= s) count += a.multiplicity;
  }
  return count;
}

VerboseDiagram reduce_diagram(const Filtration& f, std::uint64_t p) {
  const PrimeField field(p);
  const int k = f.k();
  const std::vector<double> ridge_times = f.face_times(k);
  const Index ridge_count = ridge_times.size();
  // Filtration position of each (k-1)-face: by (time, colex rank). Facets of
  // a top face share its time at the latest, and all (k-1)-faces precede
  // any top face of equal time (dimension order), so positions of rows are
  // consistent with the full face order.
  std::vector<std::uint32_t> by_position(ridge_count);
  std::iota(by_position.begin(), by_position.end(), 0U);
  std::sort(by_position.begin(), by_position.end(), [&](std::uint32_t a, std::uint32_t b) {
    return ridge_times[a] != ridge_times[b] ? ridge_times[a] < ridge_times[b] : a < b;
  });
  std::vector<std::uint32_t> position(ridge_count);
  for (std::uint32_t i = 0; i < ridge_count; ++i) position[by_position[i]] = i;

  const std::uint64_t target = f.normalizer();
  std::vector<Atom> atoms;
  atoms.reserve(target);
  std::vector<std::int64_t> pivot_of(ridge_count, -1);
  std::vector<SparseVec> pivots;
  for (TimedRow& row : timed_rows(f, field, f.n())) {
    if (atoms.size() == target) break;  // every cycle has died
    SparseVec col;
    col.reserve(row.facets.size());
    for (const auto& [rank, value] : row.facets) col.emplace_back(position[rank], value);
    std::sort(col.begin(), col.end());
    // Reduce by the pivot owning the current lowest (= last) entry.
    while (!col.empty()) {
      const std::int64_t pivot = pivot_of[col.back().first];
      if (pivot < 0) break;
      const SparseVec& other = pivots[static_cast<std::size_t>(pivot)];
      col = sparse_axpy(field, col, col.back().second, other);
    }
    if (col.empty()) continue;  // creates a k-cycle: no event in degree k-1
    const std::uint64_t scale = field.inv(col.back().second);
    for (auto& entry : col) entry.second = field.mul(entry.second, scale);
    const std::uint32_t low = col.back().first;
    pivot_of[low] = static_cast<std::int64_t>(pivots.size());
    pivots.push_back(std::move(col));
    atoms.push_back({ridge_times[by_position[low]], row.time, 1});
  }
  if (atoms.size() != target) {
    throw InvariantViolation("reduce_diagram: found " + std::to_string(atoms.size()) +
                             " persistence pairs, expected C(n-1,k) = " + std::to_string(target));
  }
  return VerboseDiagram(f.n(), k, f.seed(), target, std::move(atoms));
}

double diagram_cdf(const VerboseDiagram& d, double r, double s) noexcept {
  return static_cast<double>(d.count_at_most(r, s)) / static_cast<double>(d.normalizer());
}

VerboseDiagram off_diagonal_restriction(const VerboseDiagram& d) {
  std::vector<Atom> kept;
  for (const Atom& a : d.atoms()) {
    if (a.birth < a.death) kept.push_back(a);
  }
  return VerboseDiagram(d.n(), d.k(), d.seed(), d.normalizer(), std::move(kept));
}

double diagram_diagonal_mass(const VerboseDiagram& d) noexcept {
  std::uint64_t total = 0;
  for (const Atom& a : d.atoms()) {
    if (a.birth == a.death) total += a.multiplicity;
  }
  return static_cast<double>(total) / static_cast<double>(d.normalizer());
}

double diagram_tail_mass(const VerboseDiagram& d, double u) noexcept {
  std::uint64_t total = 0;
  for (const Atom& a : d.atoms()) {
    if (a.death > u) total += a.multiplicity;
  }
  return static_cast<double>(total) / static_cast<double>(d.normalizer());
}

BettiGrid betti_grid(const Filtration& f, std::span<const double> r_list, std::span<const double> s_list,
                     std::uint64_t p) {
  const PrimeField field(p);
  for (double r : r_list) check_time(f, r, "betti_grid: r");
  for (double s : s_list) check_time(f, s, "betti_grid: s");
  BettiGrid grid;
  grid.r_values.assign(r_list.begin(), r_list.end());
  grid.s_values.assign(s_list.begin(), s_list.end());
  grid.values.assign(r_list.size() * s_list.size(), 0);
  if (r_list.empty() || s_list.empty()) return grid;

  const double s_max = *std::max_element(s_list.begin(), s_list.end());
  const std::vector<TimedRow> rows = timed_rows(f, field, s_max);
  std::vector<std::size_t> s_order(s_list.size());
  std::iota(s_order.begin(), s_order.end(), std::size_t{0});
  std::sort(s_order.begin(), s_order.end(), [&](std::size_t a, std::size_t b) { return s_list[a] < s_list[b]; });
  const Index ridge_count = f.face_count(f.k());

  // rank K(s_j) by one sweep over rows in time order.
  std::vector<std::int64_t> rank_k(s_list.size());
  {
    EchelonBasis basis(p, ridge_count);
    std::size_t next = 0;
    for (std::size_t j : s_order) {
      while (next < rows.size() && rows[next].time <= s_list[j]) basis.insert(rows[next++].facets);
      rank_k[j] = static_cast<std::int64_t>(basis.rank());
    }
  }

  const std::vector<double> ridge_times = f.face_times(f.k());
  for (std::size_t i = 0; i < r_list.size(); ++i) {
    const double r = r_list[i];
    EchelonBasis basis(p, ridge_count);
    std::size_t next = 0;
    for (std::size_t j : s_order) {
      const double s = s_list[j];
      std::int64_t value = rank_k[j];
      if (r < s) {
        // M(r, s): rows in (r, s], columns of (k-1)-faces absent at r.
        while (next < rows.size() && rows[next].time <= s) {
          const TimedRow& row = rows[next++];
          if (row.time <= r) continue;
          SparseVec v;
          for (const auto& entry : row.facets) {
            if (ridge_times[entry.first] > r) v.push_back(entry);
          }
          basis.insert(std::move(v));
        }
        value -= static_cast<std::int64_t>(basis.rank());
      }
      grid.values[i * s_list.size() + j] = value;
    }
  }
  return grid;
}

std::int64_t cycles_in_boundaries(const Filtration& f, double r, double s) {
  check_time(f, r, "r");
  check_time(f, s, "s");
  const auto rank_k = static_cast<std::int64_t>(rank_checked(coboundary_matrix(f, s)));
  if (r >= s) return rank_k;
  return rank_k - static_cast<std::int64_t>(rank_checked(coboundary_matrix(f, s, r)));
}

std::int64_t cycle_space_dim(const Filtration& f, double r) {
  check_time(f, r, "r");
  const SparseSignMatrix lower = lower_boundary_matrix(f, r);
  return static_cast<std::int64_t>(lower.rows()) - static_cast<std::int64_t>(rank_checked(lower));
}

std::int64_t persistent_betti(const Filtration& f, double r, double s) {
  return cycle_space_dim(f, r) - cycles_in_boundaries(f, r, s);
}

std::vector<double> event_times(const Filtration& f, const VerboseDiagram& d) {
  double last_death = 0.0;
  for (const Atom& a : d.atoms()) last_death = std::max(last_death, a.death);
  std::vector<double> times;
  for (double t : f.top_times()) {
    if (t <= last_death) times.push_back(t);
  }
  std::sort(times.begin(), times.end());
  return times;
}

GoodBasis good_basis(const Filtration& f, std::uint64_t p) {
  const std::uint64_t target = f.normalizer();
  if (target > kGoodBasisLimit) {
    throw OracleScaleError("good_basis: C(n-1,k) = " + std::to_string(target) + " exceeds oracle limit " +
                           std::to_string(kGoodBasisLimit));
  }
  const PrimeField field(p);
  const VerboseDiagram diagram = reduce_diagram(f, p);
  const std::vector<double> times = event_times(f, diagram);
  const std::vector<double> ridge_times = f.face_times(f.k());
  const auto ridge_count = static_cast<std::uint32_t>(ridge_times.size());
  const std::vector<TimedRow> rows = timed_rows(f, field, times.empty() ? 0.0 : times.back());

  GoodBasis result;
  result.prime = p;
  EchelonBasis chosen(p, ridge_count);
  for (double b : times) {
    // Relabel coordinates so that faces absent at time b come first; then
    // echelon vectors whose leading coordinate is a present face are
    // supported on present faces and span B(d) ∩ C(b) = Z(b) ∩ B(d).
    std::vector<std::uint32_t> label(ridge_count);
    std::vector<std::uint32_t> original(ridge_count);
    std::uint32_t next_label = 0;
    for (std::uint32_t c = 0; c < ridge_count; ++c) {
      if (ridge_times[c] > b) label[c] = next_label++;
    }
    const std::uint32_t first_present = next_label;
    for (std::uint32_t c = 0; c < ridge_count; ++c) {
      if (ridge_times[c] <= b) label[c] = next_label++;
    }
    for (std::uint32_t c = 0; c < ridge_count; ++c) original[label[c]] = c;

    EchelonBasis boundaries(p, ridge_count);
    std::size_t next = 0;
    for (double d : times) {
      while (next < rows.size() && rows[next].time <= d) {
        SparseVec v;
        for (const auto& [c, value] : rows[next].facets) v.emplace_back(label[c], value);
        std::sort(v.begin(), v.end());
        boundaries.insert(std::move(v));
        ++next;
      }
      if (d < b) continue;  // Z(b) ∩ B(d) = B(d) already handled at d's own b
      for (const SparseVec& v : boundaries.vectors()) {
        if (v.front().first < first_present) continue;
        SparseVec back;
        for (const auto& [c, value] : v) back.emplace_back(original[c], value);
        std::sort(back.begin(), back.end());
        if (chosen.insert(back)) result.cycles.push_back({std::move(back), b, d});
      }
      if (chosen.rank() == target) return result;
    }
  }
  if (chosen.rank() != target) {
    throw InvariantViolation("good_basis: greedy selection did not reach C(n-1,k) vectors");
  }
  return result;
}

void write_diagram(std::ostream& os, const VerboseDiagram& d) {
  os << d.n() << ' ' << d.k() << ' ' << d.seed() << ' ' << d.normalizer() << '\n';
  const auto old_precision = os.precision(std::numeric_limits<double>::max_digits10);
  for (const Atom& a : d.atoms()) os << a.birth << ' ' << a.death << ' ' << a.multiplicity << '\n';
  os.precision(old_precision);
}

VerboseDiagram read_diagram(std::istream& is) {
  std::string line;
  if (!std::getline(is, line)) throw ParseError("diagram file: missing header");
  std::istringstream header(line);
  int n = 0;
  int k = 0;
  std::uint64_t seed = 0;
  std::uint64_t normalizer = 0;
  if (!(header >> n >> k >> seed >> normalizer)) {
    throw ParseError("diagram file: header must be 'n k seed normalizer'");
  }
  std::vector<Atom> atoms;
  while (std::getline(is, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream fields(line);
    Atom a;
    if (!(fields >> a.birth >> a.death >> a.multiplicity)) throw ParseError("diagram file: bad atom line");
    atoms.push_back(a);
  }
  try {
    return VerboseDiagram(n, k, seed, normalizer, std::move(atoms));
  } catch (const InvalidParameters& e) {
    throw ParseError(std::string("diagram file: ") + e.what());
  }
}

}  // namespace lmph
