// A face of the simplex on [n]: a strictly increasing list of 1-based vertices.
#pragma once

#include <compare>
#include <initializer_list>
#include <ostream>
#include <span>
#include <vector>

namespace lmph {

class Face {
 public:
  Face() = default;
  /// Throws InvalidFace unless vertices are strictly increasing and >= 1.
  explicit Face(std::vector<int> vertices);
  Face(std::initializer_list<int> vertices) : Face(std::vector<int>(vertices)) {}

  std::span<const int> vertices() const noexcept { return vertices_; }
  std::size_t size() const noexcept { return vertices_.size(); }
  int dimension() const noexcept { return static_cast<int>(vertices_.size()) - 1; }
  bool empty() const noexcept { return vertices_.empty(); }

  /// 0-based vertex list (vertex v becomes v - 1), as used by colex ranking.
  std::vector<int> zero_based() const;
  /// Builds a face from 0-based vertices.
  static Face from_zero_based(std::span<const int> vertices);

  bool is_subset_of(const Face& other) const noexcept;

  friend auto operator<=>(const Face&, const Face&) = default;

 private:
  std::vector<int> vertices_;
};

std::ostream& operator<<(std::ostream& os, const Face& face);

}  // namespace lmph
