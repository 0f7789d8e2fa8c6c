#include "lmph/face.hpp"

#include <algorithm>

#include "lmph/errors.hpp"

namespace lmph {

Face::Face(std::vector<int> vertices) : vertices_(std::move(vertices)) {
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (vertices_[i] < 1) throw InvalidFace("face vertices must be >= 1");
    if (i > 0 && vertices_[i] <= vertices_[i - 1]) {
      throw InvalidFace("face vertices must be strictly increasing");
    }
  }
}

std::vector<int> Face::zero_based() const {
  std::vector<int> out(vertices_);
  for (int& v : out) --v;
  return out;
}

Face Face::from_zero_based(std::span<const int> vertices) {
  std::vector<int> out(vertices.begin(), vertices.end());
  for (int& v : out) ++v;
  return Face(std::move(out));
}

bool Face::is_subset_of(const Face& other) const noexcept {
  return std::includes(other.vertices_.begin(), other.vertices_.end(), vertices_.begin(),
                       vertices_.end());
}

std::ostream& operator<<(std::ostream& os, const Face& face) {
  os << '{';
  for (std::size_t i = 0; i < face.size(); ++i) {
    if (i) os << ',';
    os << face.vertices()[i];
  }
  return os << '}';
}

}  // namespace lmph
