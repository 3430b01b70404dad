#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace ch::eval {

// Delay-coordinate point cloud. Point i is (y(i + (dim-1)*lag), ...,
// y(i + lag), y(i)) — newest coordinate first, so the default dim 3 / lag 1
// gives (y(t), y(t-1), y(t-2)).
struct AttractorCloud {
  std::size_t dim = 3;
  std::vector<double> coords;  // size() * dim, point-major

  std::size_t size() const { return dim == 0 ? 0 : coords.size() / dim; }
  std::span<const double> point(std::size_t i) const {
    return std::span<const double>(coords.data() + i * dim, dim);
  }
};

AttractorCloud delay_embed(std::span<const double> y, int dim = 3, int lag = 1);

}  // namespace ch::eval
