#include "ch/embedding.hpp"

#include "ch/errors.hpp"

namespace ch::eval {

AttractorCloud delay_embed(std::span<const double> y, int dim, int lag) {
  if (dim < 1) throw InvalidArgument("delay_embed: dim must be >= 1");
  if (lag < 1) throw InvalidArgument("delay_embed: lag must be >= 1");
  const auto span = static_cast<std::size_t>((dim - 1) * lag);
  if (y.size() <= span)
    throw InvalidArgument("delay_embed: series of length " + std::to_string(y.size()) +
                          " too short for dim " + std::to_string(dim) + ", lag " +
                          std::to_string(lag));

  AttractorCloud cloud;
  cloud.dim = static_cast<std::size_t>(dim);
  const std::size_t n = y.size() - span;
  cloud.coords.reserve(n * cloud.dim);
  for (std::size_t i = 0; i < n; ++i)
    for (int d = 0; d < dim; ++d)
      cloud.coords.push_back(y[i + static_cast<std::size_t>((dim - 1 - d) * lag)]);
  return cloud;
}

}  // namespace ch::eval
