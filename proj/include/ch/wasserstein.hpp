#pragma once

#include <cstdint>

#include "ch/embedding.hpp"

namespace ch::eval {

// Exact 2-Wasserstein distance between the uniform empirical measures on two
// point clouds, solved as a transportation problem over squared Euclidean
// costs (equal sizes reduce to a minimum-cost assignment). Clouds larger
// than max_points are first subsampled by seeded uniform choice without
// replacement, independently per cloud so the result stays symmetric.
double wasserstein(const AttractorCloud& a, const AttractorCloud& b,
                   std::size_t max_points = 512, std::uint64_t seed = 0);

}  // namespace ch::eval
