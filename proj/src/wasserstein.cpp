#include "ch/wasserstein.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <vector>

#include "ch/errors.hpp"
#include "ch/rng.hpp"

namespace ch::eval {

namespace {

AttractorCloud subsample(const AttractorCloud& cloud, std::size_t max_points,
                         std::uint64_t seed) {
  if (cloud.size() <= max_points) return cloud;
  auto eng = rng::make_engine(seed);
  const auto idx = rng::sample_without_replacement(eng, cloud.size(), max_points);
  AttractorCloud out;
  out.dim = cloud.dim;
  out.coords.reserve(max_points * cloud.dim);
  for (std::size_t i : idx) {
    const auto pt = cloud.point(i);
    out.coords.insert(out.coords.end(), pt.begin(), pt.end());
  }
  return out;
}

// Uncapacitated transportation problem, successive shortest paths with
// Johnson potentials. Supplies and demands are integers, so every
// augmentation ships at least one unit and at most n + m - 1 augmentations
// occur (each one exhausts a source or a sink).
class TransportSolver {
 public:
  TransportSolver(std::size_t n, std::size_t m, std::vector<double> cost)
      : n_(n), m_(m), cost_(std::move(cost)), flow_(n * m, 0),
        potential_(n + m, 0.0) {}

  double solve(std::int64_t supply_each, std::int64_t demand_each) {
    supply_.assign(n_, supply_each);
    demand_.assign(m_, demand_each);
    std::int64_t remaining = supply_each * static_cast<std::int64_t>(n_);

    while (remaining > 0) {
      const std::size_t sink = dijkstra();
      remaining -= augment(sink);
    }

    double total = 0.0;
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < m_; ++j)
        if (flow_[i * m_ + j] > 0)
          total += static_cast<double>(flow_[i * m_ + j]) * cost_[i * m_ + j];
    return total;
  }

 private:
  static constexpr double kInf = std::numeric_limits<double>::infinity();

  // Shortest residual path from any source with remaining supply to the
  // nearest sink with remaining demand. Returns that sink's node index.
  std::size_t dijkstra() {
    const std::size_t V = n_ + m_;
    dist_.assign(V, kInf);
    parent_.assign(V, V);
    settled_.assign(V, false);
    for (std::size_t i = 0; i < n_; ++i)
      if (supply_[i] > 0) dist_[i] = 0.0;

    std::size_t found = V;
    double found_dist = kInf;
    while (true) {
      std::size_t u = V;
      double best = kInf;
      for (std::size_t v = 0; v < V; ++v)
        if (!settled_[v] && dist_[v] < best) {
          best = dist_[v];
          u = v;
        }
      if (u == V) throw NumericError("wasserstein: transport network disconnected");
      settled_[u] = true;

      if (u >= n_ && demand_[u - n_] > 0) {
        found = u;
        found_dist = best;
        break;
      }

      if (u < n_) {
        // Forward arcs source u -> every sink.
        const double base = best + potential_[u];
        const double* row = cost_.data() + u * m_;
        for (std::size_t j = 0; j < m_; ++j) {
          const std::size_t v = n_ + j;
          if (settled_[v]) continue;
          const double nd = base + row[j] - potential_[v];
          if (nd < dist_[v]) {
            dist_[v] = nd;
            parent_[v] = u;
          }
        }
      } else {
        // Backward arcs sink u -> sources with positive flow.
        const std::size_t j = u - n_;
        const double base = best + potential_[u];
        for (std::size_t i = 0; i < n_; ++i) {
          if (settled_[i] || flow_[i * m_ + j] == 0) continue;
          const double nd = base - cost_[i * m_ + j] - potential_[i];
          if (nd < dist_[i]) {
            dist_[i] = nd;
            parent_[i] = u;
          }
        }
      }
    }

    for (std::size_t v = 0; v < V; ++v)
      potential_[v] += std::min(dist_[v], found_dist);
    return found;
  }

  std::int64_t augment(std::size_t sink) {
    const std::size_t sentinel = n_ + m_;

    // Walk to the root source, taking the bottleneck over the path: the
    // sink's demand, each backward arc's flow, and the source's supply.
    std::int64_t gamma = demand_[sink - n_];
    std::size_t v = sink;
    while (parent_[v] != sentinel) {
      const std::size_t u = parent_[v];
      if (u >= n_) gamma = std::min(gamma, flow_[v * m_ + (u - n_)]);  // backward arc
      v = u;
    }
    const std::size_t src = v;
    gamma = std::min(gamma, supply_[src]);

    for (std::size_t w = sink; parent_[w] != sentinel;) {
      const std::size_t u = parent_[w];
      if (u < n_)
        flow_[u * m_ + (w - n_)] += gamma;  // forward: source u -> sink w
      else
        flow_[w * m_ + (u - n_)] -= gamma;  // backward: sink u -> source w
      w = u;
    }
    supply_[src] -= gamma;
    demand_[sink - n_] -= gamma;
    return gamma;
  }

  std::size_t n_, m_;
  std::vector<double> cost_;        // n x m squared distances
  std::vector<std::int64_t> flow_;  // n x m
  std::vector<double> potential_;
  std::vector<std::int64_t> supply_, demand_;
  std::vector<double> dist_;
  std::vector<std::size_t> parent_;
  std::vector<char> settled_;
};

}  // namespace

double wasserstein(const AttractorCloud& a, const AttractorCloud& b,
                   std::size_t max_points, std::uint64_t seed) {
  if (a.size() == 0 || b.size() == 0)
    throw InvalidArgument("wasserstein: empty point cloud");
  if (a.dim != b.dim)
    throw InvalidArgument("wasserstein: clouds have different dimensions");
  if (max_points == 0) throw InvalidArgument("wasserstein: max_points must be >= 1");

  const AttractorCloud sa = subsample(a, max_points, seed);
  const AttractorCloud sb = subsample(b, max_points, seed);
  const std::size_t n = sa.size();
  const std::size_t m = sb.size();
  const std::size_t dim = sa.dim;

  std::vector<double> cost(n * m);
  for (std::size_t i = 0; i < n; ++i) {
    const double* pi = sa.coords.data() + i * dim;
    for (std::size_t j = 0; j < m; ++j) {
      const double* pj = sb.coords.data() + j * dim;
      double c = 0.0;
      for (std::size_t d = 0; d < dim; ++d) {
        const double diff = pi[d] - pj[d];
        c += diff * diff;
      }
      cost[i * m + j] = c;
    }
  }

  // Uniform marginals 1/n and 1/m as integer units of 1/lcm(n, m) mass each.
  const std::int64_t lcm = std::lcm(static_cast<std::int64_t>(n),
                                    static_cast<std::int64_t>(m));
  TransportSolver solver(n, m, std::move(cost));
  const double total = solver.solve(lcm / static_cast<std::int64_t>(n),
                                    lcm / static_cast<std::int64_t>(m));
  return std::sqrt(std::max(0.0, total / static_cast<double>(lcm)));
}

}  // namespace ch::eval
