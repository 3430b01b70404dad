#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "ch/errors.hpp"

namespace ch::traffic {

enum class Direction : int { n = 0, s = 1, e = 2, w = 3 };
enum class Axis { NS, EW };

char direction_letter(Direction d);
Direction direction_from_letter(char c);
Direction opposite(Direction d);

// Signals sit on the NS/EW axes of a node; the EW phase is shifted by
// axis_offset so the two axes alternate.
struct SignalSpec {
  double theta0 = 0.0;       // initial phase, radians in [0, 2pi)
  double rate = 0.0;         // phase advance per step, radians (> 0)
  double axis_offset = 0.0;  // EW phase offset relative to NS, radians
};

// Template used by build_lattice to draw per-node signals. When `periods`
// is non-empty each node gets rate 2*pi / (a period drawn from the set);
// commensurate period sets give the network a finite super-period, which
// keeps cross-intersection phase relations stationary. Otherwise rates are
// drawn uniformly from [rate_min, rate_max].
struct SignalConfig {
  double rate_min = 0.15;
  double rate_max = 0.45;
  std::vector<double> periods;  // cycle lengths in steps, e.g. {10, 12, 15}
  double axis_offset = 3.14159265358979323846;
  bool randomize_theta0 = true;  // theta0 ~ U[0, 2pi); otherwise 0
};

// One directed road segment. `approach` is the compass direction the link
// enters its head node from, so (head node, approach) names the series the
// link's releases contribute to, e.g. node "5" + 'e' -> "5e".
struct Link {
  std::size_t id = 0;
  std::size_t tail = 0;
  std::size_t head = 0;
  Direction approach = Direction::n;
};

struct SparseEntry {
  std::size_t row = 0;  // destination link
  std::size_t col = 0;  // source link
  double value = 0.0;
};

struct LatticeNetwork {
  std::size_t rows = 0;
  std::size_t cols = 0;
  bool torus = true;
  std::uint64_t seed = 0;
  std::vector<Link> links;
  std::vector<SparseEntry> transition;  // column-stochastic over source links
  std::vector<SignalSpec> signals;      // one per node

  std::size_t node_count() const { return rows * cols; }
  std::size_t link_count() const { return links.size(); }
  // Nodes are numbered row-major starting at 1, like map labels.
  std::string node_name(std::size_t node) const { return std::to_string(node + 1); }
  std::string link_series_name(std::size_t link_id) const;
};

struct TrafficState {
  std::vector<double> counts;  // vehicles per link, fluid-valued
  long step = 0;
};

struct StepResult {
  TrafficState state;
  std::vector<double> released;  // mass that crossed each link's stop line
};

struct CrossingRecord {
  double time_s = 0.0;
  std::string node;
  Direction dir = Direction::n;
  double count = 0.0;
};

struct CrossingLog {
  std::vector<CrossingRecord> records;  // sorted by (time_s, node, dir)
};

struct SimResult {
  std::vector<TrafficState> trajectory;  // length steps + 1, includes init
  CrossingLog log;
};

// Directed lattice with two opposite links per adjacent node pair, torus wrap
// by default. Each incoming link distributes over its <= 3 legal outgoing
// links (no U-turns) with probabilities drawn uniformly on the simplex.
// Deterministic in (rows, cols, config, seed, torus).
LatticeNetwork build_lattice(std::size_t rows, std::size_t cols,
                             const SignalConfig& config, std::uint64_t seed,
                             bool torus = true);

// go iff pi > mod(theta0 + rate*step + axis phase, 2pi) > 0.
bool signal_gate(const SignalSpec& spec, long step, Axis axis);

Axis approach_axis(Direction d);

// One synchronous update: gated links release their load through W, stopped
// links keep it. Total mass is conserved.
StepResult step(const LatticeNetwork& net, const TrafficState& state);

// Repeated stepping; every positive per-link release becomes one crossing
// record at time state.step * seconds_per_step.
SimResult simulate(const LatticeNetwork& net, const TrafficState& init,
                   long steps, double seconds_per_step);

// Uniform initial load on every link, step index 0.
TrafficState uniform_state(const LatticeNetwork& net, double per_link);
// Per-link load drawn uniformly from [lo, hi), seeded.
TrafficState random_state(const LatticeNetwork& net, double lo, double hi,
                          std::uint64_t seed);

// Crossing log in the ingest event CSV format (header time_s,series,count).
void write_event_csv(const CrossingLog& log, std::ostream& out);

void save_network_json(const LatticeNetwork& net, std::ostream& out);
LatticeNetwork load_network_json(std::istream& in);

}  // namespace ch::traffic
