#include "ch/lattice.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <istream>
#include <ostream>

#include <nlohmann/json.hpp>

#include "ch/rng.hpp"
#include "ch/textio.hpp"

namespace ch::traffic {

namespace {

constexpr double kTwoPi = 2.0 * 3.14159265358979323846;
constexpr double kPi = 3.14159265358979323846;

const char kDirLetters[4] = {'n', 's', 'e', 'w'};

}  // namespace

char direction_letter(Direction d) { return kDirLetters[static_cast<int>(d)]; }

Direction direction_from_letter(char c) {
  switch (c) {
    case 'n': return Direction::n;
    case 's': return Direction::s;
    case 'e': return Direction::e;
    case 'w': return Direction::w;
    default: throw DataError(std::string("unknown direction letter '") + c + "'");
  }
}

Direction opposite(Direction d) {
  switch (d) {
    case Direction::n: return Direction::s;
    case Direction::s: return Direction::n;
    case Direction::e: return Direction::w;
    case Direction::w: return Direction::e;
  }
  throw InvalidArgument("bad direction");
}

Axis approach_axis(Direction d) {
  return (d == Direction::n || d == Direction::s) ? Axis::NS : Axis::EW;
}

std::string LatticeNetwork::link_series_name(std::size_t link_id) const {
  const Link& l = links[link_id];
  return node_name(l.head) + direction_letter(l.approach);
}

namespace {

// Neighbor of node (r, c) one step towards `d`; npos when the lattice is open
// and the step leaves the grid.
std::size_t neighbor(std::size_t rows, std::size_t cols, bool torus,
                     std::size_t node, Direction d) {
  const std::size_t npos = static_cast<std::size_t>(-1);
  long r = static_cast<long>(node / cols);
  long c = static_cast<long>(node % cols);
  switch (d) {
    case Direction::n: r -= 1; break;
    case Direction::s: r += 1; break;
    case Direction::e: c += 1; break;
    case Direction::w: c -= 1; break;
  }
  if (torus) {
    r = (r + static_cast<long>(rows)) % static_cast<long>(rows);
    c = (c + static_cast<long>(cols)) % static_cast<long>(cols);
  } else if (r < 0 || r >= static_cast<long>(rows) || c < 0 ||
             c >= static_cast<long>(cols)) {
    return npos;
  }
  return static_cast<std::size_t>(r) * cols + static_cast<std::size_t>(c);
}

}  // namespace

LatticeNetwork build_lattice(std::size_t rows, std::size_t cols,
                             const SignalConfig& config, std::uint64_t seed,
                             bool torus) {
  if (rows < 2 || cols < 2)
    throw InvalidArgument("build_lattice: rows and cols must be >= 2");
  if (config.periods.empty()) {
    if (config.rate_min <= 0.0 || config.rate_max < config.rate_min)
      throw InvalidArgument("build_lattice: signal rate range must satisfy 0 < min <= max");
  } else {
    for (double p : config.periods)
      if (p <= 0.0) throw InvalidArgument("build_lattice: signal periods must be > 0");
  }

  const std::size_t npos = static_cast<std::size_t>(-1);
  LatticeNetwork net;
  net.rows = rows;
  net.cols = cols;
  net.torus = torus;
  net.seed = seed;

  // In-links per node, one per compass direction present. in_link[node][dir]
  // is the id of the link arriving at `node` from direction `dir`.
  const std::size_t n_nodes = rows * cols;
  std::vector<std::array<std::size_t, 4>> in_link(n_nodes, {npos, npos, npos, npos});
  for (std::size_t node = 0; node < n_nodes; ++node) {
    for (int di = 0; di < 4; ++di) {
      const Direction d = static_cast<Direction>(di);
      const std::size_t nb = neighbor(rows, cols, torus, node, d);
      if (nb == npos) continue;
      Link l;
      l.id = net.links.size();
      l.tail = nb;
      l.head = node;
      l.approach = d;
      in_link[node][di] = l.id;
      net.links.push_back(l);
    }
  }

  auto eng = rng::make_engine(seed);

  // Per-node signals first, then transition columns, so the draw order is
  // pinned and runs are reproducible.
  net.signals.resize(n_nodes);
  for (std::size_t node = 0; node < n_nodes; ++node) {
    SignalSpec s;
    s.rate = config.periods.empty()
                 ? rng::uniform(eng, config.rate_min, config.rate_max)
                 : kTwoPi / config.periods[rng::uniform_index(eng, config.periods.size())];
    s.theta0 = config.randomize_theta0 ? rng::uniform(eng, 0.0, kTwoPi) : 0.0;
    s.axis_offset = config.axis_offset;
    net.signals[node] = s;
  }

  // Column i of W: after traversing link i into node B, the vehicle leaves B
  // along one of B's outgoing links, never the U-turn back onto the segment
  // it came from. Probabilities are uniform on the simplex (unit-exponential
  // gaps, normalized).
  for (const Link& in : net.links) {
    const std::size_t uturn = in_link[in.tail][static_cast<int>(opposite(in.approach))];
    std::vector<std::size_t> outs;
    for (int di = 0; di < 4; ++di) {
      const std::size_t nb = neighbor(rows, cols, torus, in.head, static_cast<Direction>(di));
      if (nb == npos) continue;
      // Outgoing link from in.head towards nb arrives at nb from the
      // opposite compass side.
      const std::size_t out = in_link[nb][static_cast<int>(opposite(static_cast<Direction>(di)))];
      if (out != npos && out != uturn) outs.push_back(out);
    }
    if (outs.empty())
      throw InvalidArgument("build_lattice: dead-end link; open lattices need rows, cols >= 2");
    std::sort(outs.begin(), outs.end());

    std::vector<double> gaps(outs.size());
    double total = 0.0;
    for (double& g : gaps) {
      g = -std::log(1.0 - rng::uniform01(eng));
      total += g;
    }
    if (total <= 0.0) {  // all draws hit exactly zero; fall back to uniform
      std::fill(gaps.begin(), gaps.end(), 1.0);
      total = static_cast<double>(gaps.size());
    }
    for (std::size_t k = 0; k < outs.size(); ++k)
      net.transition.push_back({outs[k], in.id, gaps[k] / total});
  }

  return net;
}

bool signal_gate(const SignalSpec& spec, long step, Axis axis) {
  const double phase = spec.theta0 + spec.rate * static_cast<double>(step) +
                       (axis == Axis::EW ? spec.axis_offset : 0.0);
  double m = std::fmod(phase, kTwoPi);
  if (m < 0.0) m += kTwoPi;
  return m > 0.0 && m < kPi;
}

StepResult step(const LatticeNetwork& net, const TrafficState& state) {
  const std::size_t n = net.link_count();
  if (state.counts.size() != n)
    throw InvalidArgument("step: state has " + std::to_string(state.counts.size()) +
                          " counts, network has " + std::to_string(n) + " links");

  std::vector<double> released(n, 0.0);
  StepResult out;
  out.state.counts.assign(n, 0.0);
  out.state.step = state.step + 1;

  for (std::size_t i = 0; i < n; ++i) {
    const Link& l = net.links[i];
    const bool go = signal_gate(net.signals[l.head], state.step, approach_axis(l.approach));
    if (go)
      released[i] = state.counts[i];
    else
      out.state.counts[i] += state.counts[i];  // red: load stays put
  }
  for (const SparseEntry& e : net.transition)
    out.state.counts[e.row] += e.value * released[e.col];

  out.released = std::move(released);
  return out;
}

SimResult simulate(const LatticeNetwork& net, const TrafficState& init,
                   long steps, double seconds_per_step) {
  if (steps < 1) throw InvalidArgument("simulate: steps must be >= 1");
  if (seconds_per_step <= 0.0)
    throw InvalidArgument("simulate: seconds_per_step must be > 0");

  SimResult result;
  result.trajectory.reserve(static_cast<std::size_t>(steps) + 1);
  result.trajectory.push_back(init);

  TrafficState current = init;
  std::vector<std::size_t> order;
  for (long k = 0; k < steps; ++k) {
    const double t = static_cast<double>(current.step) * seconds_per_step;
    StepResult sr = step(net, current);

    order.clear();
    for (std::size_t i = 0; i < sr.released.size(); ++i)
      if (sr.released[i] > 0.0) order.push_back(i);
    // Ties sort by the full series name so the log round-trips through the
    // ingest CSV (which orders by series string) bit-identically.
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return net.link_series_name(a) < net.link_series_name(b);
    });
    for (std::size_t i : order) {
      const Link& l = net.links[i];
      result.log.records.push_back({t, net.node_name(l.head), l.approach, sr.released[i]});
    }

    current = std::move(sr.state);
    result.trajectory.push_back(current);
  }
  return result;
}

TrafficState uniform_state(const LatticeNetwork& net, double per_link) {
  TrafficState s;
  s.counts.assign(net.link_count(), per_link);
  return s;
}

TrafficState random_state(const LatticeNetwork& net, double lo, double hi,
                          std::uint64_t seed) {
  auto eng = rng::make_engine(seed);
  TrafficState s;
  s.counts.resize(net.link_count());
  for (double& c : s.counts) c = rng::uniform(eng, lo, hi);
  return s;
}

void write_event_csv(const CrossingLog& log, std::ostream& out) {
  out << "time_s,series,count\n";
  for (const CrossingRecord& r : log.records)
    out << textio::format_double(r.time_s) << ',' << r.node << direction_letter(r.dir)
        << ',' << textio::format_double(r.count) << '\n';
}

void save_network_json(const LatticeNetwork& net, std::ostream& out) {
  nlohmann::json j;
  j["format_version"] = 1;
  j["kind"] = "lattice_network";
  j["rows"] = net.rows;
  j["cols"] = net.cols;
  j["torus"] = net.torus;
  j["seed"] = net.seed;
  auto links = nlohmann::json::array();
  for (const Link& l : net.links)
    links.push_back({{"id", l.id},
                     {"tail", l.tail},
                     {"head", l.head},
                     {"dir", std::string(1, direction_letter(l.approach))}});
  j["links"] = std::move(links);
  auto w = nlohmann::json::array();
  for (const SparseEntry& e : net.transition)
    w.push_back({e.row, e.col, e.value});
  j["transition"] = std::move(w);
  auto sig = nlohmann::json::array();
  for (const SignalSpec& s : net.signals)
    sig.push_back({{"theta0", s.theta0}, {"rate", s.rate}, {"axis_offset", s.axis_offset}});
  j["signals"] = std::move(sig);
  out << j.dump(2) << '\n';
}

LatticeNetwork load_network_json(std::istream& in) {
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("network file: bad JSON: ") + e.what());
  }
  try {
    if (j.at("kind").get<std::string>() != "lattice_network")
      throw DataError("network file: wrong kind");
    LatticeNetwork net;
    net.rows = j.at("rows").get<std::size_t>();
    net.cols = j.at("cols").get<std::size_t>();
    net.torus = j.at("torus").get<bool>();
    net.seed = j.at("seed").get<std::uint64_t>();
    for (const auto& l : j.at("links")) {
      Link link;
      link.id = l.at("id").get<std::size_t>();
      link.tail = l.at("tail").get<std::size_t>();
      link.head = l.at("head").get<std::size_t>();
      const std::string d = l.at("dir").get<std::string>();
      if (d.size() != 1) throw DataError("network file: bad direction");
      link.approach = direction_from_letter(d[0]);
      net.links.push_back(link);
    }
    for (const auto& e : j.at("transition"))
      net.transition.push_back({e.at(0).get<std::size_t>(), e.at(1).get<std::size_t>(),
                                e.at(2).get<double>()});
    for (const auto& s : j.at("signals"))
      net.signals.push_back({s.at("theta0").get<double>(), s.at("rate").get<double>(),
                             s.at("axis_offset").get<double>()});
    if (net.signals.size() != net.rows * net.cols)
      throw DataError("network file: signal count does not match node count");
    return net;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(std::string("network file: missing or mistyped field: ") + e.what());
  }
}

}  // namespace ch::traffic
