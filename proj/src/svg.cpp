#include "ch/svg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "ch/errors.hpp"
#include "ch/textio.hpp"

namespace ch::svg {

namespace {

using textio::format_double;

std::string header(int width, int height) {
  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
    << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << ' ' << height
    << "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  return s.str();
}

std::string text(double x, double y, const std::string& t, int size = 11,
                 const std::string& anchor = "start") {
  std::ostringstream s;
  s << "<text x=\"" << x << "\" y=\"" << y << "\" font-size=\"" << size
    << "\" font-family=\"sans-serif\" text-anchor=\"" << anchor << "\">" << t
    << "</text>\n";
  return s.str();
}

struct LinearScale {
  double lo = 0.0, hi = 1.0, out_lo = 0.0, out_hi = 1.0;
  double operator()(double v) const {
    const double span = hi - lo;
    const double t = span > 0.0 ? (v - lo) / span : 0.5;
    return out_lo + t * (out_hi - out_lo);
  }
};

std::string polyline(const std::vector<double>& xs, const std::vector<double>& ys,
                     const std::string& stroke) {
  std::ostringstream s;
  s << "<polyline fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"1\" points=\"";
  for (std::size_t i = 0; i < xs.size(); ++i)
    s << (i ? " " : "") << xs[i] << ',' << ys[i];
  s << "\"/>\n";
  return s.str();
}

}  // namespace

std::string sweep_heatmap(const eval::SweepResult& result) {
  if (result.cells.empty()) throw DataError("heatmap: empty sweep");

  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (const auto& c : result.cells)
    if (c.ok()) {
      lo = std::min(lo, c.nrmse);
      hi = std::max(hi, c.nrmse);
    }
  if (!std::isfinite(lo)) throw DataError("heatmap: no successful cells");

  const int cell_w = 46, cell_h = 30, mx = 70, my = 50;
  const int width = mx + cell_w * static_cast<int>(result.intervals.size()) + 20;
  const int height = my + cell_h * static_cast<int>(result.taus.size()) + 40;

  std::ostringstream s;
  s << header(width, height);
  s << text(mx, 20, "test NRMSE by tau and interval", 13);

  for (std::size_t ti = 0; ti < result.taus.size(); ++ti) {
    for (std::size_t ii = 0; ii < result.intervals.size(); ++ii) {
      const auto& c = result.cell(ti, ii);
      const double x = mx + static_cast<double>(ii) * cell_w;
      const double y = my + static_cast<double>(ti) * cell_h;
      std::string fill = "rgb(255,160,160)";
      if (c.ok()) {
        const double norm = hi > lo ? (c.nrmse - lo) / (hi - lo) : 0.0;
        const int v = 245 - static_cast<int>(std::lround(235.0 * norm));
        fill = "rgb(" + std::to_string(v) + ',' + std::to_string(v) + ',' +
               std::to_string(v) + ')';
      }
      s << "<rect class=\"cell\" x=\"" << x << "\" y=\"" << y << "\" width=\"" << cell_w
        << "\" height=\"" << cell_h << "\" stroke=\"#888\" fill=\"" << fill
        << "\" data-tau=\"" << c.tau << "\" data-interval=\""
        << format_double(c.interval_s) << "\" data-nrmse=\""
        << (c.ok() ? format_double(c.nrmse) : std::string("nan")) << "\"/>\n";
    }
    s << text(mx - 8, my + (static_cast<double>(ti) + 0.65) * cell_h,
              std::to_string(result.taus[ti]), 11, "end");
  }
  for (std::size_t ii = 0; ii < result.intervals.size(); ++ii)
    s << text(mx + (static_cast<double>(ii) + 0.5) * cell_w,
              my + cell_h * static_cast<double>(result.taus.size()) + 16,
              format_double(result.intervals[ii]), 11, "middle");
  s << text(14, my + cell_h * static_cast<double>(result.taus.size()) / 2.0, "tau", 11);
  s << text(mx + cell_w * static_cast<double>(result.intervals.size()) / 2.0,
            static_cast<double>(height) - 6, "interval (s)", 11, "middle");
  s << "</svg>\n";
  return s.str();
}

std::string prediction_lines(std::size_t t0, std::span<const double> actual,
                             std::span<const double> predicted) {
  if (actual.size() != predicted.size() || actual.empty())
    throw DataError("prediction plot: series empty or mismatched");

  const int width = 860, height = 320, mx = 50, my = 20;
  double lo = actual[0], hi = actual[0];
  for (double v : actual) { lo = std::min(lo, v); hi = std::max(hi, v); }
  for (double v : predicted) { lo = std::min(lo, v); hi = std::max(hi, v); }
  const LinearScale sx{static_cast<double>(t0),
                       static_cast<double>(t0 + actual.size() - 1),
                       mx, width - 20.0};
  const LinearScale sy{lo, hi, height - 40.0, my};

  std::vector<double> xs(actual.size()), ya(actual.size()), yp(actual.size());
  for (std::size_t i = 0; i < actual.size(); ++i) {
    xs[i] = sx(static_cast<double>(t0 + i));
    ya[i] = sy(actual[i]);
    yp[i] = sy(predicted[i]);
  }

  std::ostringstream s;
  s << header(width, height);
  s << polyline(xs, ya, "#222");
  s << polyline(xs, yp, "#c22");
  s << text(mx, height - 8, "t = " + std::to_string(t0), 11);
  s << text(width - 20, height - 8, "t = " + std::to_string(t0 + actual.size() - 1), 11, "end");
  s << text(mx, 14, "actual (black) vs predicted (red), [" + format_double(lo) + ", " +
                        format_double(hi) + "]", 11);
  s << "</svg>\n";
  return s.str();
}

std::string attractor_scatter(const eval::AttractorCloud& actual,
                              const eval::AttractorCloud& predicted) {
  if (actual.size() == 0 || predicted.size() == 0)
    throw DataError("attractor plot: empty cloud");
  if (actual.dim < 2 || predicted.dim < 2)
    throw DataError("attractor plot: need at least 2 delay coordinates");

  const int width = 560, height = 560, m = 40;
  double lo = actual.point(0)[0], hi = lo;
  auto stretch = [&](const eval::AttractorCloud& c) {
    for (std::size_t i = 0; i < c.size(); ++i) {
      const auto pt = c.point(i);
      lo = std::min({lo, pt[0], pt[1]});
      hi = std::max({hi, pt[0], pt[1]});
    }
  };
  stretch(actual);
  stretch(predicted);
  const LinearScale sx{lo, hi, m, width - 2.0 * m + m};
  const LinearScale sy{lo, hi, height - 2.0 * m + m, m};

  std::ostringstream s;
  s << header(width, height);
  auto dots = [&](const eval::AttractorCloud& c, const std::string& color) {
    for (std::size_t i = 0; i < c.size(); ++i) {
      const auto pt = c.point(i);
      s << "<circle cx=\"" << sx(pt[0]) << "\" cy=\"" << sy(pt[1])
        << "\" r=\"1.6\" fill=\"" << color << "\" fill-opacity=\"0.55\"/>\n";
    }
  };
  dots(actual, "#222");
  dots(predicted, "#c22");
  s << text(m, 20, "delay embedding: actual (black) vs predicted (red)", 12);
  s << "</svg>\n";
  return s.str();
}

std::string spectrum_chart(const eval::Spectrum& spectrum, const std::string& name) {
  if (spectrum.power.empty()) throw DataError("spectrum plot: empty spectrum");

  double pmax = 0.0;
  for (double p : spectrum.power) pmax = std::max(pmax, p);
  if (pmax <= 0.0) pmax = 1.0;
  const double floor_p = pmax * 1e-12;

  const int width = 720, height = 300, mx = 60, my = 20;
  const LinearScale sx{spectrum.frequency.front(), spectrum.frequency.back(),
                       mx, width - 20.0};
  const double lmin = std::log10(floor_p), lmax = std::log10(pmax);
  const LinearScale sy{lmin, lmax, height - 40.0, my};

  std::vector<double> xs, ys;
  xs.reserve(spectrum.power.size());
  ys.reserve(spectrum.power.size());
  for (std::size_t i = 0; i < spectrum.power.size(); ++i) {
    xs.push_back(sx(spectrum.frequency[i]));
    ys.push_back(sy(std::log10(std::max(spectrum.power[i], floor_p))));
  }

  std::ostringstream s;
  s << header(width, height);
  s << polyline(xs, ys, "#226");
  s << text(mx, 14, "power spectrum (log scale): " + name, 12);
  s << text(mx, height - 8, "0", 11);
  s << text(width - 20, height - 8, format_double(spectrum.frequency.back()) +
                                        " cycles/step", 11, "end");
  s << "</svg>\n";
  return s.str();
}

}  // namespace ch::svg
