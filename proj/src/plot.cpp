#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "wslm/harness.hpp"
#include "wslm/io.hpp"

namespace wslm {

namespace {

// Pixel geometry of every chart: fixed canvas, plot rectangle, legend column.
constexpr double kW = 780, kH = 470;
constexpr double kLeft = 64, kRight = 604, kTop = 40, kBottom = 420;

std::string px(double v) {
  char b[32];
  std::snprintf(b, sizeof b, "%.2f", v);
  return b;
}

std::string lbl(double v) {
  char b[32];
  std::snprintf(b, sizeof b, "%g", v);
  return b;
}

struct Series {
  std::string label;
  std::string color;
  bool dashed = false;
  std::vector<double> x, y;
};

double nice_step(double range, int target) {
  const double raw = range / std::max(target, 1);
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double r = raw / mag;
  const double f = r <= 1.0 ? 1.0 : r <= 2.0 ? 2.0 : r <= 5.0 ? 5.0 : 10.0;
  return f * mag;
}

struct Axis {
  double lo = 0, hi = 1;            // data range after padding / log transform
  std::vector<double> ticks;        // tick positions in transformed units
  std::vector<std::string> labels;  // matching tick labels
};

Axis linear_axis(double lo, double hi, bool pad) {
  Axis a;
  if (!(hi > lo)) {
    lo -= 1.0;
    hi += 1.0;
  }
  if (pad) {
    const double p = 0.05 * (hi - lo);
    lo -= p;
    hi += p;
  }
  a.lo = lo;
  a.hi = hi;
  const double step = nice_step(hi - lo, 6);
  for (double t = std::ceil(lo / step) * step; t <= hi + 1e-9 * (hi - lo); t += step) {
    const double v = std::abs(t) < 1e-12 * step ? 0.0 : t;
    a.ticks.push_back(v);
    a.labels.push_back(lbl(v));
  }
  return a;
}

// Values are shown as log10; zeros are clamped to the smallest positive value
// seen (or 1e-18) so flat-at-zero trajectories still render.
Axis log_axis(const std::vector<Series>& series) {
  double vmin = std::numeric_limits<double>::infinity();
  double vmax = 0.0;
  for (const Series& s : series)
    for (double v : s.y) {
      if (v > 0.0) vmin = std::min(vmin, v);
      vmax = std::max(vmax, v);
    }
  if (!std::isfinite(vmin)) vmin = 1e-18;
  if (vmax <= 0.0) vmax = 1.0;
  Axis a;
  a.lo = std::floor(std::log10(vmin));
  a.hi = std::ceil(std::log10(vmax));
  if (a.hi <= a.lo) a.hi = a.lo + 1;
  const int span = static_cast<int>(a.hi - a.lo);
  const int step = std::max(1, (span + 7) / 8);
  for (int e = static_cast<int>(a.lo); e <= static_cast<int>(a.hi); e += step) {
    a.ticks.push_back(e);
    a.labels.push_back(lbl(std::pow(10.0, e)));
  }
  return a;
}

std::string render_chart(const std::vector<Series>& series, const std::string& x_label,
                         const std::string& y_label, bool log_y) {
  double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
  double ymin = xmin, ymax = -xmin;
  for (const Series& s : series)
    for (std::size_t i = 0; i < s.x.size(); ++i) {
      xmin = std::min(xmin, s.x[i]);
      xmax = std::max(xmax, s.x[i]);
      ymin = std::min(ymin, s.y[i]);
      ymax = std::max(ymax, s.y[i]);
    }
  if (!std::isfinite(xmin)) throw std::invalid_argument("plot error: no data points");

  const Axis xa = linear_axis(xmin, xmax, false);
  const Axis ya = log_y ? log_axis(series) : linear_axis(std::min(ymin, 0.0), ymax, true);
  const double log_floor = log_y ? std::pow(10.0, ya.lo) : 0.0;

  auto tx = [&](double v) { return kLeft + (v - xa.lo) / (xa.hi - xa.lo) * (kRight - kLeft); };
  auto ty = [&](double v) {
    const double u = log_y ? std::log10(std::max(v, log_floor)) : v;
    return kBottom - (u - ya.lo) / (ya.hi - ya.lo) * (kBottom - kTop);
  };

  std::string s;
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + lbl(kW) + "\" height=\"" + lbl(kH) +
       "\" viewBox=\"0 0 " + lbl(kW) + " " + lbl(kH) + "\" font-family=\"sans-serif\">\n";
  s += "<rect width=\"" + lbl(kW) + "\" height=\"" + lbl(kH) + "\" fill=\"#ffffff\"/>\n";

  for (std::size_t i = 0; i < xa.ticks.size(); ++i) {
    const double x = tx(xa.ticks[i]);
    s += "<line x1=\"" + px(x) + "\" y1=\"" + px(kTop) + "\" x2=\"" + px(x) + "\" y2=\"" +
         px(kBottom) + "\" stroke=\"#dddddd\"/>\n";
    s += "<text x=\"" + px(x) + "\" y=\"" + px(kBottom + 18) +
         "\" font-size=\"12\" text-anchor=\"middle\">" + xa.labels[i] + "</text>\n";
  }
  for (std::size_t i = 0; i < ya.ticks.size(); ++i) {
    const double y = ty(log_y ? std::pow(10.0, ya.ticks[i]) : ya.ticks[i]);
    s += "<line x1=\"" + px(kLeft) + "\" y1=\"" + px(y) + "\" x2=\"" + px(kRight) + "\" y2=\"" +
         px(y) + "\" stroke=\"#dddddd\"/>\n";
    s += "<text x=\"" + px(kLeft - 8) + "\" y=\"" + px(y + 4) +
         "\" font-size=\"12\" text-anchor=\"end\">" + ya.labels[i] + "</text>\n";
  }

  s += "<line x1=\"" + px(kLeft) + "\" y1=\"" + px(kBottom) + "\" x2=\"" + px(kRight) +
       "\" y2=\"" + px(kBottom) + "\" stroke=\"#000000\"/>\n";
  s += "<line x1=\"" + px(kLeft) + "\" y1=\"" + px(kTop) + "\" x2=\"" + px(kLeft) + "\" y2=\"" +
       px(kBottom) + "\" stroke=\"#000000\"/>\n";
  s += "<text x=\"" + px((kLeft + kRight) / 2) + "\" y=\"" + px(kH - 12) +
       "\" font-size=\"13\" text-anchor=\"middle\">" + x_label + "</text>\n";
  s += "<text transform=\"rotate(-90)\" x=\"" + px(-(kTop + kBottom) / 2) + "\" y=\"16\"" +
       " font-size=\"13\" text-anchor=\"middle\">" + y_label + "</text>\n";

  for (std::size_t k = 0; k < series.size(); ++k) {
    const Series& sr = series[k];
    std::string pts;
    for (std::size_t i = 0; i < sr.x.size(); ++i) {
      if (!pts.empty()) pts += " ";
      pts += px(tx(sr.x[i])) + "," + px(ty(sr.y[i]));
    }
    const std::string dash = sr.dashed ? " stroke-dasharray=\"6 4\"" : "";
    s += "<polyline fill=\"none\" stroke=\"" + sr.color + "\" stroke-width=\"1.8\"" + dash +
         " points=\"" + pts + "\"/>\n";
    if (sr.x.size() <= 64)
      for (std::size_t i = 0; i < sr.x.size(); ++i)
        s += "<circle cx=\"" + px(tx(sr.x[i])) + "\" cy=\"" + px(ty(sr.y[i])) +
             "\" r=\"2.5\" fill=\"" + sr.color + "\"/>\n";

    const double ly = 50 + 20 * static_cast<double>(k);
    s += "<line x1=\"616\" y1=\"" + px(ly) + "\" x2=\"646\" y2=\"" + px(ly) + "\" stroke=\"" +
         sr.color + "\" stroke-width=\"1.8\"" + dash + "/>\n";
    s += "<text x=\"652\" y=\"" + px(ly + 4) + "\" font-size=\"12\">" + sr.label + "</text>\n";
  }
  s += "</svg>\n";
  return s;
}

}  // namespace

void emit_plot(const SweepResult& result, const std::filesystem::path& path,
               const std::string& x_label) {
  if (result.rows.empty()) throw std::invalid_argument("plot error: sweep result is empty");

  std::vector<Variant> variants;
  for (const SweepRow& r : result.rows)
    if (std::find(variants.begin(), variants.end(), r.variant) == variants.end())
      variants.push_back(r.variant);

  const struct {
    const char* name;
    double SweepRow::*field;
    const char* color;
  } metrics[] = {{"ssr", &SweepRow::mean_ssr, "#1f77b4"},
                 {"smlr", &SweepRow::mean_smlr, "#2ca02c"},
                 {"silr", &SweepRow::mean_silr, "#d62728"}};

  std::vector<Series> series;
  for (const auto& m : metrics)
    for (Variant v : variants) {
      Series s;
      s.label = std::string(m.name) + " (" + to_string(v) + ")";
      s.color = m.color;
      s.dashed = v == Variant::Conventional;
      for (const SweepRow& r : result.rows) {
        if (r.variant != v) continue;
        s.x.push_back(r.sweep_value);
        s.y.push_back(r.*(m.field));
      }
      series.push_back(std::move(s));
    }
  atomic_write_text(path, render_chart(series, x_label, "bits/s/Hz", false));
}

void emit_trajectory_plot(const std::vector<double>& trajectory,
                          const std::filesystem::path& path) {
  if (trajectory.empty()) throw std::invalid_argument("plot error: trajectory is empty");
  Series s;
  s.label = "cost";
  s.color = "#1f77b4";
  for (std::size_t i = 0; i < trajectory.size(); ++i) {
    s.x.push_back(static_cast<double>(i));
    s.y.push_back(trajectory[i]);
  }
  atomic_write_text(path, render_chart({s}, "iteration", "cost", true));
}

}  // namespace wslm
