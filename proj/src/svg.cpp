#include "heatbound/svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace heatbound::svg {

namespace {

constexpr double kWidth = 640;
constexpr double kHeight = 480;
constexpr double kLeft = 70;
constexpr double kRight = 150;
constexpr double kTop = 30;
constexpr double kBottom = 55;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", std::abs(v) < 1e-12 ? 0.0 : v);
  return buf;
}

std::vector<double> ticks(double lo, double hi) {
  const double span = hi - lo;
  const double raw = span / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    if (raw <= m * mag) {
      step = m * mag;
      break;
    }
  }
  std::vector<double> out;
  for (double t = std::ceil(lo / step) * step; t <= hi + 1e-9 * span; t += step) out.push_back(t);
  return out;
}

struct Frame {
  double x0, x1, y0, y1;
  double width = kWidth - kLeft - kRight;
  double height = kHeight - kTop - kBottom;

  double px(double x) const { return kLeft + (x - x0) / (x1 - x0) * width; }
  double py(double y) const { return kTop + (y1 - y) / (y1 - y0) * height; }
};

void pad(double& lo, double& hi) {
  if (!std::isfinite(lo) || !std::isfinite(hi)) {
    lo = 0.0;
    hi = 1.0;
  }
  if (hi - lo < 1e-12) {
    lo -= 0.5;
    hi += 0.5;
  }
  const double m = 0.05 * (hi - lo);
  lo -= m;
  hi += m;
}

void header(std::ostringstream& out) {
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

void axes(std::ostringstream& out, const Frame& f, const std::string& xlabel,
          const std::string& ylabel) {
  out << "<rect x=\"" << num(kLeft) << "\" y=\"" << num(kTop) << "\" width=\"" << num(f.width)
      << "\" height=\"" << num(f.height) << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (double t : ticks(f.x0, f.x1)) {
    const double x = f.px(t);
    out << "<line x1=\"" << num(x) << "\" y1=\"" << num(kTop + f.height) << "\" x2=\"" << num(x)
        << "\" y2=\"" << num(kTop + f.height + 5) << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << num(x) << "\" y=\"" << num(kTop + f.height + 18)
        << "\" text-anchor=\"middle\">" << label(t) << "</text>\n";
  }
  for (double t : ticks(f.y0, f.y1)) {
    const double y = f.py(t);
    out << "<line x1=\"" << num(kLeft - 5) << "\" y1=\"" << num(y) << "\" x2=\"" << num(kLeft)
        << "\" y2=\"" << num(y) << "\" stroke=\"black\"/>\n"
        << "<text x=\"" << num(kLeft - 8) << "\" y=\"" << num(y + 4)
        << "\" text-anchor=\"end\">" << label(t) << "</text>\n";
  }
  out << "<text x=\"" << num(kLeft + f.width / 2) << "\" y=\"" << num(kHeight - 12)
      << "\" text-anchor=\"middle\">" << xlabel << "</text>\n"
      << "<text x=\"18\" y=\"" << num(kTop + f.height / 2) << "\" text-anchor=\"middle\" "
      << "transform=\"rotate(-90 18 " << num(kTop + f.height / 2) << ")\">" << ylabel
      << "</text>\n";
}

void legend_entry(std::ostringstream& out, int row, const std::string& colour,
                  const std::string& text, bool line) {
  const double x = kWidth - kRight + 15;
  const double y = kTop + 10 + 20 * row;
  if (line) {
    out << "<line x1=\"" << num(x) << "\" y1=\"" << num(y) << "\" x2=\"" << num(x + 24)
        << "\" y2=\"" << num(y) << "\" stroke=\"" << colour << "\" stroke-width=\"2\"/>\n";
  } else {
    out << "<circle cx=\"" << num(x + 12) << "\" cy=\"" << num(y) << "\" r=\"4\" fill=\"" << colour
        << "\"/>\n";
  }
  out << "<text x=\"" << num(x + 30) << "\" y=\"" << num(y + 4) << "\">" << text << "</text>\n";
}

// Square frame around the unit disk with the Bloch-sphere surface drawn.
Frame disk_frame(std::ostringstream& out) {
  Frame f{-1.05, 1.05, -1.05, 1.05};
  f.width = f.height = kHeight - kTop - kBottom;
  axes(out, f, "v_x(0)", "v_z(0)");
  out << "<circle cx=\"" << num(f.px(0)) << "\" cy=\"" << num(f.py(0)) << "\" r=\""
      << num(f.px(1) - f.px(0)) << "\" fill=\"none\" stroke=\"purple\" stroke-width=\"1.5\"/>\n";
  return f;
}

std::string colour_scale(double u) {
  // Blue -> yellow ramp.
  static constexpr std::array<std::array<double, 3>, 5> stops{
      {{68, 1, 84}, {59, 82, 139}, {33, 145, 140}, {94, 201, 98}, {253, 231, 37}}};
  u = std::clamp(u, 0.0, 1.0) * (stops.size() - 1);
  const auto i = std::min<std::size_t>(static_cast<std::size_t>(u), stops.size() - 2);
  const double w = u - static_cast<double>(i);
  char buf[16];
  std::snprintf(buf, sizeof buf, "#%02x%02x%02x",
                static_cast<int>(std::lround(stops[i][0] * (1 - w) + stops[i + 1][0] * w)),
                static_cast<int>(std::lround(stops[i][1] * (1 - w) + stops[i + 1][1] * w)),
                static_cast<int>(std::lround(stops[i][2] * (1 - w) + stops[i + 1][2] * w)));
  return buf;
}

}  // namespace

std::string trajectory_plot(const csv::Table& table) {
  const auto t = table.numbers("t");
  const std::array<std::pair<const char*, const char*>, 3> series{
      {{"beta_Q", "black"}, {"B_en", "red"}, {"B_th", "blue"}}};
  double xlo = 0.0;
  double xhi = t.empty() ? 1.0 : t.back();
  double ylo = std::numeric_limits<double>::infinity();
  double yhi = -ylo;
  std::vector<std::vector<double>> ys;
  for (const auto& [name, colour] : series) {
    ys.push_back(table.numbers(name));
    for (double v : ys.back()) {
      if (std::isfinite(v)) {
        ylo = std::min(ylo, v);
        yhi = std::max(yhi, v);
      }
    }
  }
  pad(ylo, yhi);
  if (xhi <= xlo) xhi = xlo + 1.0;
  const Frame f{xlo, xhi, ylo, yhi};

  std::ostringstream out;
  header(out);
  axes(out, f, "t (1/omega_0)", "nats");
  if (ylo < 0.0 && yhi > 0.0) {
    out << "<line x1=\"" << num(f.px(xlo)) << "\" y1=\"" << num(f.py(0)) << "\" x2=\""
        << num(f.px(xhi)) << "\" y2=\"" << num(f.py(0))
        << "\" stroke=\"gray\" stroke-dasharray=\"4 3\"/>\n";
  }
  const std::array<const char*, 3> names{"beta &lt;dQ&gt;", "B_en", "B_th"};
  for (std::size_t k = 0; k < series.size(); ++k) {
    out << "<polyline fill=\"none\" stroke=\"" << series[k].second
        << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < t.size(); ++i) {
      if (std::isfinite(ys[k][i])) out << num(f.px(t[i])) << ',' << num(f.py(ys[k][i])) << ' ';
    }
    out << "\"/>\n";
    legend_entry(out, static_cast<int>(k), series[k].second, names[k], true);
  }
  out << "</svg>\n";
  return out.str();
}

std::string tightness_map(const csv::Table& table) {
  const auto vx = table.numbers("vx0");
  const auto vz = table.numbers("vz0");
  const auto tighter = table.text("tighter");
  std::ostringstream out;
  header(out);
  const Frame f = disk_frame(out);
  auto colour = [](const std::string& s) {
    if (s == "entropic") return "red";
    if (s == "thermodynamic") return "blue";
    if (s == "tie") return "gray";
    return "black";
  };
  for (std::size_t i = 0; i < vx.size(); ++i) {
    out << "<circle cx=\"" << num(f.px(vx[i])) << "\" cy=\"" << num(f.py(vz[i]))
        << "\" r=\"3\" fill=\"" << colour(tighter[i]) << "\"/>\n";
  }
  legend_entry(out, 0, "red", "entropic", false);
  legend_entry(out, 1, "blue", "thermodynamic", false);
  legend_entry(out, 2, "gray", "tie", false);
  legend_entry(out, 3, "black", "failed", false);
  out << "</svg>\n";
  return out.str();
}

std::string crossover_map(const csv::Table& table) {
  const auto vx = table.numbers("vx0");
  const auto vz = table.numbers("vz0");
  const auto tc = table.optional_numbers("crossover_t");
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& v : tc) {
    if (v) {
      lo = std::min(lo, *v);
      hi = std::max(hi, *v);
    }
  }
  if (!std::isfinite(lo)) {
    lo = 0.0;
    hi = 1.0;
  }
  if (hi - lo < 1e-12) hi = lo + 1.0;

  std::ostringstream out;
  header(out);
  const Frame f = disk_frame(out);
  for (std::size_t i = 0; i < vx.size(); ++i) {
    if (!tc[i]) continue;
    out << "<circle cx=\"" << num(f.px(vx[i])) << "\" cy=\"" << num(f.py(vz[i]))
        << "\" r=\"3.5\" fill=\"" << colour_scale((*tc[i] - lo) / (hi - lo)) << "\"/>\n";
  }
  const double bx = kLeft + f.width + 40;
  const double bh = f.height * 0.8;
  const int steps = 40;
  for (int k = 0; k < steps; ++k) {
    const double u = (k + 0.5) / steps;
    out << "<rect x=\"" << num(bx) << "\" y=\"" << num(kTop + bh * (1 - (k + 1.0) / steps))
        << "\" width=\"16\" height=\"" << num(bh / steps + 0.5) << "\" fill=\"" << colour_scale(u)
        << "\"/>\n";
  }
  out << "<text x=\"" << num(bx + 22) << "\" y=\"" << num(kTop + 10) << "\">" << label(hi)
      << "</text>\n<text x=\"" << num(bx + 22) << "\" y=\"" << num(kTop + bh) << "\">" << label(lo)
      << "</text>\n<text x=\"" << num(bx) << "\" y=\"" << num(kTop + bh + 20)
      << "\">crossover t</text>\n</svg>\n";
  return out.str();
}

std::string plot_for(const csv::Table& table) {
  if (table.find("crossover_t")) return crossover_map(table);
  if (table.find("tighter")) return tightness_map(table);
  if (table.find("t") && table.find("B_th")) return trajectory_plot(table);
  throw std::invalid_argument("no plot matches this table's columns");
}

}  // namespace heatbound::svg
