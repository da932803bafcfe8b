#include "lrfhss/plots.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "lrfhss/errors.hpp"

namespace lrfhss {

namespace {

struct SeriesPoint {
  double x = 0.0;
  double y = 0.0;
  double lo = 0.0;
  double hi = 0.0;
};

struct Series {
  std::string label;
  std::string color;
  bool band = false;
  bool dashed = false;
  std::vector<SeriesPoint> pts;
};

struct VLine {
  double x = 0.0;
  std::string label;
};

struct Figure {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  std::vector<VLine> vlines;
  std::vector<Series> series;
};

constexpr double kWidth = 880.0;
constexpr double kHeight = 520.0;
constexpr double kLeft = 72.0;
constexpr double kRight = 24.0;
constexpr double kTop = 48.0;
constexpr double kBottom = 58.0;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#17becf", "#8c564b", "#e377c2"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

std::vector<double> linear_ticks(double lo, double hi) {
  double raw = (hi - lo) / 5.0;
  double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double norm = raw / mag;
  double step = (norm < 1.5 ? 1.0 : norm < 3.5 ? 2.0 : norm < 7.5 ? 5.0 : 10.0);
  step *= mag;
  std::vector<double> ticks;
  double t = std::ceil(lo / step - 1e-9) * step;
  for (; t <= hi + step * 1e-9; t += step) {
    ticks.push_back(std::abs(t) < step * 1e-9 ? 0.0 : t);
  }
  return ticks;
}

std::vector<double> log_ticks(double lo, double hi) {
  std::vector<double> ticks;
  int k0 = static_cast<int>(std::ceil(std::log10(lo) - 1e-9));
  int k1 = static_cast<int>(std::floor(std::log10(hi) + 1e-9));
  for (int k = k0; k <= k1; ++k) ticks.push_back(std::pow(10.0, k));
  if (ticks.size() < 3) {
    ticks.clear();
    for (int k = k0 - 1; k <= k1; ++k)
      for (double m : {1.0, 2.0, 5.0}) {
        double v = m * std::pow(10.0, k);
        if (v >= lo * (1 - 1e-9) && v <= hi * (1 + 1e-9)) ticks.push_back(v);
      }
    std::sort(ticks.begin(), ticks.end());
  }
  return ticks;
}

std::string render(const Figure& fig) {
  bool log_x = fig.log_x;
  double x_lo = 0.0, x_hi = 0.0, y_lo = 0.0, y_hi = 0.0;
  bool first = true;
  for (const auto& s : fig.series)
    for (const auto& p : s.pts) {
      double py_lo = s.band ? p.lo : p.y;
      double py_hi = s.band ? p.hi : p.y;
      if (first) {
        x_lo = x_hi = p.x;
        y_lo = py_lo;
        y_hi = py_hi;
        first = false;
      } else {
        x_lo = std::min(x_lo, p.x);
        x_hi = std::max(x_hi, p.x);
        y_lo = std::min(y_lo, py_lo);
        y_hi = std::max(y_hi, py_hi);
      }
      if (log_x && p.x <= 0.0) log_x = false;
    }
  if (first) throw Error("figure '" + fig.title + "' has no data");
  for (const auto& v : fig.vlines) {
    x_lo = std::min(x_lo, v.x);
    x_hi = std::max(x_hi, v.x);
    if (log_x && v.x <= 0.0) log_x = false;
  }

  if (x_hi <= x_lo) {
    double pad = std::max(0.5, std::abs(x_lo) * 0.1);
    x_lo -= pad;
    x_hi += pad;
  }
  if (y_hi <= y_lo) {
    double pad = std::max(0.5, std::abs(y_lo) * 0.1);
    y_lo -= pad;
    y_hi += pad;
  } else {
    double pad = (y_hi - y_lo) * 0.06;
    y_lo -= pad;
    y_hi += pad;
  }

  auto tx = [&](double x) {
    double a = log_x ? std::log10(x_lo) : x_lo;
    double b = log_x ? std::log10(x_hi) : x_hi;
    double v = log_x ? std::log10(x) : x;
    return kLeft + (v - a) / (b - a) * (kWidth - kLeft - kRight);
  };
  auto ty = [&](double y) {
    return kHeight - kBottom -
           (y - y_lo) / (y_hi - y_lo) * (kHeight - kTop - kBottom);
  };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << ' '
      << kHeight << "\" font-family=\"DejaVu Sans, Helvetica, sans-serif\">\n";
  svg << "<rect width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" fill=\"#ffffff\"/>\n";
  svg << "<text x=\"" << num(kWidth / 2) << "\" y=\"24\" font-size=\"15\" "
         "font-weight=\"600\" text-anchor=\"middle\" fill=\"#222\">"
      << fig.title << "</text>\n";

  auto y_ticks = linear_ticks(y_lo, y_hi);
  for (double t : y_ticks) {
    double y = ty(t);
    svg << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(y) << "\" x2=\""
        << num(kWidth - kRight) << "\" y2=\"" << num(y)
        << "\" stroke=\"#e4e4e4\"/>\n";
    svg << "<text x=\"" << num(kLeft - 8) << "\" y=\"" << num(y + 4)
        << "\" font-size=\"11\" text-anchor=\"end\" fill=\"#444\">"
        << tick_label(t) << "</text>\n";
  }
  auto x_ticks = log_x ? log_ticks(x_lo, x_hi) : linear_ticks(x_lo, x_hi);
  for (double t : x_ticks) {
    double x = tx(t);
    svg << "<line x1=\"" << num(x) << "\" y1=\"" << num(kHeight - kBottom)
        << "\" x2=\"" << num(x) << "\" y2=\"" << num(kHeight - kBottom + 5)
        << "\" stroke=\"#666\"/>\n";
    svg << "<text x=\"" << num(x) << "\" y=\"" << num(kHeight - kBottom + 18)
        << "\" font-size=\"11\" text-anchor=\"middle\" fill=\"#444\">"
        << tick_label(t) << "</text>\n";
  }

  svg << "<rect x=\"" << num(kLeft) << "\" y=\"" << num(kTop) << "\" width=\""
      << num(kWidth - kLeft - kRight) << "\" height=\""
      << num(kHeight - kTop - kBottom)
      << "\" fill=\"none\" stroke=\"#888\"/>\n";
  svg << "<text x=\"" << num((kLeft + kWidth - kRight) / 2) << "\" y=\""
      << num(kHeight - 14)
      << "\" font-size=\"12\" text-anchor=\"middle\" fill=\"#333\">"
      << fig.x_label << "</text>\n";
  svg << "<text x=\"20\" y=\"" << num((kTop + kHeight - kBottom) / 2)
      << "\" font-size=\"12\" text-anchor=\"middle\" fill=\"#333\" "
         "transform=\"rotate(-90 20 "
      << num((kTop + kHeight - kBottom) / 2) << ")\">" << fig.y_label
      << "</text>\n";

  for (const auto& v : fig.vlines) {
    double x = tx(v.x);
    svg << "<line x1=\"" << num(x) << "\" y1=\"" << num(kTop) << "\" x2=\""
        << num(x) << "\" y2=\"" << num(kHeight - kBottom)
        << "\" stroke=\"#999\" stroke-dasharray=\"4 4\"/>\n";
    svg << "<text x=\"" << num(x + 4) << "\" y=\"" << num(kTop + 14)
        << "\" font-size=\"11\" fill=\"#666\">" << v.label << "</text>\n";
  }

  for (const auto& s : fig.series) {
    if (!s.band || s.pts.size() < 2) continue;
    svg << "<polygon fill=\"" << s.color
        << "\" fill-opacity=\"0.15\" stroke=\"none\" points=\"";
    for (const auto& p : s.pts) svg << num(tx(p.x)) << ',' << num(ty(p.lo)) << ' ';
    for (auto it = s.pts.rbegin(); it != s.pts.rend(); ++it)
      svg << num(tx(it->x)) << ',' << num(ty(it->hi)) << ' ';
    svg << "\"/>\n";
  }
  for (const auto& s : fig.series) {
    if (s.pts.size() > 1) {
      svg << "<polyline fill=\"none\" stroke=\"" << s.color
          << "\" stroke-width=\"1.8\"";
      if (s.dashed) svg << " stroke-dasharray=\"6 4\"";
      svg << " points=\"";
      for (const auto& p : s.pts) svg << num(tx(p.x)) << ',' << num(ty(p.y)) << ' ';
      svg << "\"/>\n";
    }
    for (const auto& p : s.pts)
      svg << "<circle cx=\"" << num(tx(p.x)) << "\" cy=\"" << num(ty(p.y))
          << "\" r=\"2.4\" fill=\"" << s.color << "\"/>\n";
  }

  std::size_t label_chars = 0;
  for (const auto& s : fig.series)
    label_chars = std::max(label_chars, s.label.size());
  double legend_w = 34.0 + 6.8 * static_cast<double>(label_chars);
  double legend_h = 8.0 + 16.0 * static_cast<double>(fig.series.size());
  double lx = kWidth - kRight - legend_w - 8.0;
  double ly = kTop + 8.0;
  svg << "<rect x=\"" << num(lx) << "\" y=\"" << num(ly) << "\" width=\""
      << num(legend_w) << "\" height=\"" << num(legend_h)
      << "\" fill=\"#ffffff\" fill-opacity=\"0.85\" stroke=\"#bbb\"/>\n";
  for (std::size_t i = 0; i < fig.series.size(); ++i) {
    const auto& s = fig.series[i];
    double ry = ly + 14.0 + 16.0 * static_cast<double>(i);
    svg << "<line x1=\"" << num(lx + 6) << "\" y1=\"" << num(ry - 3)
        << "\" x2=\"" << num(lx + 24) << "\" y2=\"" << num(ry - 3)
        << "\" stroke=\"" << s.color << "\" stroke-width=\"2\"";
    if (s.dashed) svg << " stroke-dasharray=\"6 4\"";
    svg << "/>\n";
    svg << "<text x=\"" << num(lx + 28) << "\" y=\"" << num(ry)
        << "\" font-size=\"11\" fill=\"#333\">" << s.label << "</text>\n";
  }

  svg << "</svg>\n";
  return svg.str();
}

void write_figure(const Figure& fig, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << render(fig);
  if (!out) throw IoError("failed writing " + path.string());
}

}  // namespace

std::vector<std::filesystem::path> emit_plots(
    const ExperimentConfig& cfg, const std::vector<RunRecord>& records,
    const std::filesystem::path& prefix) {
  auto steps = aggregate_steps(records);
  if (steps.empty()) throw Error("emit_plots: no records");

  std::set<int> p_order;
  for (const auto& s : steps) p_order.insert(s.P);
  std::map<int, std::vector<const StepAggregate*>> by_p;
  for (const auto& s : steps) by_p[s.P].push_back(&s);

  auto color_of = [&](int p) {
    std::size_t i = static_cast<std::size_t>(
        std::distance(p_order.begin(), p_order.find(p)));
    return std::string(kPalette[i % (sizeof(kPalette) / sizeof(*kPalette))]);
  };
  auto make_series = [&](int p, auto x_of, auto stat_of, std::string label,
                         bool band, bool dashed) {
    Series s;
    s.label = std::move(label);
    s.color = color_of(p);
    s.band = band;
    s.dashed = dashed;
    for (const auto* step : by_p[p]) {
      SeriesPoint pt;
      pt.x = x_of(*step);
      auto st = stat_of(*step);
      pt.y = st.mean;
      pt.lo = st.min;
      pt.hi = st.max;
      s.pts.push_back(pt);
    }
    return s;
  };
  auto frames_x = [](const StepAggregate& s) { return double(s.F); };
  auto frags_x = [](const StepAggregate& s) {
    return double(s.total_fragments);
  };
  auto flat = [](double v) { return StepStat{v, v, v}; };

  double capacity = double(cfg.C) * double(cfg.T_slots);
  std::vector<std::filesystem::path> written;
  auto emit = [&](const Figure& fig, const char* suffix) {
    std::filesystem::path path = prefix;
    path += suffix;
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    write_figure(fig, path);
    written.push_back(path);
  };

  Figure f1;
  f1.title = "Detection F1 vs offered frames";
  f1.x_label = "frames per horizon";
  f1.y_label = "F1";
  for (int p : p_order)
    f1.series.push_back(make_series(
        p, frames_x, [](const StepAggregate& s) { return s.f1; },
        "P=" + std::to_string(p), true, false));
  emit(f1, "_f1.svg");

  Figure fd;
  fd.title = "Detection errors vs offered frames";
  fd.x_label = "frames per horizon";
  fd.y_label = "count per horizon";
  for (int p : p_order) {
    fd.series.push_back(make_series(
        p, frames_x, [](const StepAggregate& s) { return s.fp; },
        "FP P=" + std::to_string(p), true, false));
    fd.series.push_back(make_series(
        p, frames_x, [](const StepAggregate& s) { return s.fn; },
        "FN P=" + std::to_string(p), false, true));
  }
  emit(fd, "_detection.svg");

  Figure fo;
  fo.title = "Matrix occupancy vs offered fragments";
  fo.x_label = "fragments per horizon";
  fo.y_label = "occupied cell fraction";
  fo.log_x = true;
  fo.vlines.push_back({capacity, "capacity"});
  for (int p : p_order)
    fo.series.push_back(make_series(
        p, frags_x, [](const StepAggregate& s) { return s.occupancy; },
        "P=" + std::to_string(p), true, false));
  emit(fo, "_occupancy.svg");

  Figure fef;
  fef.title = "Payload extraction, fast config";
  fef.x_label = "frames per horizon";
  fef.y_label = "extracted fraction";
  for (int p : p_order) {
    fef.series.push_back(make_series(
        p, frames_x, [](const StepAggregate& s) { return s.extraction_fast; },
        "P=" + std::to_string(p), true, false));
    fef.series.push_back(make_series(
        p, frames_x,
        [&](const StepAggregate& s) { return flat(s.headerfull_fast); },
        "baseline P=" + std::to_string(p), false, true));
  }
  emit(fef, "_extraction_fast.svg");

  Figure fer;
  fer.title = "Payload extraction, robust config";
  fer.x_label = "frames per horizon";
  fer.y_label = "extracted fraction";
  for (int p : p_order) {
    fer.series.push_back(make_series(
        p, frames_x,
        [](const StepAggregate& s) { return s.extraction_robust; },
        "P=" + std::to_string(p), true, false));
    fer.series.push_back(make_series(
        p, frames_x,
        [&](const StepAggregate& s) { return flat(s.headerfull_robust); },
        "baseline P=" + std::to_string(p), false, true));
  }
  emit(fer, "_extraction_robust.svg");

  Figure ft;
  ft.title = "Decode time vs offered fragments";
  ft.x_label = "fragments per horizon";
  ft.y_label = "decode seconds";
  ft.log_x = true;
  ft.vlines.push_back({capacity, "capacity"});
  for (int p : p_order)
    ft.series.push_back(make_series(
        p, frags_x, [](const StepAggregate& s) { return s.decode_seconds; },
        "P=" + std::to_string(p), true, false));
  emit(ft, "_timing.svg");

  return written;
}

}  // namespace lrfhss
