#pragma once

// Output plumbing for the command-line tool: resolved-config headers, CSV and
// JSON emission, and a minimal static SVG line plot.

#include <nlohmann/json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "specasym/errors.hpp"

namespace specasym::cli {

/// Shortest text that reads back to the same double.
inline std::string num(double x) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

/// Fully resolved run configuration, kept in insertion order.
class RunConfig {
 public:
  void set(std::string key, std::string value) {
    for (auto& [k, v] : entries_) {
      if (k == key) {
        v = std::move(value);
        return;
      }
    }
    entries_.emplace_back(std::move(key), std::move(value));
  }
  void set(std::string key, double value) { set(std::move(key), num(value)); }

  const std::vector<std::pair<std::string, std::string>>& entries() const { return entries_; }

  std::string csv_header() const {
    std::string out;
    for (const auto& [k, v] : entries_) out += "# " + k + " = " + v + "\n";
    return out;
  }

  nlohmann::ordered_json json() const {
    nlohmann::ordered_json j = nlohmann::ordered_json::object();
    for (const auto& [k, v] : entries_) j[k] = v;
    return j;
  }

 private:
  std::vector<std::pair<std::string, std::string>> entries_;
};

/// Writes to the named file, or stdout for "" and "-".
inline void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write '" + path + "'");
  out << text;
}

inline std::string csv_table(const RunConfig& cfg, const std::vector<std::string>& notes, const std::string& columns,
                             const std::vector<std::vector<std::string>>& rows) {
  std::ostringstream os;
  os << cfg.csv_header();
  for (const auto& n : notes) os << "# " << n << "\n";
  os << columns << "\n";
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << r[i];
    os << "\n";
  }
  return os.str();
}

inline std::string json_text(const nlohmann::ordered_json& j) { return j.dump(2) + "\n"; }

/*!
  Single-series SVG polyline. Log axes drop non-positive points.
*/
inline std::string svg_plot(const std::string& title, const std::string& xlabel, const std::string& ylabel,
                            const std::vector<double>& xs, const std::vector<double>& ys, bool logx, bool logy) {
  constexpr double W = 640, H = 420, L = 70, R = 20, T = 40, B = 50;
  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = 0; i < xs.size() && i < ys.size(); ++i) {
    if (!std::isfinite(xs[i]) || !std::isfinite(ys[i])) continue;
    if ((logx && xs[i] <= 0) || (logy && ys[i] <= 0)) continue;
    pts.emplace_back(logx ? std::log10(xs[i]) : xs[i], logy ? std::log10(ys[i]) : ys[i]);
  }
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W << "\" height=\"" << H << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  os << "<text x=\"" << W / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">" << title << "</text>\n";
  os << "<text x=\"" << W / 2 << "\" y=\"" << H - 12 << "\" text-anchor=\"middle\" font-size=\"12\">"
     << xlabel << (logx ? " (log10)" : "") << "</text>\n";
  os << "<text x=\"16\" y=\"" << H / 2 << "\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 16 "
     << H / 2 << ")\">" << ylabel << (logy ? " (log10)" : "") << "</text>\n";
  os << "<rect x=\"" << L << "\" y=\"" << T << "\" width=\"" << W - L - R << "\" height=\"" << H - T - B
     << "\" fill=\"none\" stroke=\"black\"/>\n";
  if (!pts.empty()) {
    auto [xmin_it, xmax_it] = std::minmax_element(pts.begin(), pts.end());
    double xmin = xmin_it->first, xmax = xmax_it->first;
    double ymin = pts[0].second, ymax = pts[0].second;
    for (const auto& p : pts) {
      ymin = std::min(ymin, p.second);
      ymax = std::max(ymax, p.second);
    }
    if (xmax == xmin) xmax = xmin + 1;
    if (ymax == ymin) ymax = ymin + 1;
    auto sx = [&](double x) { return L + (x - xmin) / (xmax - xmin) * (W - L - R); };
    auto sy = [&](double y) { return H - B - (y - ymin) / (ymax - ymin) * (H - T - B); };
    os << "<polyline fill=\"none\" stroke=\"#1f5fa8\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
      os << (i ? " " : "") << num(sx(pts[i].first)) << "," << num(sy(pts[i].second));
    }
    os << "\"/>\n";
    os << "<text x=\"" << L << "\" y=\"" << H - B + 16 << "\" font-size=\"11\">" << num(xmin) << "</text>\n";
    os << "<text x=\"" << W - R << "\" y=\"" << H - B + 16 << "\" text-anchor=\"end\" font-size=\"11\">" << num(xmax)
       << "</text>\n";
    os << "<text x=\"" << L - 4 << "\" y=\"" << H - B << "\" text-anchor=\"end\" font-size=\"11\">" << num(ymin)
       << "</text>\n";
    os << "<text x=\"" << L - 4 << "\" y=\"" << T + 10 << "\" text-anchor=\"end\" font-size=\"11\">" << num(ymax)
       << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace specasym::cli
