#include "latticefield/output.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "latticefield/stats.hpp"

namespace lf {

using nlohmann::json;

namespace {

constexpr const char* kToolVersion = "0.1.0";

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw OutputError("cannot open " + path.string() + " for writing");
  out << content;
  if (!out) throw OutputError("write failed for " + path.string());
}

std::string iso_utc(std::chrono::system_clock::time_point tp) {
  const std::time_t t = std::chrono::system_clock::to_time_t(tp);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

struct Frame {
  double x0, y0, x1, y1;       // data range
  double px0, py0, px1, py1;   // pixel viewport
  double x(double v) const { return px0 + (v - x0) / (x1 - x0) * (px1 - px0); }
  double y(double v) const { return py1 - (v - y0) / (y1 - y0) * (py1 - py0); }
};

void svg_header(std::ostringstream& s, const std::string& title) {
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"640\" height=\"420\" "
       "viewBox=\"0 0 640 420\">\n"
    << "<rect width=\"640\" height=\"420\" fill=\"white\"/>\n"
    << "<text x=\"320\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
       "font-size=\"15\">" << title << "</text>\n";
}

void svg_axes(std::ostringstream& s, const Frame& f) {
  s << "<line x1=\"" << f.px0 << "\" y1=\"" << f.py1 << "\" x2=\"" << f.px1 << "\" y2=\""
    << f.py1 << "\" stroke=\"black\"/>\n"
    << "<line x1=\"" << f.px0 << "\" y1=\"" << f.py0 << "\" x2=\"" << f.px0 << "\" y2=\""
    << f.py1 << "\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double vx = f.x0 + (f.x1 - f.x0) * i / 4.0;
    const double vy = f.y0 + (f.y1 - f.y0) * i / 4.0;
    char label[32];
    std::snprintf(label, sizeof label, "%.3g", vx);
    s << "<text x=\"" << f.x(vx) << "\" y=\"" << f.py1 + 18
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << label
      << "</text>\n";
    std::snprintf(label, sizeof label, "%.3g", vy);
    s << "<text x=\"" << f.px0 - 6 << "\" y=\"" << f.y(vy) + 4
      << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << label
      << "</text>\n";
  }
}

Frame make_frame(double x0, double x1, double y0, double y1) {
  if (x1 <= x0) x1 = x0 + 1.0;
  if (y1 <= y0) y1 = y0 + 1.0;
  return Frame{x0, y0, x1, y1, 60.0, 40.0, 610.0, 380.0};
}

}  // namespace

std::string results_json_string(const ExperimentResult& result) {
  json doc;
  doc["experiment"] = result.experiment;
  doc["config_hash"] = result.config_hash;
  doc["seed"] = result.seed;
  doc["passed"] = result.passed();
  doc["tests"] = json::array();
  for (const auto& t : result.tests) {
    json jt{{"name", t.name},
            {"statistic", t.statistic},
            {"threshold", t.threshold},
            {"pass", t.pass}};
    if (!t.note.empty()) jt["note"] = t.note;
    doc["tests"].push_back(jt);
  }
  doc["scalars"] = json::object();
  for (const auto& [k, v] : result.scalars) doc["scalars"][k] = v;
  return doc.dump(2) + "\n";
}

std::string samples_csv_string(const ExperimentResult& result) {
  std::ostringstream out;
  for (std::size_t c = 0; c < result.column_names.size(); ++c)
    out << (c ? "," : "") << result.column_names[c];
  out << "\n";
  if (result.columns.empty()) return out.str();
  const std::size_t rows = result.columns.front().size();
  for (const auto& col : result.columns)
    if (col.size() != rows) throw OutputError("samples_csv: ragged columns");
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < result.columns.size(); ++c)
      out << (c ? "," : "") << num(result.columns[c][r]);
    out << "\n";
  }
  return out.str();
}

std::string histogram_svg(const std::vector<double>& samples, double overlay_mean,
                          double overlay_sd, const std::string& title) {
  if (samples.empty()) throw OutputError("histogram_svg: empty sample");
  const auto [mn_it, mx_it] = std::minmax_element(samples.begin(), samples.end());
  double lo = *mn_it, hi = *mx_it;
  if (hi <= lo) hi = lo + 1.0;
  const int bins = std::clamp(static_cast<int>(std::sqrt(samples.size())), 10, 60);
  std::vector<double> counts(static_cast<std::size_t>(bins), 0.0);
  const double w = (hi - lo) / bins;
  for (double x : samples) {
    const int b = std::clamp(static_cast<int>((x - lo) / w), 0, bins - 1);
    counts[static_cast<std::size_t>(b)] += 1.0;
  }
  double density_max = 0.0;
  for (double& c : counts) {
    c /= static_cast<double>(samples.size()) * w;  // density scale
    density_max = std::max(density_max, c);
  }
  if (overlay_sd > 0.0)
    density_max = std::max(density_max, 1.0 / (overlay_sd * std::sqrt(2.0 * M_PI)));

  std::ostringstream s;
  svg_header(s, title);
  const Frame f = make_frame(lo, hi, 0.0, density_max * 1.05);
  svg_axes(s, f);
  for (int b = 0; b < bins; ++b) {
    const double x = lo + b * w;
    const double h = counts[static_cast<std::size_t>(b)];
    s << "<rect x=\"" << f.x(x) << "\" y=\"" << f.y(h) << "\" width=\""
      << f.x(x + w) - f.x(x) << "\" height=\"" << f.y(0.0) - f.y(h)
      << "\" fill=\"#7a9fd4\" stroke=\"#44618f\" stroke-width=\"0.5\"/>\n";
  }
  if (overlay_sd > 0.0) {
    s << "<polyline fill=\"none\" stroke=\"#c0392b\" stroke-width=\"1.5\" points=\"";
    for (int i = 0; i <= 200; ++i) {
      const double x = lo + (hi - lo) * i / 200.0;
      const double z = (x - overlay_mean) / overlay_sd;
      const double d = std::exp(-0.5 * z * z) / (overlay_sd * std::sqrt(2.0 * M_PI));
      s << f.x(x) << "," << f.y(d) << " ";
    }
    s << "\"/>\n";
  }
  s << "</svg>\n";
  return s.str();
}

std::string qq_plot_svg(const std::vector<double>& samples, const std::string& title) {
  if (samples.size() < 10) throw OutputError("qq_plot_svg: needs >= 10 samples");
  std::vector<double> sorted = samples;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  const std::size_t points = std::min<std::size_t>(n, 500);
  std::vector<std::pair<double, double>> qq;
  for (std::size_t i = 0; i < points; ++i) {
    const std::size_t idx = i * (n - 1) / (points - 1);
    const double p = (static_cast<double>(idx) + 0.5) / static_cast<double>(n);
    qq.emplace_back(normal_quantile(p), sorted[idx]);
  }
  double lo = std::min(qq.front().first, qq.front().second);
  double hi = std::max(qq.back().first, qq.back().second);

  std::ostringstream s;
  svg_header(s, title);
  const Frame f = make_frame(lo, hi, lo, hi);
  svg_axes(s, f);
  s << "<line x1=\"" << f.x(lo) << "\" y1=\"" << f.y(lo) << "\" x2=\"" << f.x(hi) << "\" y2=\""
    << f.y(hi) << "\" stroke=\"#c0392b\" stroke-dasharray=\"4 3\"/>\n";
  for (const auto& [q, v] : qq)
    s << "<circle cx=\"" << f.x(q) << "\" cy=\"" << f.y(v)
      << "\" r=\"1.8\" fill=\"#44618f\"/>\n";
  s << "</svg>\n";
  return s.str();
}

std::string trace_svg(const std::vector<double>& x, const std::vector<double>& y,
                      const std::string& title) {
  if (x.size() != y.size() || x.size() < 2) throw OutputError("trace_svg: needs matched x/y");
  const auto [xm, xM] = std::minmax_element(x.begin(), x.end());
  const auto [ym, yM] = std::minmax_element(y.begin(), y.end());
  std::ostringstream s;
  svg_header(s, title);
  const double pad = (*yM - *ym) * 0.05;
  const Frame f = make_frame(*xm, *xM, *ym - pad, *yM + pad);
  svg_axes(s, f);
  s << "<polyline fill=\"none\" stroke=\"#44618f\" stroke-width=\"1.5\" points=\"";
  for (std::size_t i = 0; i < x.size(); ++i) s << f.x(x[i]) << "," << f.y(y[i]) << " ";
  s << "\"/>\n</svg>\n";
  return s.str();
}

std::vector<std::string> emit_outputs(const ExperimentResult& result,
                                      const ExperimentConfig& config,
                                      const std::string& out_dir) {
  namespace fs = std::filesystem;
  const auto started = std::chrono::system_clock::now();
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw OutputError("cannot create " + out_dir + ": " + ec.message());
  const fs::path dir(out_dir);

  std::vector<std::string> files;
  write_file(dir / "results.json", results_json_string(result));
  files.push_back("results.json");
  if (!result.column_names.empty()) {
    write_file(dir / "samples.csv", samples_csv_string(result));
    files.push_back("samples.csv");
  }

  const bool plots = !result.columns.empty() &&
                     (!result.tests.empty() || result.experiment == "paths");
  if (plots) {
    const auto& primary = result.columns.front();
    const double mean = sample_mean(primary);
    const double sd = std::sqrt(sample_variance(primary));
    write_file(dir / "plot_histogram.svg",
               histogram_svg(primary, mean, sd,
                             result.experiment + ": " + result.column_names.front()));
    files.push_back("plot_histogram.svg");
    if (primary.size() >= 10) {
      write_file(dir / "plot_qq.svg",
                 qq_plot_svg(primary, result.experiment + ": sample vs normal quantiles"));
      files.push_back("plot_qq.svg");
    }
    std::vector<double> tx, ty;
    if (result.columns.size() >= 2 && result.column_names.front() == "n") {
      tx = result.columns[0];
      ty = result.columns[1];
    } else {
      // running variance trace
      MeanVar acc;
      for (std::size_t i = 0; i < primary.size(); ++i) {
        acc.add(primary[i]);
        if ((i + 1) % std::max<std::size_t>(1, primary.size() / 200) == 0 ||
            i + 1 == primary.size()) {
          tx.push_back(static_cast<double>(i + 1));
          ty.push_back(acc.variance());
        }
      }
    }
    if (tx.size() >= 2) {
      write_file(dir / "plot_trace.svg",
                 trace_svg(tx, ty, result.experiment + ": variance trace"));
      files.push_back("plot_trace.svg");
    }
  }

  json manifest;
  manifest["tool_version"] = kToolVersion;
  manifest["experiment"] = result.experiment;
  manifest["config_hash"] = result.config_hash;
  manifest["seed"] = config.seed;
  manifest["config"] = config.canonical;
  manifest["started_at"] = iso_utc(started);
  manifest["finished_at"] = iso_utc(std::chrono::system_clock::now());
  manifest["runtime_seconds"] = result.runtime_seconds;
  manifest["outputs"] = files;
  const fs::path tmp = dir / "manifest.json.tmp";
  write_file(tmp, manifest.dump(2) + "\n");
  fs::rename(tmp, dir / "manifest.json", ec);
  if (ec) throw OutputError("cannot finalize manifest: " + ec.message());
  files.push_back("manifest.json");
  return files;
}

}  // namespace lf
