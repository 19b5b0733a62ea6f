#include "monoband/io.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "monoband/errors.hpp"

namespace monoband {

namespace {

double parse_double(const std::string& token, const std::string& where) {
  const char* begin = token.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  while (end && *end == ' ') ++end;
  if (end == begin || (end && *end != '\0')) {
    throw input_error("cannot parse number '" + token + "' in " + where);
  }
  return v;
}

std::vector<std::string> split(const std::string& line, char delimiter) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream stream(line);
  while (std::getline(stream, field, delimiter)) fields.push_back(field);
  return fields;
}

std::string strip(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

// Numbers rounded to their printed precision so every artifact (text or
// json) carries the same 6-significant-digit values.
double round6(double v) {
  if (!std::isfinite(v)) return v;
  return std::strtod(format_number(v).c_str(), nullptr);
}

}  // namespace

std::string format_number(double v) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.6g", v);
  return buffer;
}

std::vector<double> read_observations(const std::string& path,
                                      const std::string& column,
                                      char delimiter) {
  std::ifstream file(path);
  if (!file) throw input_error("cannot open input file '" + path + "'");
  std::vector<double> values;
  std::string line;
  if (column.empty()) {
    std::size_t line_no = 0;
    while (std::getline(file, line)) {
      ++line_no;
      const std::string token = strip(line);
      if (token.empty()) continue;
      values.push_back(
          parse_double(token, path + ":" + std::to_string(line_no)));
    }
  } else {
    if (!std::getline(file, line)) throw input_error("empty file '" + path + "'");
    const auto header = split(strip(line), delimiter);
    std::size_t col = header.size();
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (strip(header[i]) == column) col = i;
    }
    if (col == header.size()) {
      throw input_error("column '" + column + "' not found in '" + path + "'");
    }
    std::size_t line_no = 1;
    while (std::getline(file, line)) {
      ++line_no;
      if (strip(line).empty()) continue;
      const auto fields = split(line, delimiter);
      if (fields.size() <= col) {
        throw input_error("row " + std::to_string(line_no) + " of '" + path +
                          "' has too few fields");
      }
      values.push_back(parse_double(strip(fields[col]),
                                    path + ":" + std::to_string(line_no)));
    }
  }
  if (values.empty()) throw input_error("no observations in '" + path + "'");
  return values;
}

std::vector<std::pair<double, double>> read_cdf_table(const std::string& path,
                                                      char delimiter) {
  std::ifstream file(path);
  if (!file) throw input_error("cannot open cdf table '" + path + "'");
  std::vector<std::pair<double, double>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(file, line)) {
    ++line_no;
    const std::string text = strip(line);
    if (text.empty()) continue;
    if (line_no == 1 && !text.empty() && !std::isdigit(text[0]) &&
        text[0] != '-' && text[0] != '.') {
      continue;  // header row
    }
    const auto fields = split(text, delimiter);
    if (fields.size() < 2) {
      throw input_error("cdf table row " + std::to_string(line_no) +
                        " needs two fields");
    }
    rows.emplace_back(
        parse_double(strip(fields[0]), path + ":" + std::to_string(line_no)),
        parse_double(strip(fields[1]), path + ":" + std::to_string(line_no)));
  }
  return rows;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream file(path, std::ios::binary);
  if (!file) throw input_error("cannot write to '" + path + "'");
  file << content;
}

std::string band_to_csv(const BandResult& band,
                        const std::vector<double>& ecdf) {
  std::string out = "y,lower,upper,ecdf\n";
  for (std::size_t i = 0; i < band.points.size(); ++i) {
    out += format_number(band.points[i]);
    out += ',';
    out += format_number(band.lower[i]);
    out += ',';
    out += format_number(band.upper[i]);
    out += ',';
    out += format_number(ecdf[i]);
    out += '\n';
  }
  return out;
}

std::string band_to_json(const BandResult& band,
                         const std::vector<double>& ecdf) {
  nlohmann::ordered_json j;
  j["method"] = method_name(band.method);
  j["sample_size"] = band.sample_size;
  j["anytime"] = band.anytime;
  auto rounded = [](const std::vector<double>& v) {
    std::vector<double> out(v.size());
    std::transform(v.begin(), v.end(), out.begin(), round6);
    return out;
  };
  j["y"] = rounded(band.points);
  j["lower"] = rounded(band.lower);
  j["upper"] = rounded(band.upper);
  j["ecdf"] = rounded(ecdf);
  return j.dump(2) + "\n";
}

std::string report_to_json(const CoverageReport& report) {
  nlohmann::ordered_json j;
  j["method"] = report.method;
  j["distribution"] = report.distribution;
  j["delta"] = round6(report.delta);
  j["t_max"] = report.t_max;
  j["n_runs"] = report.n_runs;
  j["anytime"] = report.anytime;
  j["miss_count"] = report.miss_count;
  j["miss_rate"] = round6(report.miss_rate);
  nlohmann::ordered_json widths = nlohmann::ordered_json::array();
  for (std::size_t i = 0; i < report.checkpoints.size(); ++i) {
    nlohmann::ordered_json row;
    row["T"] = report.checkpoints[i];
    row["width_p50"] = round6(report.width_quantiles[i][0]);
    row["width_p90"] = round6(report.width_quantiles[i][1]);
    widths.push_back(row);
  }
  j["widths"] = widths;
  return j.dump(2) + "\n";
}

std::string report_to_csv(const CoverageReport& report) {
  std::string out = "checkpoint_T,width_p50,width_p90\n";
  for (std::size_t i = 0; i < report.checkpoints.size(); ++i) {
    out += std::to_string(report.checkpoints[i]);
    out += ',';
    out += format_number(report.width_quantiles[i][0]);
    out += ',';
    out += format_number(report.width_quantiles[i][1]);
    out += '\n';
  }
  return out;
}

std::string profile_to_csv(const WidthProfile& profile) {
  std::string out = "y,upper_minus_f,lower_minus_f\n";
  for (std::size_t i = 0; i < profile.points.size(); ++i) {
    out += format_number(profile.points[i]);
    out += ',';
    out += format_number(profile.upper_gap[i]);
    out += ',';
    out += format_number(profile.lower_gap[i]);
    out += '\n';
  }
  return out;
}

namespace {

struct Series {
  std::string label;
  std::string color;
  const std::vector<double>* x;
  const std::vector<double>* y;
};

std::string method_color(Method m) {
  switch (m) {
    case Method::psi: return "#9467bd";
    case Method::kl_cdf: return "#1f77b4";
    case Method::kl_grid: return "#17becf";
    case Method::pinsker: return "#2ca02c";
    case Method::variance: return "#d62728";
    case Method::dkw: return "#8c564b";
    case Method::anytime_baseline: return "#ff7f0e";
  }
  return "#000000";
}

constexpr int kPanelWidth = 360;
constexpr int kPanelHeight = 300;
constexpr int kMarginLeft = 52;
constexpr int kMarginRight = 14;
constexpr int kMarginTop = 28;
constexpr int kMarginBottom = 38;

struct PanelBox {
  int x0;
  double xmin, xmax, ymin, ymax;

  double sx(double x) const {
    const double w = kPanelWidth - kMarginLeft - kMarginRight;
    return x0 + kMarginLeft + (x - xmin) / (xmax - xmin) * w;
  }
  double sy(double y) const {
    const double h = kPanelHeight - kMarginTop - kMarginBottom;
    return kMarginTop + h - (y - ymin) / (ymax - ymin) * h;
  }
};

void append_polyline(std::string& svg, const PanelBox& box,
                     const std::vector<double>& xs,
                     const std::vector<double>& ys, const std::string& color) {
  svg += "  <polyline fill=\"none\" stroke=\"" + color +
         "\" stroke-width=\"1.5\" points=\"";
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i > 0) svg += ' ';
    svg += format_number(box.sx(xs[i]));
    svg += ',';
    svg += format_number(box.sy(ys[i]));
  }
  svg += "\"/>\n";
}

void append_text(std::string& svg, double x, double y, const std::string& text,
                 const std::string& anchor, const std::string& color = "#000") {
  svg += "  <text x=\"" + format_number(x) + "\" y=\"" + format_number(y) +
         "\" font-size=\"11\" font-family=\"sans-serif\" fill=\"" + color +
         "\" text-anchor=\"" + anchor + "\">" + text + "</text>\n";
}

std::string render_panels(
    const std::vector<std::pair<std::string, std::vector<Series>>>& panels) {
  const int width = kPanelWidth * static_cast<int>(panels.size());
  std::string svg =
      "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " +
      std::to_string(width) + " " + std::to_string(kPanelHeight) +
      "\" width=\"" + std::to_string(width) + "\" height=\"" +
      std::to_string(kPanelHeight) + "\">\n";
  svg += "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  for (std::size_t pi = 0; pi < panels.size(); ++pi) {
    const auto& [title, series] = panels[pi];
    PanelBox box;
    box.x0 = static_cast<int>(pi) * kPanelWidth;
    box.xmin = 1e300;
    box.xmax = -1e300;
    box.ymin = 1e300;
    box.ymax = -1e300;
    for (const auto& s : series) {
      for (const double x : *s.x) {
        box.xmin = std::min(box.xmin, x);
        box.xmax = std::max(box.xmax, x);
      }
      for (const double y : *s.y) {
        box.ymin = std::min(box.ymin, y);
        box.ymax = std::max(box.ymax, y);
      }
    }
    if (box.xmax <= box.xmin) box.xmax = box.xmin + 1.0;
    if (box.ymax <= box.ymin) box.ymax = box.ymin + 1.0;
    const double pad = 0.04 * (box.ymax - box.ymin);
    box.ymin -= pad;
    box.ymax += pad;

    // frame and ticks
    const double fx0 = box.sx(box.xmin), fx1 = box.sx(box.xmax);
    const double fy0 = box.sy(box.ymin), fy1 = box.sy(box.ymax);
    svg += "  <rect x=\"" + format_number(fx0) + "\" y=\"" +
           format_number(fy1) + "\" width=\"" + format_number(fx1 - fx0) +
           "\" height=\"" + format_number(fy0 - fy1) +
           "\" fill=\"none\" stroke=\"#444\"/>\n";
    for (const double frac : {0.0, 0.5, 1.0}) {
      const double xv = box.xmin + frac * (box.xmax - box.xmin);
      const double yv = box.ymin + frac * (box.ymax - box.ymin);
      append_text(svg, box.sx(xv), fy0 + 14, format_number(xv), "middle");
      append_text(svg, box.x0 + kMarginLeft - 4, box.sy(yv) + 4,
                  format_number(yv), "end");
    }
    append_text(svg, box.x0 + kPanelWidth / 2.0, 16, title, "middle");

    double legend_y = fy1 + 12;
    for (const auto& s : series) {
      append_polyline(svg, box, *s.x, *s.y, s.color);
      if (!s.label.empty()) {
        append_text(svg, fx1 - 4, legend_y, s.label, "end", s.color);
        legend_y += 12;
      }
    }
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace

std::string band_to_svg(const BandResult& band,
                        const std::vector<double>& ecdf) {
  std::vector<Series> series;
  series.push_back({"upper", method_color(band.method), &band.points, &band.upper});
  series.push_back({"lower", method_color(band.method), &band.points, &band.lower});
  series.push_back({"ecdf", "#333333", &band.points, &ecdf});
  const std::string title =
      method_name(band.method) + " band, T=" + std::to_string(band.sample_size);
  return render_panels({{title, series}});
}

std::string profiles_to_svg(
    const std::vector<std::pair<std::size_t, std::vector<WidthProfile>>>&
        panels) {
  std::vector<std::pair<std::string, std::vector<Series>>> rendered;
  for (const auto& [t, profiles] : panels) {
    std::vector<Series> series;
    for (const auto& p : profiles) {
      const std::string color = method_color(p.method);
      series.push_back({method_name(p.method), color, &p.points, &p.upper_gap});
      series.push_back({"", color, &p.points, &p.lower_gap});
    }
    rendered.push_back({"T=" + std::to_string(t), std::move(series)});
  }
  return render_panels(rendered);
}

}  // namespace monoband
