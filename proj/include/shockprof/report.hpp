#pragma once

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#include "core.hpp"

namespace shockprof {

// 17 significant digits, period decimal point, no locale surprises
inline std::string fmt_real(Real v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17Lg", v);
  return buf;
}

struct CsvError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Comma-delimited table: one header row, uniform-arity data rows, then
// optional '#'-prefixed footer comment lines. That is the whole grammar.
struct Csv {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> footers;  // without the leading '# '

  size_t col(const std::string& name) const {
    for (size_t i = 0; i < header.size(); ++i)
      if (header[i] == name) return i;
    throw CsvError("csv: no column named '" + name + "'");
  }

  Real number(size_t row, size_t c) const {
    const std::string& cell = rows.at(row).at(c);
    char* end = nullptr;
    Real v = strtold(cell.c_str(), &end);
    if (end == cell.c_str() || *end != '\0') throw CsvError("csv: cell '" + cell + "' is not a number");
    return v;
  }
};

inline std::string csv_to_string(const Csv& t) {
  std::string out;
  auto join = [&](const std::vector<std::string>& cells) {
    for (size_t i = 0; i < cells.size(); ++i) {
      if (i) out += ',';
      out += cells[i];
    }
    out += '\n';
  };
  join(t.header);
  for (const auto& r : t.rows) join(r);
  for (const auto& f : t.footers) out += "# " + f + "\n";
  return out;
}

inline Csv parse_csv(const std::string& text) {
  Csv t;
  size_t pos = 0;
  bool in_footer = false;
  auto split = [](const std::string& line) {
    std::vector<std::string> cells;
    size_t start = 0;
    for (;;) {
      size_t c = line.find(',', start);
      cells.push_back(line.substr(start, c - start));
      if (c == std::string::npos) break;
      start = c + 1;
    }
    return cells;
  };
  while (pos < text.size()) {
    size_t nl = text.find('\n', pos);
    if (nl == std::string::npos) throw CsvError("csv: missing trailing newline");
    std::string line = text.substr(pos, nl - pos);
    pos = nl + 1;
    if (line.empty()) throw CsvError("csv: blank line");
    if (line[0] == '#') {
      in_footer = true;
      size_t body = line.size() > 1 && line[1] == ' ' ? 2 : 1;
      t.footers.push_back(line.substr(body));
      continue;
    }
    if (in_footer) throw CsvError("csv: data after footer comments");
    std::vector<std::string> cells = split(line);
    if (t.header.empty()) {
      t.header = std::move(cells);
    } else {
      if (cells.size() != t.header.size())
        throw CsvError("csv: row arity differs from header");
      t.rows.push_back(std::move(cells));
    }
  }
  if (t.header.empty()) throw CsvError("csv: empty input");
  return t;
}

// --- SVG line plots --------------------------------------------------------

struct Series {
  std::string name;
  std::vector<Real> x;
  std::vector<Real> y;
};

struct PlotOptions {
  bool log_x = false;
  std::string title;
};

// Fixed 800x500 frame, one polyline per series, each series y-normalized to
// the frame so unrelated magnitudes stay visible. Pure text, byte-stable.
inline std::string svg_plot(const std::vector<Series>& series, const PlotOptions& opt = {}) {
  const Real W = 800, H = 500, L = 60, R = 780, T = 20, B = 460;
  static const char* palette[] = {"#1f6f8b", "#a63d40", "#468a42", "#8a5ab0", "#b07d2b"};

  Real xmin = 0, xmax = 0;
  bool first = true;
  for (const Series& s : series)
    for (Real v : s.x) {
      Real t = opt.log_x ? std::log10(v) : v;
      if (first || t < xmin) xmin = t;
      if (first || t > xmax) xmax = t;
      first = false;
    }
  if (first) {
    xmin = 0;
    xmax = 1;
  }
  if (xmax <= xmin) xmax = xmin + 1;

  auto px = [&](Real v) {
    Real t = opt.log_x ? std::log10(v) : v;
    return L + (t - xmin) / (xmax - xmin) * (R - L);
  };
  auto f2 = [](Real v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2Lf", v);
    return std::string(buf);
  };

  std::string out;
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 800 500\">\n";
  out += "<rect x=\"0\" y=\"0\" width=\"800\" height=\"500\" fill=\"#ffffff\"/>\n";
  if (!opt.title.empty())
    out += "<text x=\"400\" y=\"14\" text-anchor=\"middle\" font-size=\"13\">" + opt.title +
           "</text>\n";
  out += "<rect x=\"" + f2(L) + "\" y=\"" + f2(T) + "\" width=\"" + f2(R - L) + "\" height=\"" +
         f2(B - T) + "\" fill=\"none\" stroke=\"#444444\"/>\n";

  for (size_t si = 0; si < series.size(); ++si) {
    const Series& s = series[si];
    Real ymin = 0, ymax = 0;
    for (size_t i = 0; i < s.y.size(); ++i) {
      if (i == 0 || s.y[i] < ymin) ymin = s.y[i];
      if (i == 0 || s.y[i] > ymax) ymax = s.y[i];
    }
    Real span = ymax - ymin;
    const char* color = palette[si % 5];
    out += "<polyline fill=\"none\" stroke=\"";
    out += color;
    out += "\" stroke-width=\"1.5\" points=\"";
    for (size_t i = 0; i < s.x.size(); ++i) {
      Real yy = span > 0 ? (s.y[i] - ymin) / span : 0.5L;
      if (i) out += ' ';
      out += f2(px(s.x[i])) + "," + f2(B - yy * (B - T));
    }
    out += "\"/>\n";
    Real ty = T + 16 + 14 * (Real)si;
    out += "<text x=\"" + f2(L + 8) + "\" y=\"" + f2(ty) + "\" font-size=\"12\" fill=\"";
    out += color;
    out += "\">" + s.name + " [" + fmt_real(ymin) + ", " + fmt_real(ymax) + "]</text>\n";
  }

  out += "<text x=\"" + f2(L) + "\" y=\"" + f2(B + 16) + "\" font-size=\"11\">" +
         (opt.log_x ? "1e" + fmt_real(xmin) : fmt_real(xmin)) + "</text>\n";
  out += "<text x=\"" + f2(R) + "\" y=\"" + f2(B + 16) + "\" text-anchor=\"end\" font-size=\"11\">" +
         (opt.log_x ? "1e" + fmt_real(xmax) : fmt_real(xmax)) + "</text>\n";
  out += "</svg>\n";
  return out;
}

}  // namespace shockprof
