#include "srr/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace srr {

CsvWriter::CsvWriter(std::vector<std::string> header) : n_cols_(header.size()) {
    if (header.empty()) throw std::domain_error("CsvWriter: empty header");
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) text_ += ',';
        text_ += header[i];
    }
    text_ += '\n';
}

std::string CsvWriter::format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void CsvWriter::add_row(const std::vector<double>& values) {
    if (values.size() != n_cols_) throw std::domain_error("CsvWriter: column count mismatch");
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) text_ += ',';
        text_ += format_number(values[i]);
    }
    text_ += '\n';
}

void CsvWriter::add_row_mixed(const std::vector<std::string>& values) {
    if (values.size() != n_cols_) throw std::domain_error("CsvWriter: column count mismatch");
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) text_ += ',';
        text_ += values[i];
    }
    text_ += '\n';
}

void CsvWriter::write(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << text_;
    if (!out) throw std::runtime_error("failed writing " + path);
}

namespace {

double nice_min(const std::vector<SvgSeries>& series, bool use_y, bool log_y) {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& s : series)
        for (double v : use_y ? s.y : s.x)
            if (!log_y || v > 0.0) m = std::min(m, v);
    return m;
}
double nice_max(const std::vector<SvgSeries>& series, bool use_y, bool log_y) {
    double m = -std::numeric_limits<double>::infinity();
    for (const auto& s : series)
        for (double v : use_y ? s.y : s.x)
            if (!log_y || v > 0.0) m = std::max(m, v);
    return m;
}

}  // namespace

void write_svg_plot(const std::string& path, const std::string& title,
                    const std::vector<SvgSeries>& series, bool log_y) {
    const int W = 720, H = 480, ml = 70, mr = 20, mt = 40, mb = 50;
    double x0 = nice_min(series, false, false), x1 = nice_max(series, false, false);
    double y0 = nice_min(series, true, log_y), y1 = nice_max(series, true, log_y);
    if (!(x1 > x0)) x1 = x0 + 1.0;
    if (log_y) {
        y0 = std::log10(y0);
        y1 = std::log10(y1);
    }
    if (!(y1 > y0)) y1 = y0 + 1.0;
    const auto px = [&](double x) { return ml + (x - x0) / (x1 - x0) * (W - ml - mr); };
    const auto py = [&](double y) {
        if (log_y) y = std::log10(std::max(y, 1e-300));
        return H - mb - (y - y0) / (y1 - y0) * (H - mt - mb);
    };
    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                                   "#8c564b"};
    std::string svg;
    char buf[256];
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"720\" height=\"480\">\n";
    svg += "<rect width=\"720\" height=\"480\" fill=\"white\"/>\n";
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%d\" y=\"24\" font-family=\"sans-serif\" font-size=\"16\">%s</text>\n",
                  ml, title.c_str());
    svg += buf;
    std::snprintf(buf, sizeof buf,
                  "<rect x=\"%d\" y=\"%d\" width=\"%d\" height=\"%d\" fill=\"none\" "
                  "stroke=\"black\"/>\n",
                  ml, mt, W - ml - mr, H - mt - mb);
    svg += buf;
    for (std::size_t si = 0; si < series.size(); ++si) {
        const auto& s = series[si];
        std::string pts;
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            std::snprintf(buf, sizeof buf, "%.2f,%.2f ", px(s.x[i]), py(s.y[i]));
            pts += buf;
        }
        std::snprintf(buf, sizeof buf,
                      "<polyline points=\"%s\" fill=\"none\" stroke=\"%s\" stroke-width=\"1.5\"/>\n",
                      pts.c_str(), colors[si % 6]);
        svg += buf;
        std::snprintf(buf, sizeof buf,
                      "<text x=\"%d\" y=\"%zu\" font-family=\"sans-serif\" font-size=\"12\" "
                      "fill=\"%s\">%s</text>\n",
                      W - mr - 180, mt + 18 * (si + 1), colors[si % 6], s.label.c_str());
        svg += buf;
    }
    // axis end labels
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%d\" y=\"%d\" font-family=\"sans-serif\" font-size=\"11\">%.4g</text>\n",
                  ml - 4, H - mb + 16, x0);
    svg += buf;
    std::snprintf(buf, sizeof buf,
                  "<text x=\"%d\" y=\"%d\" font-family=\"sans-serif\" font-size=\"11\">%.4g</text>\n",
                  W - mr - 40, H - mb + 16, x1);
    svg += buf;
    svg += "</svg>\n";

    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << svg;
}

std::uint64_t fnv1a_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::uint64_t h = 1469598103934665603ull;
    char c;
    while (in.get(c)) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ull;
    }
    return h;
}

}  // namespace srr
