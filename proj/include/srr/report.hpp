#pragma once
#include <string>
#include <vector>

namespace srr {

/// RFC-4180-style CSV writer: header row, '.' decimal point, LF line ends,
/// numbers at full round-trip precision so equal runs give equal bytes.
class CsvWriter {
public:
    explicit CsvWriter(std::vector<std::string> header);
    void add_row(const std::vector<double>& values);
    void add_row_mixed(const std::vector<std::string>& values);
    const std::string& text() const { return text_; }
    void write(const std::string& path) const;
    static std::string format_number(double v);

private:
    std::size_t n_cols_;
    std::string text_;
};

struct SvgSeries {
    std::string label;
    std::vector<double> x, y;
};

/// Minimal polyline plot; a convenience view of the CSVs, no extra numerics.
void write_svg_plot(const std::string& path, const std::string& title,
                    const std::vector<SvgSeries>& series, bool log_y = false);

std::uint64_t fnv1a_file(const std::string& path);

}  // namespace srr
