#pragma once

#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fracbeam {

/// Locale-independent formatting with 17 significant digits.
[[nodiscard]] std::string format_double(double value);

/// Writes `columns` (all the same length) under `header` as comma-separated
/// rows with LF endings. Every `stride`-th row is kept, plus the last one.
void write_csv(std::ostream& out, std::span<const std::string_view> header,
               std::span<const std::span<const double>> columns, std::size_t stride = 1);

/// Row-oriented variant for heterogeneous row counts.
class CsvWriter {
public:
    CsvWriter(std::ostream& out, std::span<const std::string_view> header);

    void row(std::span<const double> values);

private:
    std::ostream* out_;
    std::size_t width_;
};

}  // namespace fracbeam
