#include "fracbeam/csv.hpp"

#include <array>
#include <charconv>

#include "fracbeam/errors.hpp"

namespace fracbeam {

std::string format_double(double value) {
    std::array<char, 64> buf{};
    const auto res =
        std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::general, 17);
    return std::string(buf.data(), res.ptr);
}

namespace {

void write_header(std::ostream& out, std::span<const std::string_view> header) {
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) out << ',';
        out << header[i];
    }
    out << '\n';
}

}  // namespace

void write_csv(std::ostream& out, std::span<const std::string_view> header,
               std::span<const std::span<const double>> columns, std::size_t stride) {
    if (header.size() != columns.size()) {
        throw ArgumentError("CSV header and column count differ");
    }
    if (stride == 0) {
        throw ArgumentError("CSV stride must be positive");
    }
    const std::size_t rows = columns.empty() ? 0 : columns.front().size();
    for (const auto& c : columns) {
        if (c.size() != rows) throw ArgumentError("CSV columns differ in length");
    }
    write_header(out, header);
    for (std::size_t r = 0; r < rows; ++r) {
        if (r % stride != 0 && r + 1 != rows) continue;
        for (std::size_t c = 0; c < columns.size(); ++c) {
            if (c) out << ',';
            out << format_double(columns[c][r]);
        }
        out << '\n';
    }
}

CsvWriter::CsvWriter(std::ostream& out, std::span<const std::string_view> header)
    : out_(&out), width_(header.size()) {
    write_header(out, header);
}

void CsvWriter::row(std::span<const double> values) {
    if (values.size() != width_) {
        throw ArgumentError("CSV row width does not match the header");
    }
    for (std::size_t c = 0; c < values.size(); ++c) {
        if (c) *out_ << ',';
        *out_ << format_double(values[c]);
    }
    *out_ << '\n';
}

}  // namespace fracbeam
