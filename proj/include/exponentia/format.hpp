#pragma once
// Number and CSV formatting. Doubles print as the shortest decimal string that
// round-trips to the same bits (std::to_chars), which keeps emitted files both
// exact and byte-stable across runs.

#include <array>
#include <charconv>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace exponentia {

inline std::string format_double(double v) {
    std::array<char, 40> buf;
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    if (res.ec != std::errc{})
        throw std::runtime_error("format_double: to_chars failed");
    return std::string(buf.data(), res.ptr);
}

// Minimal CSV accumulator: fixed header, numeric rows, comma separator, LF line
// endings. The caller writes the final string to a stream or file.
class CsvWriter {
public:
    explicit CsvWriter(const std::vector<std::string>& header) : cols_(header.size()) {
        if (header.empty())
            throw std::invalid_argument("csv: header must be non-empty");
        for (std::size_t i = 0; i < header.size(); ++i) {
            if (i > 0)
                out_ += ',';
            out_ += header[i];
        }
        out_ += '\n';
    }

    void row(const std::vector<double>& cells) {
        if (cells.size() != cols_)
            throw std::invalid_argument("csv: row width disagrees with header");
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i > 0)
                out_ += ',';
            out_ += format_double(cells[i]);
        }
        out_ += '\n';
    }

    const std::string& str() const { return out_; }

private:
    std::string out_;
    std::size_t cols_;
};

} // namespace exponentia
