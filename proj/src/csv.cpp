#include "inspect/csv.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>
#include <vector>

namespace inspect {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

double parse_cell(std::string_view cell, std::size_t line, std::size_t column) {
    cell = trim(cell);
    if (!cell.empty() && cell.front() == '+') cell.remove_prefix(1);
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value);
    if (cell.empty() || ec != std::errc() || ptr != cell.data() + cell.size())
        throw ParseError("cannot parse '" + std::string(cell) + "' as a number", line, column);
    if (!std::isfinite(value)) throw ParseError("non-finite value '" + std::string(cell) + "'", line, column);
    return value;
}

}  // namespace

Matrix read_matrix_csv(std::istream& in, const CsvOptions& options) {
    std::vector<double> values;
    std::size_t cols = 0, rows = 0, line_no = 0;
    std::string line;
    bool skipped_header = !options.header;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        if (!skipped_header) {
            skipped_header = true;
            continue;
        }
        std::size_t count = 0, start = 0;
        const std::string_view view(line);
        while (true) {
            const std::size_t stop = view.find(options.delimiter, start);
            const std::string_view cell = view.substr(start, stop == std::string_view::npos ? std::string_view::npos : stop - start);
            ++count;
            if (rows > 0 && count > cols)
                throw IoError("ragged input: line " + std::to_string(line_no) + " has more than " +
                              std::to_string(cols) + " fields");
            values.push_back(parse_cell(cell, line_no, count));
            if (stop == std::string_view::npos) break;
            start = stop + 1;
        }
        if (rows == 0) cols = count;
        if (count != cols)
            throw IoError("ragged input: line " + std::to_string(line_no) + " has " + std::to_string(count) +
                          " fields, expected " + std::to_string(cols) + " (column " + std::to_string(count + 1) + ")");
        ++rows;
    }
    if (in.bad()) throw IoError("read failure");
    if (rows == 0) throw IoError("input holds no data rows");
    Matrix m(static_cast<Index>(rows), static_cast<Index>(cols));
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) m(static_cast<Index>(r), static_cast<Index>(c)) = values[r * cols + c];
    if (options.transpose) return m.transpose();
    return m;
}

Matrix read_matrix_csv(const std::string& path, const CsvOptions& options) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    return read_matrix_csv(in, options);
}

std::string format_double(double x) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
    if (ec != std::errc()) throw Error("number formatting failed");
    return std::string(buf, ptr);
}

void write_matrix_csv(std::ostream& out, MatrixRef m, char delimiter) {
    for (Index i = 0; i < m.rows(); ++i) {
        for (Index j = 0; j < m.cols(); ++j) {
            if (j > 0) out << delimiter;
            out << format_double(m(i, j));
        }
        out << '\n';
    }
}

void write_matrix_csv(const std::string& path, MatrixRef m, char delimiter) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    write_matrix_csv(out, m, delimiter);
    if (!out) throw IoError("write to '" + path + "' failed");
}

}  // namespace inspect
