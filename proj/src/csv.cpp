#include "qapbench/csv.hpp"

#include <algorithm>
#include <charconv>
#include <system_error>

#include "qapbench/errors.hpp"

namespace qapbench {

std::string fmt_double(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc{}) throw NumericError("double formatting failed");
    return std::string(buf, ptr);
}

std::string fmt_int(std::int64_t v) {
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc{}) throw NumericError("integer formatting failed");
    return std::string(buf, ptr);
}

std::string fmt_uint(std::uint64_t v) {
    char buf[32];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc{}) throw NumericError("integer formatting failed");
    return std::string(buf, ptr);
}

namespace {

void check_cell(const std::string& cell) {
    if (cell.find_first_of(",\"\n\r") != std::string::npos) {
        throw ValidationError("csv cell contains a delimiter: " + cell);
    }
}

} // namespace

CsvWriter::CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header)
    : path_(path), width_(header.size()) {
    if (header.empty()) throw ValidationError("csv header must not be empty");
    out_.open(path, std::ios::binary | std::ios::trunc);
    if (!out_) throw ResourceError("cannot open " + path.string() + " for writing");
    row(header);
}

void CsvWriter::row(const std::vector<std::string>& cells) {
    if (cells.size() != width_) {
        throw ValidationError("csv row width " + std::to_string(cells.size()) +
                              " does not match header width " + std::to_string(width_));
    }
    for (std::size_t i = 0; i < cells.size(); ++i) {
        check_cell(cells[i]);
        if (i) out_.put(',');
        out_ << cells[i];
    }
    out_.put('\n');
    if (!out_) throw ResourceError("write failed on " + path_.string());
}

void CsvWriter::close() {
    if (out_.is_open()) {
        out_.close();
        if (!out_) throw ResourceError("close failed on " + path_.string());
    }
}

std::size_t CsvTable::col(const std::string& name) const {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw ValidationError("csv column not found: " + name);
    return static_cast<std::size_t>(it - header.begin());
}

CsvTable read_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ResourceError("cannot open " + path.string() + " for reading");
    CsvTable table;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() && in.eof()) break;
        std::vector<std::string> cells;
        std::size_t start = 0;
        while (true) {
            const std::size_t comma = line.find(',', start);
            if (comma == std::string::npos) {
                cells.push_back(line.substr(start));
                break;
            }
            cells.push_back(line.substr(start, comma - start));
            start = comma + 1;
        }
        if (first) {
            table.header = std::move(cells);
            first = false;
        } else {
            if (cells.size() != table.header.size()) {
                throw ValidationError("ragged csv row in " + path.string());
            }
            table.rows.push_back(std::move(cells));
        }
    }
    if (first) throw ValidationError("csv file " + path.string() + " is empty");
    return table;
}

double parse_double(const std::string& cell) {
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (ec != std::errc{} || ptr != cell.data() + cell.size()) {
        throw ValidationError("not a number: '" + cell + "'");
    }
    return v;
}

std::int64_t parse_int(const std::string& cell) {
    std::int64_t v = 0;
    const auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (ec != std::errc{} || ptr != cell.data() + cell.size()) {
        throw ValidationError("not an integer: '" + cell + "'");
    }
    return v;
}

} // namespace qapbench
