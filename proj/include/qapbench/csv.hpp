#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace qapbench {

// Shortest decimal form that round-trips to the same double (to_chars).
std::string fmt_double(double v);
std::string fmt_int(std::int64_t v);
std::string fmt_uint(std::uint64_t v);

// Minimal CSV: cells must not contain commas, quotes, or newlines (all our
// fields are numbers and short identifiers). Rows are written with '\n' so
// output bytes are platform-independent.
class CsvWriter {
public:
    CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header);
    void row(const std::vector<std::string>& cells);
    void close();

private:
    std::ofstream out_;
    std::filesystem::path path_;
    std::size_t width_;
};

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    // Column index by name; throws if absent.
    std::size_t col(const std::string& name) const;
};

CsvTable read_csv(const std::filesystem::path& path);

double parse_double(const std::string& cell);
std::int64_t parse_int(const std::string& cell);

} // namespace qapbench
