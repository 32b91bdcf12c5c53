#pragma once

#include <filesystem>
#include <fstream>
#include <string>
#include <string_view>
#include <vector>

namespace bband {

struct CsvTable
{
    std::filesystem::path source;
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    std::vector<int> line_numbers;  // 1-based source line of each row

    /// Column index, or -1 when absent.
    int column(std::string_view name) const;
};

/// Headered CSV with RFC 4180 quoting. Blank lines are skipped and a UTF-8
/// BOM is stripped. Throws IoError when the file cannot be read and
/// ValidationError on ragged rows.
CsvTable read_csv(const std::filesystem::path& path);

class CsvWriter
{
public:
    explicit CsvWriter(const std::filesystem::path& path);

    void row(const std::vector<std::string>& fields);
    void close();

private:
    std::filesystem::path m_path;
    std::ofstream m_out;
};

/// Round-trip exact ("%.17g").
std::string format_exact(double v);

/// Positional notation rounded to `digits` significant digits, trailing
/// fractional zeros removed. 1234567.8 -> "1234570", 0.000123456789 -> "0.000123457".
std::string format_sig(double v, int digits = 6);

}  // namespace bband
