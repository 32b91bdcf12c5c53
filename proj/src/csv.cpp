#include "bband/csv.hpp"

#include "bband/error.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <sstream>

namespace bband {

namespace {

std::vector<std::string> split_line(std::string_view line)
{
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(field));
            field.clear();
        } else {
            field += c;
        }
    }
    fields.push_back(std::move(field));
    return fields;
}

std::string escape(const std::string& field)
{
    if (field.find_first_of(",\"\n") == std::string::npos) {
        return field;
    }
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    out += '"';
    return out;
}

}  // namespace

int CsvTable::column(std::string_view name) const
{
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == name) {
            return static_cast<int>(i);
        }
    }
    return -1;
}

CsvTable read_csv(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot open " + path.string());
    }
    CsvTable table;
    table.source = path;
    std::string line;
    int line_no = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (line_no == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) {
            line.erase(0, 3);
        }
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.find_first_not_of(" \t") == std::string::npos) {
            continue;
        }
        auto fields = split_line(line);
        if (!have_header) {
            table.header = std::move(fields);
            have_header = true;
            continue;
        }
        if (fields.size() != table.header.size()) {
            throw ValidationError(path.string() + ":" + std::to_string(line_no) + ": expected " +
                                  std::to_string(table.header.size()) + " fields, found " +
                                  std::to_string(fields.size()));
        }
        table.rows.push_back(std::move(fields));
        table.line_numbers.push_back(line_no);
    }
    if (!have_header) {
        throw ValidationError(path.string() + ": empty file (no header)");
    }
    return table;
}

CsvWriter::CsvWriter(const std::filesystem::path& path)
    : m_path(path)
    , m_out(path, std::ios::binary | std::ios::trunc)
{
    if (!m_out) {
        throw IoError("cannot write " + path.string());
    }
}

void CsvWriter::row(const std::vector<std::string>& fields)
{
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i > 0) {
            m_out << ',';
        }
        m_out << escape(fields[i]);
    }
    m_out << '\n';
}

void CsvWriter::close()
{
    m_out.close();
    if (m_out.fail()) {
        throw IoError("failed writing " + m_path.string());
    }
}

std::string format_exact(double v)
{
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string format_sig(double v, int digits)
{
    if (v == 0.0 || !std::isfinite(v)) {
        return v == 0.0 ? "0" : format_exact(v);
    }
    // Let printf do the correctly rounded mantissa, then lay it out positionally.
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*e", digits - 1, v);
    std::string s(buf);
    const bool negative = s[0] == '-';
    if (negative) {
        s.erase(0, 1);
    }
    const auto epos = s.find('e');
    const int exponent = std::atoi(s.c_str() + epos + 1);
    std::string mantissa;
    for (std::size_t i = 0; i < epos; ++i) {
        if (s[i] != '.') {
            mantissa += s[i];
        }
    }
    std::string out;
    if (exponent >= 0) {
        const auto int_len = static_cast<std::size_t>(exponent) + 1;
        if (mantissa.size() <= int_len) {
            out = mantissa + std::string(int_len - mantissa.size(), '0');
        } else {
            out = mantissa.substr(0, int_len) + "." + mantissa.substr(int_len);
        }
    } else {
        out = "0." + std::string(static_cast<std::size_t>(-exponent - 1), '0') + mantissa;
    }
    if (out.find('.') != std::string::npos) {
        while (out.back() == '0') {
            out.pop_back();
        }
        if (out.back() == '.') {
            out.pop_back();
        }
    }
    return negative ? "-" + out : out;
}

}  // namespace bband
