#include "format.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace mcrit::cli
{

std::string number(double x)
{
    if (std::isnan(x)) {
        return "nan";
    }
    if (std::isinf(x)) {
        return x > 0 ? "inf" : "-inf";
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.8e", x);
    return buf;
}

Json json_number(double x)
{
    if (!std::isfinite(x)) {
        return nullptr;
    }
    return std::strtod(number(x).c_str(), nullptr);
}

CsvTable::CsvTable(std::vector<std::string> header) : m_header(std::move(header))
{
}

void CsvTable::comment(std::string line)
{
    m_comments.push_back(std::move(line));
}

void CsvTable::row(std::vector<std::string> cells)
{
    m_rows.push_back(std::move(cells));
}

std::string CsvTable::str() const
{
    std::string out;
    for (const auto &c : m_comments) {
        out += "# " + c + "\n";
    }
    const auto line = [&out](const std::vector<std::string> &cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            out += (i ? "," : "") + cells[i];
        }
        out += "\n";
    };
    line(m_header);
    for (const auto &r : m_rows) {
        line(r);
    }
    return out;
}

std::string boolean(bool b)
{
    return b ? "true" : "false";
}

std::string csv_cell(const std::string &s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        out += c == '"' ? "\"\"" : std::string(1, c);
    }
    return out + "\"";
}

} // namespace mcrit::cli
