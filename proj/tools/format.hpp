#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace mcrit::cli
{

using Json = nlohmann::ordered_json;

/// Nine significant digits in scientific notation; inf, -inf and nan for
/// non-finite values. Independent of the global locale.
std::string number(double x);

/// A JSON number carrying the same nine digits, or null when non-finite.
Json json_number(double x);

/// Comma-separated table with a mandatory header row. Comment lines are
/// written first, each prefixed by "# ".
class CsvTable
{
public:
    explicit CsvTable(std::vector<std::string> header);

    void comment(std::string line);
    void row(std::vector<std::string> cells);
    std::string str() const;

private:
    std::vector<std::string> m_header;
    std::vector<std::string> m_comments;
    std::vector<std::vector<std::string>> m_rows;
};

std::string boolean(bool b);

/// Quotes a CSV cell when it contains a comma, a quote or a newline.
std::string csv_cell(const std::string &s);

} // namespace mcrit::cli
