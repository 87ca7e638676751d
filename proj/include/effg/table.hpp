#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace effg {

/// Plain string table written as CSV or as a JSON array of row objects.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    void add(std::vector<std::string> row);
};

enum class OutputFormat { Csv, Json };

/// Shortest round-trip decimal form; "inf"/"-inf"/"nan" for non-finite values.
std::string format_number(double x);

std::string to_csv(const Table &t);
/// Cells that parse as numbers are emitted as JSON numbers.
std::string to_json(const Table &t);

void write_text(const std::filesystem::path &path, const std::string &text);
/// Writes `<stem>.csv` or `<stem>.json` under `dir` and returns the path.
std::filesystem::path write_table(const std::filesystem::path &dir, const std::string &stem,
                                  const Table &t, OutputFormat format);

} // namespace effg
