#include "effg/table.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include <fmt/format.h>
#include <json.hpp>

namespace effg {

void Table::add(std::vector<std::string> row) {
    if (row.size() != header.size())
        throw std::logic_error(fmt::format("table row has {} cells, header has {}", row.size(),
                                           header.size()));
    rows.push_back(std::move(row));
}

std::string format_number(double x) {
    if (std::isnan(x))
        return "nan";
    if (std::isinf(x))
        return x > 0 ? "inf" : "-inf";
    return fmt::format("{}", x);
}

namespace {

std::string csv_cell(const std::string &s) {
    if (s.find_first_of(",\"\n") == std::string::npos)
        return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + '"';
}

nlohmann::ordered_json json_cell(const std::string &s) {
    if (s.empty())
        return s;
    long long i = 0;
    auto [pi, ei] = std::from_chars(s.data(), s.data() + s.size(), i);
    if (ei == std::errc{} && pi == s.data() + s.size())
        return i;
    double d = 0;
    auto [pd, ed] = std::from_chars(s.data(), s.data() + s.size(), d);
    if (ed == std::errc{} && pd == s.data() + s.size() && std::isfinite(d))
        return d;
    return s;
}

} // namespace

std::string to_csv(const Table &t) {
    std::string out;
    auto line = [&](const std::vector<std::string> &cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i)
                out += ',';
            out += csv_cell(cells[i]);
        }
        out += '\n';
    };
    line(t.header);
    for (const auto &r : t.rows)
        line(r);
    return out;
}

std::string to_json(const Table &t) {
    auto arr = nlohmann::ordered_json::array();
    for (const auto &r : t.rows) {
        nlohmann::ordered_json obj;
        for (std::size_t i = 0; i < r.size(); ++i)
            obj[t.header[i]] = json_cell(r[i]);
        arr.push_back(std::move(obj));
    }
    return arr.dump(2) + "\n";
}

void write_text(const std::filesystem::path &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::ios_base::failure("cannot write '" + path.string() + "'");
    out << text;
    if (!out)
        throw std::ios_base::failure("write failed for '" + path.string() + "'");
}

std::filesystem::path write_table(const std::filesystem::path &dir, const std::string &stem,
                                  const Table &t, OutputFormat format) {
    auto path = dir / (stem + (format == OutputFormat::Csv ? ".csv" : ".json"));
    write_text(path, format == OutputFormat::Csv ? to_csv(t) : to_json(t));
    return path;
}

} // namespace effg
