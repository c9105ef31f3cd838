#include "epocs/csv.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace epocs {

std::string format_double(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 17);
    return std::string(buf, res.ptr);
}

Signal load_csv_signal(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CsvError("csv: cannot open " + path, 0);
    std::vector<double> values;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        double x = 0.0;
        const char* b = line.data();
        const char* e = line.data() + line.size();
        const auto res = std::from_chars(b, e, x);
        if (res.ec != std::errc() || res.ptr != e)
            throw CsvError("csv: non-numeric line '" + line + "'", lineno);
        values.push_back(x);
    }
    if (values.empty()) throw CsvError("csv: empty input " + path, lineno);
    return Signal(std::move(values));
}

void save_csv_signal(const std::string& path, const Signal& s, const std::string& comment) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw CsvError("csv: cannot write " + path, 0);
    if (!comment.empty()) out << "# " << comment << "\n";
    for (std::size_t i = 0; i < s.size(); ++i) out << format_double(s[i]) << "\n";
}

void CsvTable::add_row(std::vector<std::string> cells) {
    if (cells.size() != header_.size())
        throw CsvError("csv: row width does not match header", rows_.size() + 1);
    rows_.push_back(std::move(cells));
}

void CsvTable::add_row(std::vector<double> values) {
    std::vector<std::string> cells;
    cells.reserve(values.size());
    for (double v : values) cells.push_back(format_double(v));
    add_row(std::move(cells));
}

void CsvTable::save(const std::string& path, const std::string& comment) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw CsvError("csv: cannot write " + path, 0);
    if (!comment.empty()) out << "# " << comment << "\n";
    for (std::size_t i = 0; i < header_.size(); ++i)
        out << header_[i] << (i + 1 < header_.size() ? "," : "");
    out << "\n";
    for (const auto& row : rows_) {
        for (std::size_t i = 0; i < row.size(); ++i)
            out << row[i] << (i + 1 < row.size() ? "," : "");
        out << "\n";
    }
}

CsvTable CsvTable::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CsvError("csv: cannot open " + path, 0);
    std::string line;
    std::size_t lineno = 0;
    auto split = [](const std::string& s) {
        std::vector<std::string> cells;
        std::stringstream ss(s);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        if (!s.empty() && s.back() == ',') cells.push_back("");
        return cells;
    };
    std::vector<std::string> header;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        header = split(line);
        break;
    }
    if (header.empty()) throw CsvError("csv: missing header in " + path, lineno);
    CsvTable table(header);
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        auto cells = split(line);
        if (cells.size() != header.size())
            throw CsvError("csv: ragged row in " + path, lineno);
        table.rows_.push_back(std::move(cells));
    }
    return table;
}

} // namespace epocs
