#pragma once

#include "epocs/signal.hpp"

#include <stdexcept>
#include <string>
#include <vector>

namespace epocs {

class CsvError : public std::runtime_error {
public:
    CsvError(const std::string& what, std::size_t line) : std::runtime_error(what), line_(line) {}
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

// Locale-independent shortest-lossless rendering (17 significant digits,
// '.' decimal point).
std::string format_double(double x);

// One numeric value per line.  Round trips float64 losslessly.
Signal load_csv_signal(const std::string& path);
void save_csv_signal(const std::string& path, const Signal& s, const std::string& comment = "");

// Header + rows table with an optional '#'-prefixed comment line on top.
class CsvTable {
public:
    explicit CsvTable(std::vector<std::string> header) : header_(std::move(header)) {}

    void add_row(std::vector<std::string> cells);
    void add_row(std::vector<double> values);

    const std::vector<std::string>& header() const { return header_; }
    const std::vector<std::vector<std::string>>& rows() const { return rows_; }

    void save(const std::string& path, const std::string& comment = "") const;
    static CsvTable load(const std::string& path);

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

} // namespace epocs
