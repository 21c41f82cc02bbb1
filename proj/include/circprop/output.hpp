#pragma once

#include <ostream>
#include <string>
#include <utility>
#include <vector>

namespace circprop {

/// Rectangular numeric table. NaN marks a cell with no value (undefined phase).
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    void add_row(std::vector<double> row);
};

/// Run description echoed at the top of every output.
struct Provenance {
    std::string command;
    std::vector<std::pair<std::string, std::string>> config;  ///< kept in insertion order
};

enum class OutputFormat { csv, json };

std::string library_version();

/// Shortest text that reads back to the same double; "nan" / "inf" / "-inf"
/// for non-finite values.
std::string format_number(double v);

/// "# circprop <version> <command> key=value ..." then a header row, then data.
void write_csv(std::ostream& out, const Provenance& prov, const Table& table);
/// Object with keys tool, version, command, config, columns, rows; NaN cells are null.
void write_json(std::ostream& out, const Provenance& prov, const Table& table);

void write_table(std::ostream& out, OutputFormat format, const Provenance& prov, const Table& table);

}  // namespace circprop
