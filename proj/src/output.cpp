#include "circprop/output.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

#include <json.hpp>

#include "circprop/error.hpp"

#ifndef CIRCPROP_VERSION
#define CIRCPROP_VERSION "0.0.0"
#endif

namespace circprop {

void Table::add_row(std::vector<double> row) {
    if (row.size() != columns.size()) throw InvalidArgument("table row width does not match the header");
    rows.push_back(std::move(row));
}

std::string library_version() { return CIRCPROP_VERSION; }

std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    if (v == 0.0) return "0";  // drops the sign of -0
    char buf[40];
    for (int prec = 6; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, v);
        if (std::strtod(buf, nullptr) == v) break;
    }
    return buf;
}

void write_csv(std::ostream& out, const Provenance& prov, const Table& table) {
    out << "# circprop " << library_version() << ' ' << prov.command;
    for (const auto& [k, v] : prov.config) out << ' ' << k << '=' << v;
    out << '\n';
    for (std::size_t c = 0; c < table.columns.size(); ++c) out << (c ? "," : "") << table.columns[c];
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << format_number(row[c]);
        out << '\n';
    }
}

void write_json(std::ostream& out, const Provenance& prov, const Table& table) {
    nlohmann::ordered_json doc;
    doc["tool"] = "circprop";
    doc["version"] = library_version();
    doc["command"] = prov.command;
    nlohmann::ordered_json config = nlohmann::ordered_json::object();
    for (const auto& [k, v] : prov.config) config[k] = v;
    doc["config"] = config;
    doc["columns"] = table.columns;
    auto rows = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        auto r = nlohmann::ordered_json::array();
        for (double v : row) {
            if (std::isfinite(v)) {
                r.push_back(v);
            } else {
                r.push_back(nullptr);
            }
        }
        rows.push_back(std::move(r));
    }
    doc["rows"] = std::move(rows);
    out << doc.dump(1) << '\n';
}

void write_table(std::ostream& out, OutputFormat format, const Provenance& prov, const Table& table) {
    if (format == OutputFormat::json) {
        write_json(out, prov, table);
    } else {
        write_csv(out, prov, table);
    }
}

}  // namespace circprop
