// Copyright 2026 The kraus Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "kraus/table.hpp"

#include <cmath>
#include <cstdio>
#include <json.hpp>
#include <sstream>

#include "kraus/errors.hpp"

namespace kraus {

namespace {

std::string csv_cell(const Cell &c) {
    struct Visitor {
        std::string operator()(std::monostate) const { return ""; }
        std::string operator()(double x) const { return format_double(x); }
        std::string operator()(bool b) const { return b ? "true" : "false"; }
        std::string operator()(const std::string &s) const {
            if (s.find_first_of(",\"\n") == std::string::npos) return s;
            std::string quoted = "\"";
            for (char ch : s) quoted += ch == '"' ? std::string("\"\"") : std::string(1, ch);
            return quoted + "\"";
        }
    };
    return std::visit(Visitor{}, c);
}

nlohmann::ordered_json json_cell(const Cell &c) {
    struct Visitor {
        nlohmann::ordered_json operator()(std::monostate) const { return nullptr; }
        nlohmann::ordered_json operator()(double x) const {
            if (!std::isfinite(x)) return format_double(x);
            return x;
        }
        nlohmann::ordered_json operator()(bool b) const { return b; }
        nlohmann::ordered_json operator()(const std::string &s) const { return s; }
    };
    return std::visit(Visitor{}, c);
}

}  // namespace

void Table::add_row(std::vector<Cell> row) {
    if (row.size() != columns.size())
        throw KrausError(ErrorCode::InvalidArgument, "row width does not match columns of " + name);
    rows.push_back(std::move(row));
}

std::size_t Table::column(const std::string &col) const {
    for (std::size_t i = 0; i < columns.size(); ++i)
        if (columns[i] == col) return i;
    throw KrausError(ErrorCode::InvalidArgument, "no column " + col + " in " + name);
}

double Table::number(std::size_t row, const std::string &col) const {
    const Cell &c = rows.at(row).at(column(col));
    if (const double *x = std::get_if<double>(&c)) return *x;
    if (const bool *b = std::get_if<bool>(&c)) return *b ? 1.0 : 0.0;
    return std::nan("");
}

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string to_csv(const Table &t, const Metadata &meta) {
    std::ostringstream out;
    out << "# table: " << t.name << '\n';
    for (const auto &[key, value] : meta) out << "# " << key << ": " << value << '\n';
    for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i];
    out << '\n';
    for (const auto &row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_cell(row[i]);
        out << '\n';
    }
    return out.str();
}

std::string to_json(std::span<const Table> tables, const Metadata &meta) {
    nlohmann::ordered_json doc;
    nlohmann::ordered_json m = nlohmann::ordered_json::object();
    for (const auto &[key, value] : meta) m[key] = value;
    doc["meta"] = m;
    nlohmann::ordered_json all = nlohmann::ordered_json::object();
    for (const Table &t : tables) {
        nlohmann::ordered_json rows = nlohmann::ordered_json::array();
        for (const auto &row : t.rows) {
            nlohmann::ordered_json r = nlohmann::ordered_json::array();
            for (const Cell &c : row) r.push_back(json_cell(c));
            rows.push_back(std::move(r));
        }
        all[t.name] = {{"columns", t.columns}, {"rows", std::move(rows)}};
    }
    doc["tables"] = std::move(all);
    return doc.dump(2) + "\n";
}

}  // namespace kraus
