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

#pragma once

#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace kraus {

/// Empty cell (monostate) marks an undefined value, e.g. the fidelity of an
/// impossible outcome.
using Cell = std::variant<std::monostate, double, bool, std::string>;

struct Table {
    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add_row(std::vector<Cell> row);
    std::size_t column(const std::string &name) const;
    double number(std::size_t row, const std::string &col) const;
};

/// Ordered key/value echo embedded in every output file.
using Metadata = std::vector<std::pair<std::string, std::string>>;

/// "%.17g"; non-finite values as inf / -inf / nan.
std::string format_double(double x);

/// '#'-prefixed metadata lines, a header row, then one line per row.
std::string to_csv(const Table &t, const Metadata &meta);
/// One document per job:
/// {"meta": {...}, "tables": {name: {"columns": [...], "rows": [[...], ...]}}}
std::string to_json(std::span<const Table> tables, const Metadata &meta);

}  // namespace kraus
