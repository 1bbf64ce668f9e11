#include "lindet/result_table.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include <json.hpp>

#include "lindet/errors.hpp"

namespace lindet {

namespace {

std::string cell_text(const Cell& cell) {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::monostate>) {
                return {};
            } else if constexpr (std::is_same_v<T, std::int64_t>) {
                return std::to_string(v);
            } else if constexpr (std::is_same_v<T, double>) {
                return format_real(v);
            } else {
                return v;
            }
        },
        cell);
}

nlohmann::ordered_json cell_json(const Cell& cell) {
    return std::visit(
        [](const auto& v) -> nlohmann::ordered_json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, std::monostate>) {
                return nullptr;
            } else if constexpr (std::is_same_v<T, double>) {
                if (!std::isfinite(v)) return nullptr;
                return v;
            } else {
                return v;
            }
        },
        cell);
}

} // namespace

std::string format_real(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

std::string csv_escape(std::string_view field) {
    if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

ResultTable::ResultTable(std::string experiment, std::vector<std::string> columns, std::uint64_t master_seed,
                         std::size_t trials, std::string snr_convention)
    : experiment_(std::move(experiment)),
      columns_(std::move(columns)),
      master_seed_(master_seed),
      trials_(trials),
      snr_convention_(std::move(snr_convention)) {
    columns_.emplace_back("seed");
    columns_.emplace_back("trials");
}

void ResultTable::add_row(std::vector<Cell> values) {
    if (values.size() + 2 != columns_.size()) {
        throw DimensionError("ResultTable::add_row: wrong number of values for " + experiment_);
    }
    values.emplace_back(static_cast<std::int64_t>(master_seed_));
    values.emplace_back(static_cast<std::int64_t>(trials_));
    rows_.push_back(std::move(values));
}

void ResultTable::set_parameter(std::string key, std::string value) {
    for (auto& [k, v] : parameters_) {
        if (k == key) {
            v = std::move(value);
            return;
        }
    }
    parameters_.emplace_back(std::move(key), std::move(value));
}

std::size_t ResultTable::column_index(std::string_view name) const {
    for (std::size_t i = 0; i < columns_.size(); ++i) {
        if (columns_[i] == name) return i;
    }
    throw InvalidArgumentError("ResultTable: no column '" + std::string(name) + "' in " + experiment_);
}

const Cell& ResultTable::at(std::size_t row, std::string_view column) const {
    return rows_.at(row).at(column_index(column));
}

double ResultTable::number(std::size_t row, std::string_view column) const {
    const Cell& c = at(row, column);
    if (const auto* d = std::get_if<double>(&c)) return *d;
    if (const auto* i = std::get_if<std::int64_t>(&c)) return static_cast<double>(*i);
    if (std::holds_alternative<std::monostate>(c)) return std::numeric_limits<double>::quiet_NaN();
    throw InvalidArgumentError("ResultTable: column '" + std::string(column) + "' is not numeric");
}

std::string ResultTable::text(std::size_t row, std::string_view column) const {
    return cell_text(at(row, column));
}

void ResultTable::write_csv(std::ostream& out) const {
    for (std::size_t i = 0; i < columns_.size(); ++i) {
        out << (i ? "," : "") << csv_escape(columns_[i]);
    }
    out << "\r\n";
    for (const auto& row : rows_) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            out << (i ? "," : "") << csv_escape(cell_text(row[i]));
        }
        out << "\r\n";
    }
    out << "# lindet " << kVersion << " experiment=" << experiment_ << " seed=" << master_seed_
        << " trials=" << trials_ << " snr_convention=" << snr_convention_;
    for (const auto& [k, v] : parameters_) out << ' ' << k << '=' << v;
    out << "\r\n";
}

void ResultTable::write_json(std::ostream& out) const {
    nlohmann::ordered_json meta;
    meta["experiment"] = experiment_;
    meta["version"] = kVersion;
    meta["seed"] = master_seed_;
    meta["trials"] = trials_;
    meta["snr_convention"] = snr_convention_;
    nlohmann::ordered_json params = nlohmann::ordered_json::object();
    for (const auto& [k, v] : parameters_) params[k] = v;
    meta["parameters"] = std::move(params);

    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto& row : rows_) {
        nlohmann::ordered_json obj;
        for (std::size_t i = 0; i < row.size(); ++i) obj[columns_[i]] = cell_json(row[i]);
        rows.push_back(std::move(obj));
    }
    nlohmann::ordered_json doc;
    doc["metadata"] = std::move(meta);
    doc["rows"] = std::move(rows);
    out << doc.dump(2) << '\n';
}

} // namespace lindet
