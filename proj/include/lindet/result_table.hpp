#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace lindet {

inline constexpr std::string_view kVersion = "0.1.0";

/// Empty, integer, real or text.
using Cell = std::variant<std::monostate, std::int64_t, double, std::string>;

/**
 * Tagged experiment output.
 *
 * Every table ends with `seed` and `trials` columns that add_row fills in, so
 * each row records the configuration that produced it.
 */
class ResultTable {
public:
    ResultTable(std::string experiment, std::vector<std::string> columns, std::uint64_t master_seed,
                std::size_t trials, std::string snr_convention);

    /// Appends a row; `values` covers every column except the trailing seed/trials pair.
    void add_row(std::vector<Cell> values);

    /// Extra metadata recorded alongside seed/trials/convention.
    void set_parameter(std::string key, std::string value);

    const std::string& experiment() const noexcept { return experiment_; }
    const std::vector<std::string>& columns() const noexcept { return columns_; }
    const std::vector<std::vector<Cell>>& rows() const noexcept { return rows_; }
    std::size_t row_count() const noexcept { return rows_.size(); }
    std::uint64_t master_seed() const noexcept { return master_seed_; }
    std::size_t trials() const noexcept { return trials_; }
    const std::string& snr_convention() const noexcept { return snr_convention_; }
    const std::vector<std::pair<std::string, std::string>>& parameters() const noexcept { return parameters_; }

    std::size_t column_index(std::string_view name) const;
    const Cell& at(std::size_t row, std::string_view column) const;
    /// Numeric cell as double (integers widened; empty cells give NaN).
    double number(std::size_t row, std::string_view column) const;
    std::string text(std::size_t row, std::string_view column) const;

    /// RFC 4180 CSV: header line, data rows, then one `#` metadata line.
    void write_csv(std::ostream& out) const;
    /// {"metadata": {...}, "rows": [{...}, ...]}; non-finite reals become null.
    void write_json(std::ostream& out) const;

private:
    std::string experiment_;
    std::vector<std::string> columns_;
    std::vector<std::vector<Cell>> rows_;
    std::uint64_t master_seed_;
    std::size_t trials_;
    std::string snr_convention_;
    std::vector<std::pair<std::string, std::string>> parameters_;
};

/// Formats a real with 9 significant digits ("inf"/"-inf"/"nan" for non-finite values).
std::string format_real(double v);

/// Quotes a CSV field when it contains a comma, quote or line break.
std::string csv_escape(std::string_view field);

} // namespace lindet
