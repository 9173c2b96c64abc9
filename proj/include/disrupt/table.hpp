#pragma once

// Numeric row table for the regression and matching stages: string row ids,
// named double columns, NaN for missing values (rendered as empty fields).

#include <cmath>
#include <optional>
#include <string>
#include <vector>

namespace disrupt {

constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();
inline bool is_missing(double v) { return std::isnan(v); }

struct DataTable {
    std::vector<std::string> row_ids;
    std::vector<std::string> names;
    std::vector<std::vector<double>> cols;  // cols[j].size() == row_ids.size()

    size_t n_rows() const { return row_ids.size(); }
    int col_index(std::string_view name) const;    // -1 when absent
    int require_col(std::string_view name) const;  // throws UserError naming the column
    std::vector<double>& add_col(const std::string& name);
    double cell(size_t row, int col) const { return cols[static_cast<size_t>(col)][row]; }
};

// Reads a delimited file whose first column is the row id and remaining columns
// are numeric (empty = missing). Gzip-transparent.
DataTable read_table(const std::string& path, char delim = ',');

// Inner join on row id; right columns are appended (name collisions keep the
// left column and drop the right one). Row order follows the left table.
DataTable inner_join(const DataTable& left, const DataTable& right);

void write_table(const DataTable& table, const std::string& id_header, std::ostream& os);

}  // namespace disrupt
