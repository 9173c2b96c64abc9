#include "disrupt/table.hpp"

#include <ostream>
#include <unordered_map>

#include "disrupt/csv.hpp"
#include "disrupt/errors.hpp"

namespace disrupt {

int DataTable::col_index(std::string_view name) const {
    for (size_t j = 0; j < names.size(); ++j)
        if (names[j] == name) return static_cast<int>(j);
    return -1;
}

int DataTable::require_col(std::string_view name) const {
    const int j = col_index(name);
    if (j < 0) throw UserError("column not found: " + std::string(name));
    return j;
}

std::vector<double>& DataTable::add_col(const std::string& name) {
    if (col_index(name) >= 0) throw UserError("duplicate column: " + name);
    names.push_back(name);
    cols.emplace_back(n_rows(), kMissing);
    return cols.back();
}

DataTable read_table(const std::string& path, char delim) {
    const std::string text = slurp_file(path);
    const auto lines = split_lines(text);
    if (lines.empty()) throw UserError(path + ": empty file");

    std::vector<std::string_view> f;
    std::string storage;
    split_fields(lines[0], delim, f, storage);
    if (f.size() < 2) throw UserError(path + ": need an id column plus at least one value column");

    DataTable t;
    for (size_t j = 1; j < f.size(); ++j) t.names.emplace_back(trim(f[j]));
    t.cols.resize(t.names.size());

    for (size_t li = 1; li < lines.size(); ++li) {
        if (trim(lines[li]).empty()) continue;
        split_fields(lines[li], delim, f, storage);
        if (f.size() != t.names.size() + 1)
            throw UserError(path + ":" + std::to_string(li + 1) + ": expected " +
                            std::to_string(t.names.size() + 1) + " fields, got " +
                            std::to_string(f.size()));
        t.row_ids.emplace_back(trim(f[0]));
        for (size_t j = 0; j < t.names.size(); ++j) {
            const std::string_view cell = trim(f[j + 1]);
            if (cell.empty()) {
                t.cols[j].push_back(kMissing);
                continue;
            }
            double v;
            if (!parse_f64(cell, v))
                throw UserError(path + ":" + std::to_string(li + 1) + ": bad numeric value '" +
                                std::string(cell) + "' in column " + t.names[j]);
            t.cols[j].push_back(v);
        }
    }
    return t;
}

DataTable inner_join(const DataTable& left, const DataTable& right) {
    std::unordered_map<std::string, size_t> right_rows;
    right_rows.reserve(right.n_rows() * 2);
    for (size_t i = 0; i < right.n_rows(); ++i) right_rows.emplace(right.row_ids[i], i);

    DataTable out;
    out.names = left.names;
    std::vector<size_t> right_keep;
    for (size_t j = 0; j < right.names.size(); ++j)
        if (left.col_index(right.names[j]) < 0) {
            out.names.push_back(right.names[j]);
            right_keep.push_back(j);
        }
    out.cols.resize(out.names.size());

    for (size_t i = 0; i < left.n_rows(); ++i) {
        auto it = right_rows.find(left.row_ids[i]);
        if (it == right_rows.end()) continue;
        out.row_ids.push_back(left.row_ids[i]);
        for (size_t j = 0; j < left.names.size(); ++j) out.cols[j].push_back(left.cols[j][i]);
        for (size_t j = 0; j < right_keep.size(); ++j)
            out.cols[left.names.size() + j].push_back(right.cols[right_keep[j]][it->second]);
    }
    return out;
}

void write_table(const DataTable& table, const std::string& id_header, std::ostream& os) {
    os << id_header;
    for (const auto& name : table.names) os << ',' << name;
    os << '\n';
    for (size_t i = 0; i < table.n_rows(); ++i) {
        os << table.row_ids[i];
        for (size_t j = 0; j < table.names.size(); ++j) {
            os << ',';
            if (!is_missing(table.cols[j][i])) os << format_real(table.cols[j][i]);
        }
        os << '\n';
    }
}

}  // namespace disrupt
