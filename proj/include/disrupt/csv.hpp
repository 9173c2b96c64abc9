#pragma once

// Delimited-text plumbing shared by every file interface: gzip-transparent
// reading (by .gz extension), minimal quoted-field support, and atomic output
// (write to <path>.tmp, rename on commit) so failed runs leave no partial files.

#include <fstream>
#include <string>
#include <string_view>
#include <vector>

namespace disrupt {

// Whole file as a string; decompresses when the path ends in ".gz".
std::string slurp_file(const std::string& path);

// Views over the lines of `text` (without terminators; handles \n and \r\n).
// A trailing newline does not produce an empty final line.
std::vector<std::string_view> split_lines(std::string_view text);

// Splits one record into fields. Fields may be double-quoted; inside quotes the
// delimiter is literal and "" is an escaped quote (unquoted content is returned
// as a view, quoted content is unescaped into `storage`).
void split_fields(std::string_view line, char delim, std::vector<std::string_view>& out,
                  std::string& storage);

std::string_view trim(std::string_view s);

// Real number with 10 significant digits, the format used by all tabular outputs.
std::string format_real(double v);

bool parse_i64(std::string_view s, long long& out);
bool parse_f64(std::string_view s, double& out);

// Output file that only appears under its final name on commit().
class AtomicWriter {
public:
    explicit AtomicWriter(const std::string& path);
    ~AtomicWriter();
    std::ostream& stream() { return out_; }
    void commit();

private:
    std::string path_;
    std::string tmp_path_;
    std::ofstream out_;
    bool committed_ = false;
};

}  // namespace disrupt
