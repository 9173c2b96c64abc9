#include "disrupt/csv.hpp"

#include <zlib.h>

#include <charconv>
#include <cstdio>
#include <filesystem>

#include "disrupt/errors.hpp"

namespace disrupt {

std::string slurp_file(const std::string& path) {
    const bool gz = path.size() > 3 && path.compare(path.size() - 3, 3, ".gz") == 0;
    if (gz) {
        gzFile f = gzopen(path.c_str(), "rb");
        if (!f) throw UserError("cannot open file: " + path);
        std::string out;
        char buf[1 << 16];
        int n;
        while ((n = gzread(f, buf, sizeof(buf))) > 0) out.append(buf, static_cast<size_t>(n));
        const bool bad = n < 0;
        gzclose(f);
        if (bad) throw UserError("gzip read error: " + path);
        return out;
    }
    std::ifstream f(path, std::ios::binary);
    if (!f) throw UserError("cannot open file: " + path);
    std::string out;
    f.seekg(0, std::ios::end);
    out.resize(static_cast<size_t>(f.tellg()));
    f.seekg(0);
    f.read(out.data(), static_cast<std::streamsize>(out.size()));
    return out;
}

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    size_t start = 0;
    while (start < text.size()) {
        size_t end = text.find('\n', start);
        if (end == std::string_view::npos) end = text.size();
        size_t len = end - start;
        if (len > 0 && text[start + len - 1] == '\r') --len;
        lines.push_back(text.substr(start, len));
        start = end + 1;
    }
    return lines;
}

void split_fields(std::string_view line, char delim, std::vector<std::string_view>& out,
                  std::string& storage) {
    out.clear();
    storage.clear();
    // quoted fields are unescaped into storage; offsets resolved to views at the
    // end because storage may reallocate while growing
    struct QuotedRef {
        size_t field;
        size_t begin;
        size_t end;
    };
    std::vector<QuotedRef> quoted;
    size_t i = 0;
    while (true) {
        if (i < line.size() && line[i] == '"') {
            const size_t begin = storage.size();
            ++i;
            while (i < line.size()) {
                if (line[i] == '"') {
                    if (i + 1 < line.size() && line[i + 1] == '"') {
                        storage.push_back('"');
                        i += 2;
                    } else {
                        ++i;
                        break;
                    }
                } else {
                    storage.push_back(line[i]);
                    ++i;
                }
            }
            quoted.push_back({out.size(), begin, storage.size()});
            out.emplace_back();  // placeholder, resolved below
        } else {
            size_t end = line.find(delim, i);
            if (end == std::string_view::npos) end = line.size();
            out.push_back(line.substr(i, end - i));
            i = end;
        }
        if (i >= line.size()) break;
        ++i;  // skip delimiter
        if (i == line.size()) {  // trailing delimiter yields an empty last field
            out.emplace_back();
            break;
        }
    }
    for (const auto& q : quoted)
        out[q.field] = std::string_view(storage).substr(q.begin, q.end - q.begin);
}

std::string_view trim(std::string_view s) {
    size_t b = 0;
    size_t e = s.size();
    while (b < e && (s[b] == ' ' || s[b] == '\t')) ++b;
    while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t')) --e;
    return s.substr(b, e - b);
}

std::string format_real(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

bool parse_i64(std::string_view s, long long& out) {
    s = trim(s);
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc{} && ptr == last && !s.empty();
}

bool parse_f64(std::string_view s, double& out) {
    s = trim(s);
    const char* first = s.data();
    const char* last = s.data() + s.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc{} && ptr == last && !s.empty();
}

AtomicWriter::AtomicWriter(const std::string& path) : path_(path), tmp_path_(path + ".tmp") {
    out_.open(tmp_path_, std::ios::binary | std::ios::trunc);
    if (!out_) throw UserError("cannot open output file: " + tmp_path_);
}

AtomicWriter::~AtomicWriter() {
    if (!committed_) {
        out_.close();
        std::error_code ec;
        std::filesystem::remove(tmp_path_, ec);
    }
}

void AtomicWriter::commit() {
    out_.flush();
    if (!out_) throw UserError("write failed: " + tmp_path_);
    out_.close();
    std::error_code ec;
    std::filesystem::rename(tmp_path_, path_, ec);
    if (ec) throw UserError("cannot rename " + tmp_path_ + " to " + path_ + ": " + ec.message());
    committed_ = true;
}

}  // namespace disrupt
