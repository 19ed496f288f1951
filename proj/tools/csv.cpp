#include "csv.hpp"

#include <charconv>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace bai_cli {
namespace {

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(cur));
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (quoted) throw std::runtime_error("unterminated quoted field");
    fields.push_back(std::move(cur));
    return fields;
}

double parse_double(const std::string& s) {
    char* end = nullptr;
    const double v = std::strtod(s.c_str(), &end);
    if (s.empty() || *end != '\0') throw std::runtime_error("bad number '" + s + "'");
    return v;
}

std::uint64_t parse_u64(const std::string& s) {
    std::uint64_t v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size())
        throw std::runtime_error("bad integer '" + s + "'");
    return v;
}

}  // namespace

CsvRecord from_c(const bai_record& r) {
    return {r.algorithm, r.instance,   r.family,   r.param,   r.grid_value,      r.replications,
            r.error_rate, r.error_ci_halfwidth, r.mean_tau, r.std_tau, r.exhausted_count, r.seed};
}

std::string format_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

double round_trip(double x) { return std::strtod(format_double(x).c_str(), nullptr); }

CsvRecord rounded(const CsvRecord& r) {
    CsvRecord out = r;
    out.grid_value = round_trip(r.grid_value);
    out.error_rate = round_trip(r.error_rate);
    out.error_ci_halfwidth = round_trip(r.error_ci_halfwidth);
    out.mean_tau = round_trip(r.mean_tau);
    out.std_tau = round_trip(r.std_tau);
    return out;
}

std::string quote_field(const std::string& s) {
    if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

void write_csv(std::ostream& os, const std::vector<CsvRecord>& rows, bool header) {
    if (header) os << kCsvHeader << '\n';
    for (const auto& r : rows) {
        os << quote_field(r.algorithm) << ',' << quote_field(r.instance) << ','
           << quote_field(r.family) << ',' << quote_field(r.param) << ','
           << format_double(r.grid_value) << ',' << r.replications << ','
           << format_double(r.error_rate) << ',' << format_double(r.error_ci_halfwidth) << ','
           << format_double(r.mean_tau) << ',' << format_double(r.std_tau) << ','
           << r.exhausted_count << ',' << r.seed << '\n';
    }
}

std::vector<CsvRecord> parse_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line != kCsvHeader)
        throw std::runtime_error("missing or unexpected CSV header");
    std::vector<CsvRecord> rows;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const auto f = split_line(line);
        if (f.size() != 12) throw std::runtime_error("expected 12 fields, got " + std::to_string(f.size()));
        rows.push_back({f[0], f[1], f[2], f[3], parse_double(f[4]), parse_u64(f[5]),
                        parse_double(f[6]), parse_double(f[7]), parse_double(f[8]),
                        parse_double(f[9]), parse_u64(f[10]), parse_u64(f[11])});
    }
    return rows;
}

}  // namespace bai_cli
