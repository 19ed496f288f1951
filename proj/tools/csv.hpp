#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "bai/bai.h"

namespace bai_cli {

inline constexpr const char* kCsvHeader =
    "algorithm,instance,family,param,metric_grid_value,replications,error_rate,"
    "error_ci_halfwidth,mean_tau,std_tau,exhausted_count,seed";

struct CsvRecord {
    std::string algorithm;
    std::string instance;
    std::string family;
    std::string param;
    double grid_value = 0.0;
    std::uint64_t replications = 0;
    double error_rate = 0.0;
    double error_ci_halfwidth = 0.0;
    double mean_tau = 0.0;
    double std_tau = 0.0;
    std::uint64_t exhausted_count = 0;
    std::uint64_t seed = 0;

    friend bool operator==(const CsvRecord&, const CsvRecord&) = default;
};

CsvRecord from_c(const bai_record& r);

/// 12 significant digits.
std::string format_double(double x);
/// The value a reader recovers from format_double(x).
double round_trip(double x);
/// Applies round_trip to every floating field.
CsvRecord rounded(const CsvRecord& r);

std::string quote_field(const std::string& s);

void write_csv(std::ostream& os, const std::vector<CsvRecord>& rows, bool header = true);
/// Throws std::runtime_error on a malformed file or header mismatch.
std::vector<CsvRecord> parse_csv(std::istream& is);

}  // namespace bai_cli
