#include "bai/error.hpp"

namespace bai {

const char* to_string(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::Domain: return "domain error";
    case ErrorCode::FamilyMismatch: return "family mismatch";
    case ErrorCode::DegenerateInstance: return "degenerate instance";
    case ErrorCode::Solver: return "solver error";
    case ErrorCode::Config: return "config error";
    }
    return "unknown error";
}

void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace bai
