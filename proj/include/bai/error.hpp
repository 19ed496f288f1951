#pragma once

#include <stdexcept>
#include <string>

namespace bai {

enum class ErrorCode {
    Domain,
    FamilyMismatch,
    DegenerateInstance,
    Solver,
    Config,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& what)
        : std::runtime_error(what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& what);

}  // namespace bai
