#pragma once

#include <stdexcept>
#include <string>

namespace wc {

enum class ErrorKind { Validation, Engine };

// All library failures are reported through this type. `code` is a stable
// machine-readable identifier such as "NonPrimitiveRay" or "NotFlippable".
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string code, const std::string& msg)
        : std::runtime_error(code + ": " + msg), kind_(kind), code_(std::move(code)) {}

    ErrorKind kind() const { return kind_; }
    const std::string& code() const { return code_; }

private:
    ErrorKind kind_;
    std::string code_;
};

[[noreturn]] inline void fail_validation(const std::string& code, const std::string& msg) {
    throw Error(ErrorKind::Validation, code, msg);
}
[[noreturn]] inline void fail_engine(const std::string& code, const std::string& msg) {
    throw Error(ErrorKind::Engine, code, msg);
}

}  // namespace wc
