#pragma once

#include <stdexcept>
#include <string>

namespace hurst {

/// Broad failure class; the CLI maps each to an exit code.
enum class ErrorKind {
    Usage,     // invalid arguments or configuration
    Data,      // input data that cannot be analysed
    Internal,  // invariant violation inside the library
};

/// Exception thrown by every module. `module()` names the subsystem that
/// raised it so pipeline diagnostics can be attributed.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, std::string module, const std::string& message);

    ErrorKind kind() const noexcept { return kind_; }
    const std::string& module() const noexcept { return module_; }

private:
    ErrorKind kind_;
    std::string module_;
};

[[noreturn]] void throw_usage(const std::string& module, const std::string& message);
[[noreturn]] void throw_data(const std::string& module, const std::string& message);
[[noreturn]] void throw_internal(const std::string& module, const std::string& message);

const char* to_string(ErrorKind kind) noexcept;

}  // namespace hurst
