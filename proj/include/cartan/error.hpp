#pragma once

#include <stdexcept>
#include <string>

namespace cartan {

// Single exception type for all guarded failures. `code` is a stable
// machine-readable tag (e.g. "NonUnit", "SizeCap", "DomainGuard") used by the
// CLI to build structured error records; `what()` is the human message.
class DomainError : public std::runtime_error {
public:
    DomainError(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

[[noreturn]] inline void fail(const std::string& code, const std::string& message) {
    throw DomainError(code, message);
}

} // namespace cartan
