#pragma once

#include <stdexcept>
#include <string>

namespace corrdyn {

// Domain failures carry a short machine-readable code next to the message;
// the CLI maps them to exit status 1 and an error JSON on stderr.
class DomainError : public std::runtime_error {
public:
    DomainError(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

}  // namespace corrdyn
