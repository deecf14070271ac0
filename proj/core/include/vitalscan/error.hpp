#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>

namespace vitalscan {

// Domain error with a stable machine-readable name ("GapTooLarge",
// "ZeroVector", ...). The name is what the CLI prints on stderr and what
// the batch service returns in its {"error": ...} body, so it must not
// change once published.
class Error : public std::runtime_error {
public:
    Error(std::string name, const std::string& message)
        : std::runtime_error(name + ": " + message), name_(std::move(name)) {}

    Error(std::string name, int line, const std::string& message)
        : std::runtime_error(name + ": line " + std::to_string(line) + ": " + message),
          name_(std::move(name)),
          line_(line) {}

    const std::string& name() const noexcept { return name_; }

    // Source line for parse-type errors, when known (1-based).
    std::optional<int> line() const noexcept { return line_; }

private:
    std::string name_;
    std::optional<int> line_;
};

}  // namespace vitalscan
