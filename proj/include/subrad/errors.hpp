#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace subrad {

/// A numerical invariant was violated (trace drift, positivity loss,
/// unstable integration step, degenerate closed-form parameters).
class numerics_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A file could not be read or written.
class io_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Scenario configuration problems. Carries every violation found,
/// not just the first one.
class config_error : public std::runtime_error {
public:
    explicit config_error(std::vector<std::string> violations)
        : std::runtime_error(join(violations)), violations_(std::move(violations)) {}

    const std::vector<std::string>& violations() const noexcept { return violations_; }

private:
    static std::string join(const std::vector<std::string>& v) {
        std::string out = "invalid scenario configuration:";
        for (const auto& s : v) {
            out += "\n  - ";
            out += s;
        }
        return out;
    }

    std::vector<std::string> violations_;
};

}  // namespace subrad
