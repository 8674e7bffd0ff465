#pragma once

#include <cstdint>
#include <exception>
#include <string>
#include <string_view>
#include <vector>

namespace tng {

enum class ErrSeverity : std::uint8_t { Warn = 0, Err = 1, Panic = 2 };

std::string_view to_string(ErrSeverity s);

struct DevError {
    std::string reason;
    std::string description;
    std::string origin;
    ErrSeverity severity = ErrSeverity::Err;

    bool operator==(const DevError&) const = default;
};

using DevErrorList = std::vector<DevError>;

// The one exception type that crosses module and process boundaries.
// The error stack is never empty; the outermost context is appended last.
class DevFailed : public std::exception {
public:
    explicit DevFailed(DevErrorList errors);
    DevFailed(std::string_view reason, std::string description, std::string origin,
              ErrSeverity severity = ErrSeverity::Err);

    const DevErrorList& errors() const noexcept { return errors_; }
    const std::string& reason() const noexcept { return errors_.front().reason; }
    const std::string& outer_reason() const noexcept { return errors_.back().reason; }
    bool has_reason(std::string_view reason) const noexcept;

    const char* what() const noexcept override { return what_.c_str(); }

    /// Returns a copy with one more context frame appended.
    DevFailed appended(std::string_view reason, std::string description, std::string origin) const;

private:
    DevErrorList errors_;
    std::string what_;
};

[[noreturn]] void throw_dev_failed(std::string_view reason, std::string description, std::string origin);

} // namespace tng
