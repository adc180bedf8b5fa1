#pragma once

#include <stdexcept>
#include <string>

namespace windup {

// Per-episode failure with a short machine-readable reason code. Batch
// stages tally reasons and keep processing the remaining episodes.
class PipelineError : public std::runtime_error {
public:
    PipelineError(std::string reason, const std::string& detail)
        : std::runtime_error(reason + ": " + detail), reason_(std::move(reason)) {}

    const std::string& reason() const { return reason_; }

private:
    std::string reason_;
};

}  // namespace windup
