#pragma once

#include <stdexcept>
#include <string>

namespace regulens {

// Bad configuration (CLI exit code 3).
struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A pipeline stage was invoked before its prerequisite (CLI exit code 2).
struct stage_error : std::runtime_error {
    explicit stage_error(const std::string& missing_stage)
        : std::runtime_error("run `" + missing_stage + "` first"),
          stage(missing_stage) {}
    std::string stage;
};

} // namespace regulens
