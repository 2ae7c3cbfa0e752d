#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace post {

// Kernel error with a stable machine-readable code ("BadWeights",
// "ZeroMassLength", ...) next to the human message. The CLI maps any
// Error to exit code 2.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& what)
        : std::runtime_error(code + ": " + what), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

[[noreturn]] inline void raise(std::string code, const std::string& what) {
    throw Error(std::move(code), what);
}

}  // namespace post
