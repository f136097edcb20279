#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace blaschke {

// Library errors carry a stable machine-readable name (e.g. "PoleDerivative",
// "NoSignChange"). The CLI prints the name on one diagnostic line and exits 3.
class Error : public std::runtime_error {
public:
    Error(std::string name, const std::string& detail)
        : std::runtime_error(detail.empty() ? name : name + ": " + detail),
          name_(std::move(name)) {}

    const std::string& name() const { return name_; }

private:
    std::string name_;
};

[[noreturn]] inline void fail(const std::string& name, const std::string& detail = "") {
    throw Error(name, detail);
}

} // namespace blaschke
