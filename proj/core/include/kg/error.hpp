#pragma once

#include <stdexcept>
#include <string>

namespace kg {

// Contract violations and malformed input. The CLI maps these to exit code 2;
// semantically negative outcomes (invalid, not entailed, ...) are ordinary
// return values and map to exit code 1 instead.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

[[noreturn]] inline void fail(const std::string& msg) { throw Error(msg); }

}  // namespace kg
