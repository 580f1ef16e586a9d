#pragma once

#include <stdexcept>
#include <string>

namespace dyna {

// Error taxonomy for the whole library.  Every throwing operation documents
// which kind it raises; callers that need to branch on failure mode catch
// Error and switch on kind() instead of string-matching what().
enum class ErrorKind {
    parse,              // malformed polynomial / number / config text
    domain,             // argument outside an operation's documented domain
    iterate_too_large,  // composition/iterate exceeded the degree budget
    precision,          // certified radius could not reach the requested target
    not_disintegrated,  // operation requires a disintegrated map
    non_periodic,       // constant coordinate is not periodic under the map
    degenerate,         // projection/intersection degenerates (empty open-anomalous locus, ...)
    unsupported,        // outside the implemented desk-scale envelope
    config,             // experiment configuration rejected
    internal,           // broken internal invariant (library bug if ever seen)
};

class Error : public std::runtime_error {
  public:
    Error(ErrorKind kind, const std::string& message)
        : std::runtime_error(message), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

  private:
    ErrorKind kind_;
};

[[noreturn]] inline void raise(ErrorKind kind, const std::string& message) {
    throw Error(kind, message);
}

} // namespace dyna
