#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nestord {

/// Malformed family/order text. `position` is the byte offset of the
/// offending character in the input.
class ParseError : public std::invalid_argument {
  public:
    ParseError(const std::string & what, std::size_t position)
        : std::invalid_argument(what + " at position " + std::to_string(position)), position_(position)
    {
    }

    [[nodiscard]] auto position() const noexcept -> std::size_t { return position_; }

  private:
    std::size_t position_;
};

/// A request exceeds the desk-scale limits of an exhaustive search.
class ResourceGuardError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Precondition violated by a structurally valid but unsuitable argument.
class PreconditionError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

} // namespace nestord
