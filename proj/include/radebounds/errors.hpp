#ifndef RADEBOUNDS_ERRORS_HPP
#define RADEBOUNDS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace rade {

// Error categories surfaced through the C API as status codes.
enum class errc {
  invalid_argument = 1,  // bad parameter, precondition violation
  parse = 2,             // malformed input file
  capacity = 3,          // request exceeds an enumeration cut-off
};

class error : public std::runtime_error {
 public:
  error(errc code, std::string msg) : std::runtime_error(std::move(msg)), code_(code) {}
  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

[[noreturn]] inline void throw_invalid(std::string msg) {
  throw error(errc::invalid_argument, std::move(msg));
}

[[noreturn]] inline void throw_parse(std::string msg) {
  throw error(errc::parse, std::move(msg));
}

[[noreturn]] inline void throw_capacity(std::string msg) {
  throw error(errc::capacity, std::move(msg));
}

}  // namespace rade

#endif
