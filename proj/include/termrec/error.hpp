#pragma once

#include <stdexcept>
#include <string>

namespace termrec {

enum class ErrorKind {
  InvalidArgument,
  NotFound,
  Conflict,
  Parse,
  Corrupt,
  Io,
};

// All library failures are reported as termrec::Error; the kind lets the
// service layer map them onto HTTP status codes.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline Error invalid_argument(const std::string& what) {
  return Error(ErrorKind::InvalidArgument, what);
}
inline Error not_found(const std::string& what) {
  return Error(ErrorKind::NotFound, what);
}
inline Error conflict(const std::string& what) {
  return Error(ErrorKind::Conflict, what);
}

}  // namespace termrec
