#ifndef THINSERIES_ERROR_HPP
#define THINSERIES_ERROR_HPP

#include <stdexcept>
#include <string>
#include <utility>

namespace thinseries {

// Library-wide exception carrying a stable machine-readable code alongside the
// human message.  Codes in use: invalid_spec, invalid_argument, bad_partition,
// budget_exceeded, kind_mismatch, not_odd_ended, precondition, regression.
class Error : public std::runtime_error {
public:
  Error(std::string code, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string& code() const noexcept { return code_; }

private:
  std::string code_;
};

} // namespace thinseries

#endif
