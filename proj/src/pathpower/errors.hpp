#pragma once

#include <stdexcept>
#include <string>

namespace pathpower {

// Stable error categories, mirrored one-to-one by the pp_status codes of the
// C API.
enum class Status {
  ok = 0,
  invalid_parameter,
  invalid_vertex,
  invalid_ordering,
  parse_error,
  unsupported_storage,
  capacity,
  precondition,
  not_found,
  not_locally_optimal,
  rotation_precondition,
  invalid_certificate,
  step_failed,
  verification_failed,
  internal,
};

class Error : public std::runtime_error {
public:
  Error(Status s, const std::string& what) : std::runtime_error(what), status_(s) {}
  Status status() const { return status_; }

private:
  Status status_;
};

[[noreturn]] inline void fail(Status s, const std::string& what) { throw Error(s, what); }

}  // namespace pathpower
