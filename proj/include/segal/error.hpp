#pragma once

#include <stdexcept>
#include <string>

namespace segal {

enum class errc {
  invalid_arguments,
  invalid_input,
  resource_limit,
  not_flippable,
  construction_failure,
  unsupported,
  internal_error,
};

inline const char* errc_name(errc e) {
  switch (e) {
    case errc::invalid_arguments: return "invalid-arguments";
    case errc::invalid_input: return "invalid-input";
    case errc::resource_limit: return "resource-limit";
    case errc::not_flippable: return "not-flippable";
    case errc::construction_failure: return "construction-failure";
    case errc::unsupported: return "unsupported";
    case errc::internal_error: return "internal-error";
  }
  return "unknown";
}

class error : public std::runtime_error {
public:
  error(errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  errc code() const noexcept { return code_; }

private:
  errc code_;
};

[[noreturn]] inline void fail(errc code, const std::string& what) { throw error(code, what); }

inline void require(bool cond, errc code, const std::string& what) {
  if (!cond) fail(code, what);
}

} // namespace segal
