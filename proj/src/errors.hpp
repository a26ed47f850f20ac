#ifndef EB_ERRORS_HPP
#define EB_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <utility>

namespace eb {

// Error categories; the C API and the CLI map these onto status / exit codes.
enum class errc {
  domain,         // bad argument or precondition violation
  missing_input,  // a required input artifact does not exist
  config,         // config file or key/value problem
  numeric,        // a numerical procedure failed (singular system, no convergence)
  io,             // filesystem / serialization failure
};

class Error : public std::runtime_error {
 public:
  Error(errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  errc code() const noexcept { return code_; }

 private:
  errc code_;
};

// Stage failures carry the pipeline stage name for attribution.
class StageError : public Error {
 public:
  StageError(std::string stage, errc code, const std::string& what)
      : Error(code, "stage " + stage + ": " + what), stage_(std::move(stage)) {}
  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

[[noreturn]] inline void throw_domain(const std::string& msg) { throw Error(errc::domain, msg); }
[[noreturn]] inline void throw_numeric(const std::string& msg) { throw Error(errc::numeric, msg); }

}  // namespace eb

#endif
