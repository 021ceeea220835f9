#pragma once

#include <stdexcept>
#include <string>

namespace vwb {

// Every failure carries a stable code (UnsupportedType, InfeasibleDimension,
// SingularInput, ...) that the driver maps to exit codes and error json.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& detail)
      : std::runtime_error(code + ": " + detail), code_(std::move(code)), detail_(detail) {}
  const std::string& code() const { return code_; }
  const std::string& detail() const { return detail_; }

 private:
  std::string code_;
  std::string detail_;
};

inline void require(bool cond, const char* code, const std::string& detail) {
  if (!cond) throw Error(code, detail);
}

}  // namespace vwb
