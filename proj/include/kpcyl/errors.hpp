#pragma once

#include <stdexcept>
#include <string>

namespace kpcyl {

struct ZeroMeanViolation : std::runtime_error {
  explicit ZeroMeanViolation(const std::string& what) : std::runtime_error(what) {}
};

struct BufferViolation : std::runtime_error {
  explicit BufferViolation(const std::string& what) : std::runtime_error(what) {}
};

struct DegenerateField : std::runtime_error {
  explicit DegenerateField(const std::string& what) : std::runtime_error(what) {}
};

struct RangeViolation : std::runtime_error {
  explicit RangeViolation(const std::string& what) : std::runtime_error(what) {}
};

struct NonConvergence : std::runtime_error {
  explicit NonConvergence(const std::string& what) : std::runtime_error(what) {}
};

struct BlowupDetected : std::runtime_error {
  explicit BlowupDetected(const std::string& what) : std::runtime_error(what) {}
};

struct NanDetected : std::runtime_error {
  explicit NanDetected(const std::string& what) : std::runtime_error(what) {}
};

struct SmallnessViolation : std::runtime_error {
  explicit SmallnessViolation(const std::string& what) : std::runtime_error(what) {}
};

struct OutOfTube : std::runtime_error {
  explicit OutOfTube(const std::string& what) : std::runtime_error(what) {}
};

struct NotInNeighborhood : std::runtime_error {
  explicit NotInNeighborhood(const std::string& what) : std::runtime_error(what) {}
};

struct WindowExitedDomain : std::runtime_error {
  explicit WindowExitedDomain(const std::string& what) : std::runtime_error(what) {}
};

struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace kpcyl
