#pragma once

#include <stdexcept>
#include <string>

namespace widthlab {

// Every checked minor of a candidate basis stayed singular after retries, or
// a calibration sweep found a near-singular minor witness.
class DegenerateBasisError : public std::runtime_error {
 public:
  explicit DegenerateBasisError(const std::string& what) : std::runtime_error("DegenerateBasis: " + what) {}
};

// The thresholded sphere image collapsed to zero; signals a calibration bug
// and is never masked by perturbation.
class ZeroImageError : public std::runtime_error {
 public:
  explicit ZeroImageError(const std::string& what) : std::runtime_error("ZeroImage: " + what) {}
};

class BadGridFileError : public std::runtime_error {
 public:
  explicit BadGridFileError(const std::string& what) : std::runtime_error("BadGridFile: " + what) {}
};

}  // namespace widthlab
