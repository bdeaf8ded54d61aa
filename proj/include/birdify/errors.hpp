#pragma once

#include <stdexcept>
#include <string>

namespace birdify {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NonPositiveApparentHeight : Error {
  NonPositiveApparentHeight() : Error("apparent height must be positive") {}
};

struct BehindCamera : Error {
  BehindCamera() : Error("point lies behind the camera (depth <= 0)") {}
};

struct DegenerateAtOrigin : Error {
  DegenerateAtOrigin() : Error("cylindrical projection undefined at the camera center") {}
};

struct InsufficientHistory : Error {
  explicit InsufficientHistory(const std::string& what) : Error(what) {}
};

struct NoDetections : Error {
  NoDetections() : Error("frame has no usable detections") {}
};

struct SearchSpaceTooLarge : Error {
  explicit SearchSpaceTooLarge(const std::string& what) : Error(what) {}
};

struct MissingBootstrap : Error {
  explicit MissingBootstrap(const std::string& what) : Error(what) {}
};

struct NonMonotonicFrames : Error {
  explicit NonMonotonicFrames(const std::string& what) : Error(what) {}
};

struct ParseError : Error {
  explicit ParseError(const std::string& what) : Error(what) {}
};

struct EmptyDataset : Error {
  explicit EmptyDataset(const std::string& what) : Error(what) {}
};

struct DegenerateExtent : Error {
  explicit DegenerateExtent(const std::string& what) : Error(what) {}
};

struct ObserverNotFound : Error {
  explicit ObserverNotFound(const std::string& what) : Error(what) {}
};

struct ObserverStationaryHeadingUndefined : Error {
  explicit ObserverStationaryHeadingUndefined(const std::string& what) : Error(what) {}
};

struct IoError : Error {
  explicit IoError(const std::string& what) : Error(what) {}
};

struct LengthMismatch : Error {
  explicit LengthMismatch(const std::string& what) : Error(what) {}
};

struct IdMismatch : Error {
  explicit IdMismatch(const std::string& what) : Error(what) {}
};

struct ConfigError : Error {
  explicit ConfigError(const std::string& what) : Error(what) {}
};

}  // namespace birdify
