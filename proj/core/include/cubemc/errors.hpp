#pragma once

#include <stdexcept>
#include <string>

namespace cubemc {

// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A point that a geometric transform cannot map (off-face, off-surface, zero direction).
class GeometryError : public Error {
 public:
  using Error::Error;
};

// Precondition violations on motion data (invalid center MV, bad block, zero POC delta).
class MotionError : public Error {
 public:
  using Error::Error;
};

// Bad configuration or malformed input data.
class ConfigError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace cubemc
