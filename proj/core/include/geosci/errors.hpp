#pragma once

#include <stdexcept>
#include <string>

namespace geosci {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

// Required CSV header column is absent; fatal for the whole file.
class MissingColumnError : public Error {
 public:
  using Error::Error;
};

class MalformedCsvError : public Error {
 public:
  using Error::Error;
};

class MalformedNetError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

}  // namespace geosci
