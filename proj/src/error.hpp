#pragma once

#include <stdexcept>
#include <string>

namespace textphase {

// Values match tp_status in the public C header.
enum class Errc : int {
  Io = 1,
  MalformedLine = 2,
  DimMismatch = 3,
  EmptyFile = 4,
  EmptyInput = 5,
  AllTokensOov = 6,
  SequenceTooShort = 7,
  NonContiguousLags = 8,
  TooFewLags = 9,
  NonPositiveValues = 10,
  TooFewPoints = 11,
  NotADirectory = 12,
  DuplicateTriple = 13,
  NonFinite = 14,
  NonPositiveTemperature = 15,
  EndpointUnreachable = 16,
  AuthMissing = 17,
  ServerError = 18,
  InvalidArgument = 19,
  Config = 20,
};

const char* errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace textphase
