#include "error.hpp"

namespace textphase {

const char* errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::Io: return "Io";
    case Errc::MalformedLine: return "MalformedLine";
    case Errc::DimMismatch: return "DimMismatch";
    case Errc::EmptyFile: return "EmptyFile";
    case Errc::EmptyInput: return "EmptyInput";
    case Errc::AllTokensOov: return "AllTokensOov";
    case Errc::SequenceTooShort: return "SequenceTooShort";
    case Errc::NonContiguousLags: return "NonContiguousLags";
    case Errc::TooFewLags: return "TooFewLags";
    case Errc::NonPositiveValues: return "NonPositiveValues";
    case Errc::TooFewPoints: return "TooFewPoints";
    case Errc::NotADirectory: return "NotADirectory";
    case Errc::DuplicateTriple: return "DuplicateTriple";
    case Errc::NonFinite: return "NonFinite";
    case Errc::NonPositiveTemperature: return "NonPositiveTemperature";
    case Errc::EndpointUnreachable: return "EndpointUnreachable";
    case Errc::AuthMissing: return "AuthMissing";
    case Errc::ServerError: return "ServerError";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::Config: return "Config";
  }
  return "Unknown";
}

}  // namespace textphase
