//
//  error.hpp
//  foaaug
//
//  Distributed under the Apache License, Version 2.0.
//  See the accompanying file LICENSE or http://www.apache.org/licenses/LICENSE-2.0.html
//

#pragma once

#include <stdexcept>
#include <string>

namespace foaaug {

/// Error conditions the library reports. Everything else that can go wrong
/// is a programming error and asserts instead.
enum class Errc {
  kSpanMismatch,        // signal and label track cover different time spans
  kOverlapUnsupported,  // a frame holds two or more active sources
  kNoActiveFrames,      // operation needs at least one labelled frame
  kRngFailure,          // random draws kept degenerating
  kBadChannelCount,     // WAV file does not hold exactly four channels
  kUnsupportedFormat,   // WAV encoding other than 16-bit PCM / 32-bit float
  kCorruptHeader,       // RIFF/WAVE structure damaged or truncated
  kParseError,          // malformed text input (CSV row, scenario, pattern id)
  kRangeError,          // angle outside its file-format domain
  kNoCoactiveFrames,    // metric has no frame active in both tracks
  kInvalidScene,        // source trajectory does not cover its active frames
  kIoError,             // filesystem-level failure
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::kSpanMismatch: return "SPAN_MISMATCH";
    case Errc::kOverlapUnsupported: return "OVERLAP_UNSUPPORTED";
    case Errc::kNoActiveFrames: return "NO_ACTIVE_FRAMES";
    case Errc::kRngFailure: return "RNG_FAILURE";
    case Errc::kBadChannelCount: return "BAD_CHANNEL_COUNT";
    case Errc::kUnsupportedFormat: return "UNSUPPORTED_FORMAT";
    case Errc::kCorruptHeader: return "CORRUPT_HEADER";
    case Errc::kParseError: return "PARSE_ERROR";
    case Errc::kRangeError: return "RANGE_ERROR";
    case Errc::kNoCoactiveFrames: return "NO_COACTIVE_FRAMES";
    case Errc::kInvalidScene: return "INVALID_SCENE";
    case Errc::kIoError: return "IO_ERROR";
  }
  return "UNKNOWN";
}

class FoaError : public std::runtime_error {
 public:
  FoaError(Errc code, const std::string& message)
      : std::runtime_error(std::string(errc_name(code)) + ": " + message),
        code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace foaaug
