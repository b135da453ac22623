//
//  wav.hpp
//  foaaug
//
//  Minimal RIFF/WAVE reader and writer for four-channel FOA files. Channels
//  are mapped positionally to ACN order (W, Y, Z, X). Reading accepts 16-bit
//  PCM and 32-bit IEEE float; writing always emits 32-bit float, so float
//  samples round-trip bit-exactly.
//
//  Distributed under the Apache License, Version 2.0.
//  See the accompanying file LICENSE or http://www.apache.org/licenses/LICENSE-2.0.html
//

#pragma once

#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "foaaug/error.hpp"
#include "foaaug/signal.hpp"

namespace foaaug {

namespace wav_detail {

inline std::uint16_t get_u16(const unsigned char* p) {
  return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

inline std::uint32_t get_u32(const unsigned char* p) {
  return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) |
         (static_cast<std::uint32_t>(p[3]) << 24);
}

inline void put_u16(std::string& out, std::uint16_t v) {
  out.push_back(static_cast<char>(v & 0xFF));
  out.push_back(static_cast<char>((v >> 8) & 0xFF));
}

inline void put_u32(std::string& out, std::uint32_t v) {
  out.push_back(static_cast<char>(v & 0xFF));
  out.push_back(static_cast<char>((v >> 8) & 0xFF));
  out.push_back(static_cast<char>((v >> 16) & 0xFF));
  out.push_back(static_cast<char>((v >> 24) & 0xFF));
}

}  // namespace wav_detail

/// Read a 4-channel FOA WAV file. Throws kCorruptHeader on structural
/// damage, kBadChannelCount when the channel count is not 4, and
/// kUnsupportedFormat for encodings other than 16-bit PCM (scaled by
/// 1/32768) or 32-bit IEEE float.
inline FoaSignal read_foa_wav(const std::filesystem::path& path) {
  using namespace wav_detail;
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FoaError(Errc::kIoError, "cannot open '" + path.string() + "'");

  const std::string name = path.filename().string();
  unsigned char hdr[12];
  if (!in.read(reinterpret_cast<char*>(hdr), 12) || std::memcmp(hdr, "RIFF", 4) != 0 ||
      std::memcmp(hdr + 8, "WAVE", 4) != 0) {
    throw FoaError(Errc::kCorruptHeader, name + ": not a RIFF/WAVE file");
  }

  bool have_fmt = false;
  std::uint16_t format = 0;
  std::uint16_t channels = 0;
  std::uint32_t rate = 0;
  std::uint16_t bits = 0;
  std::vector<unsigned char> data;
  bool have_data = false;

  unsigned char chunk[8];
  while (in.read(reinterpret_cast<char*>(chunk), 8)) {
    const std::uint32_t size = get_u32(chunk + 4);
    if (std::memcmp(chunk, "fmt ", 4) == 0) {
      if (size < 16) throw FoaError(Errc::kCorruptHeader, name + ": fmt chunk too small");
      std::vector<unsigned char> fmt(size);
      if (!in.read(reinterpret_cast<char*>(fmt.data()), size)) {
        throw FoaError(Errc::kCorruptHeader, name + ": truncated fmt chunk");
      }
      format = get_u16(fmt.data());
      channels = get_u16(fmt.data() + 2);
      rate = get_u32(fmt.data() + 4);
      bits = get_u16(fmt.data() + 14);
      have_fmt = true;
    } else if (std::memcmp(chunk, "data", 4) == 0) {
      if (!have_fmt) throw FoaError(Errc::kCorruptHeader, name + ": data before fmt");
      data.resize(size);
      if (!in.read(reinterpret_cast<char*>(data.data()), size)) {
        throw FoaError(Errc::kCorruptHeader, name + ": truncated data chunk");
      }
      have_data = true;
      break;  // nothing after data interests us
    } else {
      in.seekg(size + (size & 1), std::ios::cur);  // chunks are word-aligned
    }
  }
  if (!have_fmt || !have_data) {
    throw FoaError(Errc::kCorruptHeader, name + ": missing fmt or data chunk");
  }
  if (channels != 4) {
    throw FoaError(Errc::kBadChannelCount,
                   name + ": expected 4 FOA channels, found " + std::to_string(channels));
  }
  const bool pcm16 = format == 1 && bits == 16;
  const bool float32 = format == 3 && bits == 32;
  if (!pcm16 && !float32) {
    throw FoaError(Errc::kUnsupportedFormat,
                   name + ": only 16-bit PCM and 32-bit float are supported (format " +
                       std::to_string(format) + ", " + std::to_string(bits) + " bits)");
  }
  if (rate == 0) throw FoaError(Errc::kCorruptHeader, name + ": zero sample rate");

  const std::size_t bytes_per_sample = pcm16 ? 2 : 4;
  const std::size_t block = 4 * bytes_per_sample;
  if (data.size() % block != 0) {
    throw FoaError(Errc::kCorruptHeader, name + ": data size is not a whole number of frames");
  }
  const std::size_t n = data.size() / block;

  FoaSignal sig;
  sig.sample_rate = static_cast<int>(rate);
  for (auto& ch : sig.channels) ch.resize(n);
  const unsigned char* p = data.data();
  for (std::size_t i = 0; i < n; ++i) {
    for (int c = 0; c < 4; ++c) {
      double v;
      if (pcm16) {
        const auto raw = static_cast<std::int16_t>(get_u16(p));
        v = static_cast<double>(raw) / 32768.0;
        p += 2;
      } else {
        std::uint32_t u = get_u32(p);
        float f;
        std::memcpy(&f, &u, 4);
        v = static_cast<double>(f);
        p += 4;
      }
      sig.channels[c][i] = v;
    }
  }
  return sig;
}

/// Write a 4-channel FOA WAV file as 32-bit IEEE float (with the customary
/// fact chunk). Samples are narrowed from double to float on the way out.
inline void write_foa_wav(const FoaSignal& sig, const std::filesystem::path& path) {
  using namespace wav_detail;
  const std::size_t n = sig.length();
  const std::uint32_t data_size = static_cast<std::uint32_t>(n * 4 * 4);

  std::string out;
  out.reserve(58 + data_size);
  out += "RIFF";
  put_u32(out, 4 + 24 + 12 + 8 + data_size);  // WAVE + fmt + fact + data header
  out += "WAVE";
  out += "fmt ";
  put_u32(out, 16);
  put_u16(out, 3);  // IEEE float
  put_u16(out, 4);
  put_u32(out, static_cast<std::uint32_t>(sig.sample_rate));
  put_u32(out, static_cast<std::uint32_t>(sig.sample_rate) * 16);
  put_u16(out, 16);  // block align: 4 channels * 4 bytes
  put_u16(out, 32);
  out += "fact";
  put_u32(out, 4);
  put_u32(out, static_cast<std::uint32_t>(n));
  out += "data";
  put_u32(out, data_size);
  for (std::size_t i = 0; i < n; ++i) {
    for (int c = 0; c < 4; ++c) {
      const float f = static_cast<float>(sig.channels[c][i]);
      std::uint32_t u;
      std::memcpy(&u, &f, 4);
      put_u32(out, u);
    }
  }

  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw FoaError(Errc::kIoError, "cannot create '" + path.string() + "'");
  os.write(out.data(), static_cast<std::streamsize>(out.size()));
  if (!os) throw FoaError(Errc::kIoError, "short write to '" + path.string() + "'");
}

}  // namespace foaaug
