// Copyright 2026 The wmark Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "wmark/audio_io.hpp"

#include "wmark/error.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <string>

namespace wmark {

namespace {

std::uint32_t le32(const std::uint8_t* p) {
  return std::uint32_t(p[0]) | (std::uint32_t(p[1]) << 8) | (std::uint32_t(p[2]) << 16) |
         (std::uint32_t(p[3]) << 24);
}

std::uint16_t le16(const std::uint8_t* p) { return std::uint16_t(p[0] | (p[1] << 8)); }

void put32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(std::uint8_t(v >> (8 * i)));
}

void put16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(std::uint8_t(v));
  out.push_back(std::uint8_t(v >> 8));
}

void put_tag(std::vector<std::uint8_t>& out, const char* tag) { out.insert(out.end(), tag, tag + 4); }

struct FormatChunk {
  std::uint16_t audio_format = 0;
  std::uint16_t channels = 0;
  std::uint32_t sample_rate = 0;
  std::uint16_t bits_per_sample = 0;
};

}  // namespace

std::int16_t float_to_pcm16(double s) {
  const double scaled = std::round(s * 32768.0);
  return static_cast<std::int16_t>(std::clamp(scaled, -32768.0, 32767.0));
}

AudioClip parse_wav(const std::vector<std::uint8_t>& bytes, const WavReadOptions& options) {
  if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
      std::memcmp(bytes.data() + 8, "WAVE", 4) != 0)
    throw Error(ErrorKind::Format, "missing RIFF/WAVE magic");

  FormatChunk fmt;
  bool have_fmt = false;
  const std::uint8_t* data = nullptr;
  std::size_t data_size = 0;

  std::size_t pos = 12;
  while (pos + 8 <= bytes.size()) {
    const std::uint8_t* chunk = bytes.data() + pos;
    const std::uint32_t size = le32(chunk + 4);
    const std::size_t body = pos + 8;
    if (std::memcmp(chunk, "fmt ", 4) == 0) {
      if (size < 16 || body + size > bytes.size()) throw Error(ErrorKind::Format, "short fmt chunk");
      fmt.audio_format = le16(bytes.data() + body);
      fmt.channels = le16(bytes.data() + body + 2);
      fmt.sample_rate = le32(bytes.data() + body + 4);
      fmt.bits_per_sample = le16(bytes.data() + body + 14);
      have_fmt = true;
    } else if (std::memcmp(chunk, "data", 4) == 0) {
      if (body + size > bytes.size())
        throw Error(ErrorKind::Truncated, "data chunk declares " + std::to_string(size) +
                                              " bytes, file holds " +
                                              std::to_string(bytes.size() - body));
      data = bytes.data() + body;
      data_size = size;
      break;
    }
    pos = body + size + (size & 1u);
  }

  if (!have_fmt) throw Error(ErrorKind::Format, "no fmt chunk before data");
  if (!data) throw Error(ErrorKind::Truncated, "no data chunk");
  if (fmt.audio_format != 1)
    throw Error(ErrorKind::Unsupported, "audio format code " + std::to_string(fmt.audio_format) +
                                            " (only PCM is supported)");
  if (fmt.bits_per_sample != 16)
    throw Error(ErrorKind::Unsupported,
                std::to_string(fmt.bits_per_sample) + "-bit samples (only 16-bit is supported)");
  if (fmt.channels == 2 && !options.downmix_stereo)
    throw Error(ErrorKind::Unsupported, "stereo input (enable downmix to accept it)");
  if (fmt.channels != 1 && fmt.channels != 2)
    throw Error(ErrorKind::Unsupported, std::to_string(fmt.channels) + " channels");
  if (fmt.sample_rate == 0) throw Error(ErrorKind::Format, "zero sample rate");

  const std::size_t frame_bytes = 2u * fmt.channels;
  if (data_size % frame_bytes != 0) throw Error(ErrorKind::Truncated, "partial sample frame");
  const std::size_t frames = data_size / frame_bytes;

  AudioClip clip;
  clip.sample_rate = static_cast<int>(fmt.sample_rate);
  clip.source_bit_depth = 16;
  clip.samples.resize(static_cast<Eigen::Index>(frames));
  for (std::size_t i = 0; i < frames; ++i) {
    const std::uint8_t* f = data + i * frame_bytes;
    if (fmt.channels == 1) {
      clip.samples[Eigen::Index(i)] = pcm16_to_float(std::int16_t(le16(f)));
    } else {
      clip.samples[Eigen::Index(i)] =
          0.5 * (pcm16_to_float(std::int16_t(le16(f))) + pcm16_to_float(std::int16_t(le16(f + 2))));
    }
  }
  return clip;
}

std::vector<std::uint8_t> serialize_wav(const AudioClip& clip) {
  if (clip.sample_rate <= 0) throw Error(ErrorKind::Parameter, "sample rate must be positive");
  const auto n = static_cast<std::uint32_t>(clip.samples.size());
  const std::uint32_t data_bytes = 2 * n;

  std::vector<std::uint8_t> out;
  out.reserve(44 + data_bytes);
  put_tag(out, "RIFF");
  put32(out, 36 + data_bytes);
  put_tag(out, "WAVE");
  put_tag(out, "fmt ");
  put32(out, 16);
  put16(out, 1);
  put16(out, 1);
  put32(out, std::uint32_t(clip.sample_rate));
  put32(out, std::uint32_t(clip.sample_rate) * 2);
  put16(out, 2);
  put16(out, 16);
  put_tag(out, "data");
  put32(out, data_bytes);
  for (Eigen::Index i = 0; i < clip.samples.size(); ++i)
    put16(out, std::uint16_t(float_to_pcm16(clip.samples[i])));
  return out;
}

AudioClip read_wav(const std::filesystem::path& path, const WavReadOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return parse_wav(bytes, options);
}

void write_wav(const AudioClip& clip, const std::filesystem::path& path) {
  const auto bytes = serialize_wav(clip);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()), std::streamsize(bytes.size()));
  if (!out) throw Error(ErrorKind::Io, "short write to " + path.string());
}

}  // namespace wmark
