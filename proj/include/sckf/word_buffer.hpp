// Usable under the terms in the Apache License, Version 2.0.

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>

namespace sckf {

/// Zero-initialized array of 64-bit words. Large arrays are mapped lazily so
/// that sparse use of a huge table (long fingerprints, few elements) commits
/// only the pages it touches.
class WordBuffer {
 public:
  WordBuffer() = default;
  explicit WordBuffer(std::size_t words);
  ~WordBuffer();

  WordBuffer(const WordBuffer& other);
  WordBuffer& operator=(const WordBuffer& other);
  WordBuffer(WordBuffer&& other) noexcept;
  WordBuffer& operator=(WordBuffer&& other) noexcept;

  std::size_t size() const noexcept { return size_; }
  std::uint64_t* data() noexcept { return data_; }
  const std::uint64_t* data() const noexcept { return data_; }
  std::span<std::uint64_t> span() noexcept { return {data_, size_}; }
  std::span<const std::uint64_t> span() const noexcept { return {data_, size_}; }

  static constexpr std::size_t kMapThresholdBytes = std::size_t{1} << 26;

 private:
  void release() noexcept;

  std::uint64_t* data_ = nullptr;
  std::size_t size_ = 0;
  bool mapped_ = false;
};

}  // namespace sckf
