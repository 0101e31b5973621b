// Usable under the terms in the Apache License, Version 2.0.

#include "sckf/word_buffer.hpp"

#include <sys/mman.h>

#include <cstdlib>
#include <cstring>
#include <new>
#include <utility>

namespace sckf {

WordBuffer::WordBuffer(std::size_t words) : size_(words) {
  if (words == 0) {
    return;
  }
  const std::size_t bytes = words * sizeof(std::uint64_t);
  if (bytes >= kMapThresholdBytes) {
    void* p = ::mmap(nullptr, bytes, PROT_READ | PROT_WRITE,
                     MAP_PRIVATE | MAP_ANONYMOUS | MAP_NORESERVE, -1, 0);
    if (p == MAP_FAILED) {
      size_ = 0;
      throw std::bad_alloc();
    }
    data_ = static_cast<std::uint64_t*>(p);
    mapped_ = true;
  } else {
    data_ = static_cast<std::uint64_t*>(std::calloc(words, sizeof(std::uint64_t)));
    if (data_ == nullptr) {
      size_ = 0;
      throw std::bad_alloc();
    }
  }
}

WordBuffer::~WordBuffer() { release(); }

WordBuffer::WordBuffer(const WordBuffer& other) : WordBuffer(other.size_) {
  if (size_ != 0) {
    std::memcpy(data_, other.data_, size_ * sizeof(std::uint64_t));
  }
}

WordBuffer& WordBuffer::operator=(const WordBuffer& other) {
  if (this != &other) {
    WordBuffer copy(other);
    *this = std::move(copy);
  }
  return *this;
}

WordBuffer::WordBuffer(WordBuffer&& other) noexcept
    : data_(std::exchange(other.data_, nullptr)),
      size_(std::exchange(other.size_, 0)),
      mapped_(std::exchange(other.mapped_, false)) {}

WordBuffer& WordBuffer::operator=(WordBuffer&& other) noexcept {
  if (this != &other) {
    release();
    data_ = std::exchange(other.data_, nullptr);
    size_ = std::exchange(other.size_, 0);
    mapped_ = std::exchange(other.mapped_, false);
  }
  return *this;
}

void WordBuffer::release() noexcept {
  if (data_ == nullptr) {
    return;
  }
  if (mapped_) {
    ::munmap(data_, size_ * sizeof(std::uint64_t));
  } else {
    std::free(data_);
  }
  data_ = nullptr;
  size_ = 0;
  mapped_ = false;
}

}  // namespace sckf
