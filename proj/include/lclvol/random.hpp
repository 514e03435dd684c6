#pragma once

#include <cstdint>
#include <stdexcept>

namespace lclvol {

class NondeterminismError : public std::runtime_error {
 public:
  NondeterminismError() : std::runtime_error("deterministic run read random bits") {}
};

std::uint64_t splitmix64(std::uint64_t x);

// Block `index` of the private random string of vertex `id` under `seed`.
std::uint64_t stream_block(std::uint64_t seed, std::uint64_t id, std::uint64_t index);

// Sequential reader over one vertex's random string. The cursor (in bits)
// lives with the execution so bits consumed are counted per vertex.
class RandomStream {
 public:
  RandomStream(std::uint64_t seed, std::uint64_t id, std::uint64_t* cursor, bool deny)
      : seed_(seed), id_(id), cursor_(cursor), deny_(deny) {}

  // Moves to the next block boundary (if mid-block) and returns that block.
  std::uint64_t next_block();
  bool next_bit();
  // Forward-only; skipped bits count as consumed.
  void skip_to_block(std::uint64_t block);
  std::uint64_t cursor() const { return *cursor_; }

 private:
  void check() const {
    if (deny_) throw NondeterminismError();
  }
  std::uint64_t seed_;
  std::uint64_t id_;
  std::uint64_t* cursor_;
  bool deny_;
};

}  // namespace lclvol
