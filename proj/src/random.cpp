#include "lclvol/random.hpp"

namespace lclvol {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

std::uint64_t stream_block(std::uint64_t seed, std::uint64_t id, std::uint64_t index) {
  std::uint64_t key = splitmix64(seed ^ splitmix64(id ^ 0x5deece66dull));
  return splitmix64(key + index * 0xd1342543de82ef95ull);
}

std::uint64_t RandomStream::next_block() {
  check();
  std::uint64_t b = (*cursor_ + 63) / 64;
  *cursor_ = (b + 1) * 64;
  return stream_block(seed_, id_, b);
}

bool RandomStream::next_bit() {
  check();
  std::uint64_t c = *cursor_;
  *cursor_ = c + 1;
  return (stream_block(seed_, id_, c / 64) >> (c % 64)) & 1u;
}

void RandomStream::skip_to_block(std::uint64_t block) {
  check();
  if (*cursor_ < block * 64) *cursor_ = block * 64;
}

}  // namespace lclvol
