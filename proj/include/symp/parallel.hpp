#ifndef SYMP_PARALLEL_HPP_
#define SYMP_PARALLEL_HPP_

#include <cstdint>

#include "symp/common.hpp"

namespace symp {

/// Sets the OpenMP thread count for subsequent kernels (0 leaves the runtime
/// default in place).
void set_thread_count(int threads);
int max_threads();

/// SplitMix64 finalizer; used to derive independent substream seeds.
constexpr std::uint64_t mix_seed(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint64_t substream_seed(std::uint64_t root, std::uint64_t block) noexcept {
  return mix_seed(mix_seed(root) ^ mix_seed(block + 0x632be59bd9b4e019ULL));
}

/// Exact signed accumulator: an __int128 fast lane that spills into a BigInt
/// on overflow. Sums are independent of the order of additions.
class ExactAccumulator {
 public:
  void add(__int128 v) {
    __int128 out;
    if (__builtin_add_overflow(fast_, v, &out)) {
      slow_ += to_big(fast_);
      fast_ = v;
    } else {
      fast_ = out;
    }
  }
  void add(const BigInt& v) { slow_ += v; }
  void merge(const ExactAccumulator& other) {
    slow_ += other.slow_;
    add(other.fast_);
  }
  BigInt total() const { return slow_ + to_big(fast_); }

  static BigInt to_big(__int128 v) {
    const bool neg = v < 0;
    unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
    BigInt r = static_cast<std::uint64_t>(u >> 64);
    r <<= 64;
    r += static_cast<std::uint64_t>(u);
    return neg ? BigInt(-r) : r;
  }

 private:
  __int128 fast_ = 0;
  BigInt slow_ = 0;
};

}  // namespace symp

#endif  // SYMP_PARALLEL_HPP_
