// Counter-based random number streams.
//
// Every stream is a pure function of a 128-bit key and a 64-bit counter, so
// a draw can be reproduced from (key, counter) alone.  Streams derived for
// different samples, nodes or splitting clones are independent of worker
// scheduling, which is what makes shard-count invariance trivial: sample i
// always sees the same stream no matter which worker runs it.
//
// The word function is two chained splitmix64 finalizers over the key pair;
// the finalizer has full avalanche and this construction passes the usual
// smoke tests (equidistribution, pairwise correlation) we run in test_rng.

#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <span>
#include <string_view>
#include <vector>

namespace pbsim::rng {

constexpr std::uint64_t kGolden = 0x9e3779b97f4a7c15ull;

inline std::uint64_t mix64(std::uint64_t z) {
  z += kGolden;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

inline std::uint64_t rotl64(std::uint64_t x, int k) {
  return (x << k) | (x >> (64 - k));
}

// FNV-1a, used to fold experiment-id strings into seed material.
inline std::uint64_t hash_str(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

class Stream {
 public:
  Stream() : k0_(0), k1_(0), ctr_(0) {}
  Stream(std::uint64_t k0, std::uint64_t k1) : k0_(k0), k1_(k1), ctr_(0) {}

  // Independent child stream keyed by `word`.  Children with distinct words
  // (or distinct parents) behave as unrelated streams.
  Stream child(std::uint64_t word) const {
    Stream s;
    s.k0_ = mix64(k0_ ^ mix64(word ^ 0x517cc1b727220a95ull));
    s.k1_ = mix64(k1_ + mix64(word + 0x2545f4914f6cdd1dull));
    return s;
  }
  Stream child(std::uint64_t a, std::uint64_t b) const {
    return child(a).child(b);
  }

  std::uint64_t word_at(std::uint64_t ctr) const {
    return mix64(mix64(ctr + k0_) ^ k1_);
  }

  std::uint64_t next_word() { return word_at(ctr_++); }

  // Uniform on (0,1]; never returns 0 so log() is always safe.
  double uniform01() {
    return (static_cast<double>(next_word() >> 11) + 1.0) * 0x1.0p-53;
  }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

  double normal() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    const double u1 = uniform01();
    const double u2 = uniform01();
    const double rr = std::sqrt(-2.0 * std::log(u1));
    const double th = 6.283185307179586476925287 * u2;
    spare_ = rr * std::sin(th);
    have_spare_ = true;
    return rr * std::cos(th);
  }

  // Stateless normal addressed by counter; consumes counters {2c, 2c+1}
  // of a dedicated key lane so it never collides with sequential draws.
  double normal_at(std::uint64_t c) const {
    const std::uint64_t w1 = word_at(keyed_base(2 * c));
    const std::uint64_t w2 = word_at(keyed_base(2 * c + 1));
    const double u1 = (static_cast<double>(w1 >> 11) + 1.0) * 0x1.0p-53;
    const double u2 = (static_cast<double>(w2 >> 11) + 1.0) * 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) *
           std::cos(6.283185307179586476925287 * u2);
  }

  double exponential(double rate) { return -std::log(uniform01()) / rate; }

  std::uint64_t poisson(double mean);

  // Uniform point in the d-ball of radius R about `center`.
  void uniform_in_ball(std::span<const double> center, double radius,
                       std::span<double> out);
  // Uniform point in an axis box.
  void uniform_in_box(std::span<const double> lo, std::span<const double> hi,
                      std::span<double> out);

  std::uint64_t key_lo() const { return k0_; }
  std::uint64_t key_hi() const { return k1_; }

 private:
  // Keyed draws live above 2^62; sequential counters stay far below.
  static std::uint64_t keyed_base(std::uint64_t c) {
    return (1ull << 62) + (c & ((1ull << 61) - 1));
  }

  std::uint64_t k0_, k1_;
  std::uint64_t ctr_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

// Root stream for one sample of one experiment.  Counter-based keyed hash of
// the triple, so any partition of samples across workers yields the same
// multiset of streams.
inline Stream seed_schedule(std::uint64_t master_seed,
                            std::string_view experiment_id,
                            std::uint64_t sample_index) {
  Stream root(mix64(master_seed), mix64(master_seed ^ 0x6a09e667f3bcc909ull));
  return root.child(hash_str(experiment_id)).child(sample_index);
}

}  // namespace pbsim::rng
