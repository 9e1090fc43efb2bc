#ifndef RAFTRES_RNG_HPP_
#define RAFTRES_RNG_HPP_

#include <cstdint>

namespace raftres {

// Splittable counter-based random stream (splitmix64 core).
// Streams derived from distinct (seed, id...) tuples are statistically
// independent and reproducible: the same derivation path always yields
// the same sequence. One stream is owned by exactly one trace at a time.
class RngStream {
 public:
  RngStream() : RngStream(0) {}
  explicit RngStream(std::uint64_t seed)
      : state_(mix(seed ^ 0x9e3779b97f4a7c15ull)), gamma_(make_gamma(seed)) {}

  // Child stream keyed by up to three ids (replication, clone, ...).
  RngStream derive(std::uint64_t a, std::uint64_t b = 0,
                   std::uint64_t c = 0) const {
    std::uint64_t key = state_;
    key = mix(key ^ mix(a + 0x100000001b3ull));
    key = mix(key ^ mix(b + 0xc2b2ae3d27d4eb4full));
    key = mix(key ^ mix(c + 0x165667b19e3779f9ull));
    RngStream child;
    child.state_ = key;
    child.gamma_ = make_gamma(key);
    return child;
  }

  std::uint64_t next_u64() {
    state_ += gamma_;
    return mix(state_);
  }

  // Uniform draw on the open interval (0,1): never 0, never 1, so
  // -log(u) and quantile transforms stay finite and strictly positive.
  double next_unit() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
  }

  // UniformRandomBitGenerator interface.
  using result_type = std::uint64_t;
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~0ull; }
  result_type operator()() { return next_u64(); }

  friend bool operator==(const RngStream&, const RngStream&) = default;

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }
  static std::uint64_t make_gamma(std::uint64_t key) {
    return mix(key * 0xff51afd7ed558ccdull + 0x9e3779b97f4a7c15ull) | 1ull;
  }

  std::uint64_t state_;
  std::uint64_t gamma_;
};

}  // namespace raftres

#endif  // RAFTRES_RNG_HPP_
