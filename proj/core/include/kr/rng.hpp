#pragma once

#include <cstdint>

namespace kr::rng {

// splitmix64 finalizer (Steele, Lea & Flood 2014).
inline constexpr std::uint64_t mix(std::uint64_t x) {
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

inline constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ull;

// Fixed stream tags. Keeping each random-number use on its own substream
// makes every atom's draws independent of atom count, engine, and of how
// many draws other purposes consumed.
enum class Purpose : std::uint64_t {
  Beta = 0,
  N0 = 1,
  Theta0 = 2,
  SeEvent = 3,
  SeRecoil = 4,
};

// Inverse normal CDF, algorithm AS 241 (Wichura 1988), double precision.
double probit(double p);

// Counter-based stream: draw i is mix(key + golden * i), so streams are
// stateless apart from the counter and cheap to construct per atom.
class Stream {
 public:
  Stream() = default;
  Stream(std::uint64_t seed, std::uint64_t atom, Purpose purpose)
      : key_(mix(mix(mix(seed) ^ (atom * 0xA24BAED4963EE407ull)) ^
                 (static_cast<std::uint64_t>(purpose) * 0x9FB21C651E98DF25ull))) {}

  std::uint64_t next_raw() { return mix(key_ + kGolden * ++counter_); }

  // Uniform in [0, 1) with 53-bit resolution.
  double u01() { return static_cast<double>(next_raw() >> 11) * 0x1.0p-53; }

  double uniform(double a, double b) { return a + (b - a) * u01(); }

  double normal() {
    double u = u01();
    if (u <= 0.0) u = 0x1.0p-54;  // probit needs (0, 1)
    return probit(u);
  }

  std::uint64_t key() const { return key_; }

 private:
  std::uint64_t key_ = 0;
  std::uint64_t counter_ = 0;
};

}  // namespace kr::rng
