#ifndef MALLOWS_RNG_HPP
#define MALLOWS_RNG_HPP

#include <cstdint>

namespace mallows {

/// Identifies one reproducible random stream. (seed, stream) fully
/// determines every random output of a sampling call; per-trial
/// sub-streams are derived from (seed, stream, trial) so that results
/// do not depend on scheduling.
struct SeedSpec {
    std::uint64_t seed = 0;
    std::uint64_t stream = 0;
};

namespace detail {
inline std::uint64_t splitmix64_mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}
} // namespace detail

/// splitmix64 stream. Counter-based: the state advances by a fixed
/// odd increment, so distinct initial states give independent-looking
/// streams and jumping ahead is O(1).
class RngStream {
public:
    explicit RngStream(std::uint64_t state) : state_(state) {}

    RngStream(SeedSpec spec, std::uint64_t trial)
        : state_(detail::splitmix64_mix(spec.seed + 0x9e3779b97f4a7c15ULL) ^
                 detail::splitmix64_mix(spec.stream + 0xd1b54a32d192ed03ULL) ^
                 detail::splitmix64_mix(trial + 0x2545f4914f6cdd1dULL)) {}

    std::uint64_t next_u64() {
        state_ += 0x9e3779b97f4a7c15ULL;
        return detail::splitmix64_mix(state_);
    }

    /// Uniform double in [0, 1), 53 random bits.
    double next_double() {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    /// Uniform integer in {1..m}.
    std::uint64_t next_in(std::uint64_t m) {
        auto r = 1 + static_cast<std::uint64_t>(next_double() * static_cast<double>(m));
        return r > m ? m : r; // guards against round-up at the edge
    }

private:
    std::uint64_t state_;
};

} // namespace mallows

#endif
