#ifndef NLAB_RNG_HPP
#define NLAB_RNG_HPP

#include <cstdint>
#include <random>

namespace nlab {

// Splittable seeded generator. A (seed, stream_id) pair fully determines the
// outcome sequence, so ensemble members can each own an independent stream
// keyed by trial index and aggregation stays order-independent.
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed, std::uint64_t stream_id = 0)
        : seed_(seed), stream_id_(stream_id), gen_(mix(seed, stream_id)) {}

    // New generator on the same seed with a different stream id.
    SeededRng stream(std::uint64_t stream_id) const { return SeededRng(seed_, stream_id); }

    std::uint64_t seed() const { return seed_; }
    std::uint64_t stream_id() const { return stream_id_; }

    std::uint64_t next_u64() { return gen_(); }

    // Uniform on [0, 1).
    double uniform() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    double normal(double mean = 0.0, double stddev = 1.0) {
        std::normal_distribution<double> dist(mean, stddev);
        return dist(gen_);
    }

    // Uniform integer in [lo, hi].
    int uniform_int(int lo, int hi) {
        std::uniform_int_distribution<int> dist(lo, hi);
        return dist(gen_);
    }

private:
    // splitmix64-style avalanche of the (seed, stream) pair.
    static std::uint64_t mix(std::uint64_t seed, std::uint64_t stream) {
        std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (stream + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::mt19937_64 gen_;
};

}  // namespace nlab

#endif
