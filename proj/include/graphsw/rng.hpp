#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <span>
#include <string_view>

namespace graphsw {

inline uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline uint64_t fnv1a64(std::string_view s) {
    uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

/// Seedable generator with labeled splitting. Streams derived with distinct
/// labels are statistically independent, so adding new draws under one label
/// never perturbs the others.
class RngStream {
  public:
    explicit RngStream(uint64_t seed) : seed_(seed), eng_(splitmix64(seed)) {}

    RngStream split(std::string_view label) const {
        return RngStream(splitmix64(seed_ ^ fnv1a64(label)));
    }
    RngStream split(std::string_view label, uint64_t index) const {
        return RngStream(splitmix64(splitmix64(seed_ ^ fnv1a64(label)) + index));
    }

    uint64_t seed() const { return seed_; }

    double uniform() { return std::uniform_real_distribution<double>(0.0, 1.0)(eng_); }

    /// Uniform integer in [0, bound).
    uint64_t uniformInt(uint64_t bound) {
        return std::uniform_int_distribution<uint64_t>(0, bound - 1)(eng_);
    }

    bool bernoulli(double p) { return uniform() < p; }

    int poisson(double mean) { return std::poisson_distribution<int>(mean)(eng_); }

    /// Index drawn from unnormalized nonnegative weights.
    int categorical(std::span<const double> weights) {
        double total = 0;
        for (double w : weights) total += w;
        double u = uniform() * total;
        double acc = 0;
        for (size_t i = 0; i < weights.size(); ++i) {
            acc += weights[i];
            if (u < acc) return static_cast<int>(i);
        }
        return static_cast<int>(weights.size()) - 1;
    }

    template <typename T>
    void shuffle(std::vector<T>& v) {
        for (size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[uniformInt(i)]);
    }

  private:
    uint64_t seed_;
    std::mt19937_64 eng_;
};

}  // namespace graphsw
