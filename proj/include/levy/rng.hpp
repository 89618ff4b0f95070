#pragma once

#include <array>
#include <cstdint>

namespace levy {

// One random stream out of a splittable family: state is derived from
// (master seed, stream id) with splitmix64 and then advanced with
// xoshiro256++. Streams with distinct ids are independent for simulation
// purposes, and a stream's output depends only on its (seed, id) pair, never
// on which thread consumes it.
class RngStream {
public:
    RngStream(std::uint64_t master_seed, std::uint64_t stream_id);

    std::uint64_t next_u64();

    // Uniform on (0, 1]; never returns 0, so log(u) is always finite.
    double uniform();

    double exponential(double rate);

    // Standard normal via the polar method; the spare deviate is cached.
    double normal();
    double normal(double mean, double stddev);

private:
    std::array<std::uint64_t, 4> state_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

// splitmix64 step, exposed for deriving sub-seeds deterministically.
std::uint64_t splitmix64(std::uint64_t& state);

// Stateless combination of a master seed and a salt into a new master seed.
std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t salt);

} // namespace levy
