#pragma once

#include "efk/scalars/complex.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <string>

namespace efk {

// Accepts or rejects a candidate point; used to keep samples away from poles.
using PointValidator = std::function<bool(PointView)>;

// Seeded generator of generic evaluation points in the box
// [-box, box] + i[-box, box] per coordinate.
struct SamplePlan {
    std::uint64_t rng_seed = 1;
    int num_points = 5;
    double pole_margin = 1e-2;
    double box = 1.0;
    int max_attempts = 10000;

    // Throws ParamError if num_points < 3 or margins are not positive.
    void validate() const;

    // Default rejection: |x_i|, |x_i - x_j| and |x_i + x_j| all >= pole_margin.
    bool default_accept(PointView xi) const;

    // num_points points in C^n; each accepted by default_accept and, when
    // given, by extra. Same seed, same points.
    std::vector<Point> generate(int n, const PointValidator& extra = {}) const;

    // A fresh plan for retry number `attempt` (deterministic).
    SamplePlan reseeded(int attempt) const;
};

// Deterministic uniform doubles in [0, 1) from a 64-bit Mersenne twister.
class UniformStream {
public:
    explicit UniformStream(std::uint64_t seed);
    double next();
    double symmetric(double half_width) { return (2.0 * next() - 1.0) * half_width; }
    std::uint64_t next_u64();

private:
    struct Impl;
    std::shared_ptr<Impl> impl_;
};

std::uint64_t splitmix64(std::uint64_t x);
std::uint64_t fnv1a(const std::string& s);
// Per-job seed: splitmix64(global ^ fnv1a(job_id)).
std::uint64_t job_seed(std::uint64_t global_seed, const std::string& job_id);

} // namespace efk
