#include "efk/scalars/sample_plan.hpp"

#include "efk/errors.hpp"

#include <memory>
#include <random>
#include <string>

namespace efk {

struct UniformStream::Impl {
    std::mt19937_64 rng;
};

UniformStream::UniformStream(std::uint64_t seed) : impl_(std::make_shared<Impl>(Impl{std::mt19937_64(seed)})) {}

std::uint64_t UniformStream::next_u64() { return impl_->rng(); }

double UniformStream::next()
{
    // 53 random bits, independent of the standard library's distributions.
    return static_cast<double>(impl_->rng() >> 11) * 0x1.0p-53;
}

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t fnv1a(const std::string& s)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::uint64_t job_seed(std::uint64_t global_seed, const std::string& job_id)
{
    return splitmix64(global_seed ^ fnv1a(job_id));
}

void SamplePlan::validate() const
{
    if (num_points < 3)
        throw ParamError("SamplePlan: num_points must be at least 3");
    if (!(pole_margin > 0.0) || !(box > 0.0))
        throw ParamError("SamplePlan: pole_margin and box must be positive");
}

bool SamplePlan::default_accept(PointView xi) const
{
    const size_t n = xi.size();
    for (size_t i = 0; i < n; ++i) {
        if (std::abs(xi[i]) < pole_margin)
            return false;
        for (size_t j = i + 1; j < n; ++j)
            if (std::abs(xi[i] - xi[j]) < pole_margin || std::abs(xi[i] + xi[j]) < pole_margin)
                return false;
    }
    return true;
}

std::vector<Point> SamplePlan::generate(int n, const PointValidator& extra) const
{
    validate();
    UniformStream rng(rng_seed);
    std::vector<Point> out;
    int attempts = 0;
    while (static_cast<int>(out.size()) < num_points) {
        if (++attempts > max_attempts)
            throw SampleDegenerate("SamplePlan: could not find points respecting the pole margin");
        Point p(n);
        for (int k = 0; k < n; ++k) {
            const double re = rng.symmetric(box);
            const double im = rng.symmetric(box);
            p[k] = {re, im};
        }
        if (!default_accept(p))
            continue;
        if (extra && !extra(p))
            continue;
        out.push_back(std::move(p));
    }
    return out;
}

SamplePlan SamplePlan::reseeded(int attempt) const
{
    SamplePlan p = *this;
    p.rng_seed = splitmix64(rng_seed + static_cast<std::uint64_t>(attempt) * 0x9e3779b97f4a7c15ULL);
    return p;
}

} // namespace efk
