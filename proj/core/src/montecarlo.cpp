#include "orislink/montecarlo.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <thread>
#include <vector>

namespace orislink {

namespace {

// Samples per chunk. Even, so Box-Muller pairs never straddle a chunk
// boundary, and small enough that any realistic n spreads over many
// independent streams.
constexpr long long kChunk = 16384;

std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

// xoshiro256++ (Blackman & Vigna). State is seeded through splitmix64 from
// a per-chunk counter value, which is the recommended way to derive
// independent streams.
class Xoshiro256pp {
public:
    explicit Xoshiro256pp(std::uint64_t seed) {
        std::uint64_t x = seed;
        for (auto& w : s_) w = splitmix64(x);
        // splitmix64 never yields four zero words from any input, but keep
        // the all-zero guard anyway; that state is the one fixed point.
        if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;
    }

    std::uint64_t next() {
        const std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
        const std::uint64_t t = s_[1] << 17;
        s_[2] ^= s_[0];
        s_[3] ^= s_[1];
        s_[1] ^= s_[2];
        s_[0] ^= s_[3];
        s_[2] ^= t;
        s_[3] = rotl(s_[3], 45);
        return result;
    }

    // Uniform on (0, 1]: 53 top bits, then +1 so log() below never sees 0.
    double unit_positive() {
        return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;
    }

private:
    static std::uint64_t rotl(std::uint64_t v, int k) {
        return (v << k) | (v >> (64 - k));
    }

    std::uint64_t s_[4];
};

struct NormalPair {
    double z1;
    double z2;
};

NormalPair box_muller(Xoshiro256pp& rng) {
    const double u1 = rng.unit_positive();
    const double u2 = rng.unit_positive();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double phi = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(phi), r * std::sin(phi)};
}

// Streaming mean/variance (Welford). merge() uses Chan's pairwise update;
// merging chunk accumulators in ascending chunk index reproduces the
// serial order of operations exactly.
struct Accumulator {
    long long n = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double x) {
        ++n;
        const double d = x - mean;
        mean += d / static_cast<double>(n);
        m2 += d * (x - mean);
    }

    void merge(const Accumulator& o) {
        if (o.n == 0) return;
        if (n == 0) {
            *this = o;
            return;
        }
        const double total = static_cast<double>(n) + static_cast<double>(o.n);
        const double d = o.mean - mean;
        m2 += o.m2 + d * d * (static_cast<double>(n) / total) *
                         static_cast<double>(o.n);
        mean += d * (static_cast<double>(o.n) / total);
        n += o.n;
    }
};

std::uint64_t chunk_stream_seed(std::uint64_t seed, long long chunk) {
    // Distinct splitmix64 starting points per chunk; the golden-ratio
    // stride keeps nearby chunk indices far apart in state space.
    return seed + 0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(chunk + 1);
}

// Runs `body(rng, count, acc)` for every chunk, possibly across threads,
// then merges per-chunk accumulators in index order. The chunk decomposition
// is fixed by n alone, so the merged statistics are independent of the
// thread count.
template <typename Body>
McResult run_chunked(long long n, std::uint64_t seed, int threads,
                     const Body& body) {
    if (n < 1) throw std::invalid_argument("monte carlo: n must be >= 1");
    if (threads < 1) {
        throw std::invalid_argument("monte carlo: threads must be >= 1");
    }

    const long long chunks = (n + kChunk - 1) / kChunk;
    std::vector<Accumulator> partial(static_cast<std::size_t>(chunks));

    auto run_chunk = [&](long long c) {
        Xoshiro256pp rng(chunk_stream_seed(seed, c));
        const long long begin = c * kChunk;
        const long long count = std::min(kChunk, n - begin);
        body(rng, count, partial[static_cast<std::size_t>(c)]);
    };

    const int workers =
        static_cast<int>(std::min<long long>(threads, chunks));
    if (workers <= 1) {
        for (long long c = 0; c < chunks; ++c) run_chunk(c);
    } else {
        std::atomic<long long> next{0};
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(workers));
        for (int t = 0; t < workers; ++t) {
            pool.emplace_back([&] {
                for (;;) {
                    const long long c = next.fetch_add(1);
                    if (c >= chunks) break;
                    run_chunk(c);
                }
            });
        }
        for (auto& th : pool) th.join();
    }

    Accumulator total;
    for (const auto& p : partial) total.merge(p);

    McResult res;
    res.mean = total.mean;
    res.n = total.n;
    res.seed = seed;
    if (total.n > 1 && total.m2 > 0.0) {
        const double var =
            total.m2 / static_cast<double>(total.n - 1);
        res.stderr_of_mean =
            std::sqrt(var / static_cast<double>(total.n));
    }
    return res;
}

} // namespace

McResult mc_average_gml(const RxBeam& rx, const HoverStats& hover,
                        double aperture_radius, long long n,
                        std::uint64_t seed, int threads) {
    // Validate once up front so a bad width faults before any sampling.
    (void)conditional_gml(hover.mu_x, hover.mu_y, rx, aperture_radius);

    return run_chunked(n, seed, threads,
                       [&](Xoshiro256pp& rng, long long count,
                           Accumulator& acc) {
        for (long long i = 0; i < count; ++i) {
            const NormalPair z = box_muller(rng);
            const double dx = hover.mu_x + hover.sigma_x * z.z1;
            const double dy = hover.mu_y + hover.sigma_y * z.z2;
            acc.add(conditional_gml(dx, dy, rx, aperture_radius));
        }
    });
}

McResult mc_plob(const ChannelBudget& budget, long long n,
                 std::uint64_t seed, int threads) {
    const double c = budget.tau_eff * budget.tau_l * budget.tau_p;
    if (!(c >= 0.0) || !(c <= 1.0)) {
        throw InvalidConfig("mc_plob: transmittance product must lie in [0, 1]");
    }
    if (!(budget.sigma_R_sq >= 0.0)) {
        throw InvalidConfig("mc_plob: sigma_R_sq must be >= 0");
    }
    const double sigma = std::sqrt(budget.sigma_R_sq);
    const double mu = -0.5 * budget.sigma_R_sq;

    // One normal per draw; each Box-Muller pair serves two consecutive
    // draws. kChunk is even, so pairs stay inside their chunk and the
    // stream layout is identical for every thread count.
    return run_chunked(n, seed, threads,
                       [&](Xoshiro256pp& rng, long long count,
                           Accumulator& acc) {
        for (long long i = 0; i < count; i += 2) {
            const NormalPair z = box_muller(rng);
            acc.add(plob_truncated(c, std::exp(mu + sigma * z.z1)));
            if (i + 1 < count) {
                acc.add(plob_truncated(c, std::exp(mu + sigma * z.z2)));
            }
        }
    });
}

McResult mc_lognormal_mean(double sigma_R_sq, long long n,
                           std::uint64_t seed, int threads) {
    if (!(sigma_R_sq >= 0.0)) {
        throw std::invalid_argument(
            "mc_lognormal_mean: sigma_R_sq must be >= 0");
    }
    const double sigma = std::sqrt(sigma_R_sq);
    const double mu = -0.5 * sigma_R_sq;

    return run_chunked(n, seed, threads,
                       [&](Xoshiro256pp& rng, long long count,
                           Accumulator& acc) {
        for (long long i = 0; i < count; i += 2) {
            const NormalPair z = box_muller(rng);
            acc.add(std::exp(mu + sigma * z.z1));
            if (i + 1 < count) {
                acc.add(std::exp(mu + sigma * z.z2));
            }
        }
    });
}

} // namespace orislink
