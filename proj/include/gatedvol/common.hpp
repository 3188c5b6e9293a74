#pragma once

#include <atomic>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <future>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace gatedvol {

inline constexpr const char* kVersion = "0.1.0";

// ---------------------------------------------------------------------------
// Error taxonomy. Exit-code mapping lives in the CLI: config errors -> 1,
// data errors -> 2, numerical errors -> 3.
// ---------------------------------------------------------------------------

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DataError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NumericalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : DataError {
    long line = -1;
    ParseError(const std::string& msg, long line_no)
        : DataError(msg + " (line " + std::to_string(line_no) + ")"), line(line_no) {}
};

struct NonmonotoneDates : DataError {
    using DataError::DataError;
};
struct EmptyFile : DataError {
    using DataError::DataError;
};
struct InsufficientHistory : DataError {
    using DataError::DataError;
};

struct ZeroMass : NumericalError {
    using NumericalError::NumericalError;
};
struct DivergentMoment : NumericalError {
    using NumericalError::NumericalError;
};
struct GridTooCoarse : NumericalError {
    using NumericalError::NumericalError;
};
struct OrderOutOfRange : NumericalError {
    using NumericalError::NumericalError;
};
struct UnstableRegion : NumericalError {
    using NumericalError::NumericalError;
};
struct DegenerateHessian : NumericalError {
    using NumericalError::NumericalError;
};
struct NoConvergence : NumericalError {
    using NumericalError::NumericalError;
};
struct WindowTooShort : NumericalError {
    using NumericalError::NumericalError;
};
struct EmptySample : NumericalError {
    using NumericalError::NumericalError;
};
struct NonpositiveES : NumericalError {
    using NumericalError::NumericalError;
};
struct SpecHasNoFractionalGate : NumericalError {
    using NumericalError::NumericalError;
};
struct SampleTooShort : NumericalError {
    using NumericalError::NumericalError;
};

// Variance filter failure; carries the first offending period.
struct NonpositiveVariance : NumericalError {
    long t = -1;
    double h = 0.0;
    NonpositiveVariance(long when, double value, const std::string& params)
        : NumericalError("nonpositive conditional variance h[" + std::to_string(when) +
                         "] = " + std::to_string(value) + " at params " + params),
          t(when), h(value) {}
};

// ---------------------------------------------------------------------------
// Deterministic RNG. Uses mt19937_64 for the stream and the library's own
// inverse-CDF transform for normals so that sequences are identical across
// standard library implementations.
// ---------------------------------------------------------------------------

namespace detail {
double normal_quantile(double p);  // defined in stats.hpp
}

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ULL) {}

    std::uint64_t next_u64() {
        // xorshift* variant; fixed algorithm keeps streams reproducible.
        std::uint64_t x = state_;
        x ^= x >> 12;
        x ^= x << 25;
        x ^= x >> 27;
        state_ = x;
        return x * 0x2545F4914F6CDD1DULL;
    }

    // Uniform on (0,1), never exactly 0 or 1.
    double uniform() {
        const double u = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
        return u + 0x1.0p-54;
    }

    double normal() { return detail::normal_quantile(uniform()); }

    double sign() { return (next_u64() & 1ULL) ? 1.0 : -1.0; }

    // Substream derivation for parallel tasks.
    Rng fork(std::uint64_t stream) const {
        return Rng(state_ ^ (0xbf58476d1ce4e5b9ULL * (stream + 1)));
    }

  private:
    std::uint64_t state_;
};

// ---------------------------------------------------------------------------
// Minimal task parallelism. GATEDVOL_THREADS caps the worker count.
// ---------------------------------------------------------------------------

inline unsigned hardware_threads() {
    unsigned n = std::thread::hardware_concurrency();
    if (n == 0) n = 1;
    if (const char* env = std::getenv("GATEDVOL_THREADS")) {
        const long cap = std::strtol(env, nullptr, 10);
        if (cap > 0 && static_cast<unsigned>(cap) < n) n = static_cast<unsigned>(cap);
    }
    return n;
}

// Runs fn(i) for i in [0, n). Exceptions propagate from the first failing task.
inline void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn) {
    const unsigned workers = std::min<std::size_t>(hardware_threads(), n ? n : 1);
    if (workers <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::vector<std::future<void>> futs;
    futs.reserve(workers);
    std::atomic<std::size_t> next{0};
    for (unsigned w = 0; w < workers; ++w) {
        futs.push_back(std::async(std::launch::async, [&]() {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= n) return;
                fn(i);
            }
        }));
    }
    for (auto& f : futs) f.get();
}

}  // namespace gatedvol
