#include "chirpwave/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "chirpwave/errors.hpp"

namespace chirpwave {

namespace {

// Plan cache keyed by (size, direction). FFTW plan creation is not
// thread-safe; execution through the new-array interface is. Plans use
// FFTW_ESTIMATE so the chosen algorithm depends only on the size, which keeps
// outputs byte-identical across runs.
class PlanCache {
public:
    fftw_plan get(std::size_t n, bool inverse) {
        std::lock_guard<std::mutex> lock(mutex_);
        const auto key = std::make_pair(n, inverse);
        auto it = plans_.find(key);
        if (it != plans_.end()) return it->second;
        std::vector<cplx> scratch(n);
        auto* ptr = reinterpret_cast<fftw_complex*>(scratch.data());
        fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n), ptr, ptr,
                                          inverse ? FFTW_BACKWARD : FFTW_FORWARD,
                                          FFTW_ESTIMATE | FFTW_UNALIGNED);
        if (!plan) throw std::runtime_error("fftw_plan_dft_1d failed");
        plans_.emplace(key, plan);
        return plan;
    }

private:
    std::mutex mutex_;
    std::map<std::pair<std::size_t, bool>, fftw_plan> plans_;
};

PlanCache& plan_cache() {
    static PlanCache cache;
    return cache;
}

}  // namespace

void fft_in_place(std::span<cplx> data, bool inverse) {
    const std::size_t n = data.size();
    if (n == 0) return;
    if ((n & (n - 1)) != 0) throw std::invalid_argument("fft: length must be a power of two");
    fftw_plan plan = plan_cache().get(n, inverse);
    auto* ptr = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(plan, ptr, ptr);
    if (inverse) {
        const double scale = 1.0 / static_cast<double>(n);
        for (auto& v : data) v *= scale;
    }
}

std::vector<cplx> fft(std::vector<cplx> data, bool inverse) {
    fft_in_place(data, inverse);
    return data;
}

std::vector<cplx> spectrum(const WaveField& f) {
    std::vector<cplx> data(f.values().begin(), f.values().end());
    fft_in_place(data, false);
    return data;
}

cplx unit_phase(long double phase) {
    constexpr long double two_pi = 6.283185307179586476925286766559005768L;
    const long double r = std::remainderl(phase, two_pi);
    return {static_cast<double>(std::cos(static_cast<double>(r))),
            static_cast<double>(std::sin(static_cast<double>(r)))};
}

double high_k_mass_fraction(const WaveField& f, double frac) {
    const auto spec = spectrum(f);
    const double cutoff = frac * f.grid().nyquist();
    double total = 0.0, high = 0.0;
    for (std::size_t j = 0; j < spec.size(); ++j) {
        const double p = std::norm(spec[j]);
        total += p;
        if (std::abs(f.grid().k(j)) >= cutoff) high += p;
    }
    if (total == 0.0) return 0.0;
    return high / total;
}

namespace detail {

void parallel_for(std::size_t count, std::size_t jobs, const std::function<void(std::size_t)>& fn) {
    if (count == 0) return;
    std::size_t workers = jobs != 0 ? jobs : std::thread::hardware_concurrency();
    if (workers == 0) workers = 1;
    workers = std::min(workers, count);
    if (workers == 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            const std::size_t chunk = (count + workers - 1) / workers;
            const std::size_t begin = w * chunk;
            const std::size_t end = std::min(count, begin + chunk);
            for (std::size_t i = begin; i < end; ++i) fn(i);
        });
    }
    for (auto& th : pool) th.join();
}

}  // namespace detail

}  // namespace chirpwave
