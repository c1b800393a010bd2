#include "fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>

#include "semzk/error.hpp"

namespace semzk::detail {
namespace {

using PlanKey = std::pair<std::vector<int>, int>;

class PlanCache {
public:
    ~PlanCache() {
        for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
    }

    fftw_plan get(std::span<const int> extents, int sign) {
        PlanKey key{std::vector<int>(extents.begin(), extents.end()), sign};
        std::lock_guard lock(mutex_);
        if (auto it = plans_.find(key); it != plans_.end()) return it->second;

        std::size_t total = 1;
        for (int e : extents) total *= static_cast<std::size_t>(e);
        fftw_complex* a = fftw_alloc_complex(total);
        fftw_complex* b = fftw_alloc_complex(total);
        fftw_plan plan = fftw_plan_dft(static_cast<int>(extents.size()), extents.data(), a, b, sign,
                                       FFTW_ESTIMATE | FFTW_UNALIGNED);
        fftw_free(a);
        fftw_free(b);
        if (plan == nullptr) throw Error("FFTW failed to create a plan");
        plans_.emplace(std::move(key), plan);
        return plan;
    }

private:
    std::mutex mutex_;
    std::map<PlanKey, fftw_plan> plans_;
};

PlanCache& cache() {
    static PlanCache instance;
    return instance;
}

}  // namespace

void fft(std::span<const int> extents, FftDirection dir, std::span<const std::complex<double>> in,
         std::span<std::complex<double>> out) {
    std::size_t total = 1;
    for (int e : extents) total *= static_cast<std::size_t>(e);
    if (in.size() != total || out.size() != total) throw Error("fft buffer size mismatch");
    if (static_cast<const void*>(in.data()) == static_cast<const void*>(out.data())) {
        throw Error("fft requires distinct input and output buffers");
    }
    const int sign = dir == FftDirection::forward ? FFTW_FORWARD : FFTW_BACKWARD;
    fftw_plan plan = cache().get(extents, sign);
    // FFTW's execute interface takes a non-const input; out-of-place c2c plans do not write it.
    auto* src = reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in.data()));
    auto* dst = reinterpret_cast<fftw_complex*>(out.data());
    fftw_execute_dft(plan, src, dst);
}

}  // namespace semzk::detail
