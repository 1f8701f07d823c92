#include "kdnls/fft.hpp"

#include <fftw3.h>

#include <cassert>
#include <map>
#include <mutex>
#include <stdexcept>

// FFTW's FORWARD transform uses e^{-inx}, which is the analysis direction for
// the û(n)e^{+inx} synthesis convention used throughout. Plans are created
// once per (size, direction) under a lock with FFTW_ESTIMATE (deterministic
// plan choice) and FFTW_UNALIGNED (position-independent, so fftw_execute_dft
// may run concurrently on arbitrary caller buffers).

namespace kdnls::fft {

namespace {

class PlanCache {
public:
    fftw_plan get(int n, int sign) {
        std::scoped_lock lock(mu_);
        auto key = std::pair{n, sign};
        auto it = plans_.find(key);
        if (it != plans_.end()) return it->second;
        fftw_complex* buf = fftw_alloc_complex(static_cast<size_t>(n));
        fftw_plan p = fftw_plan_dft_1d(n, buf, buf, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
        fftw_free(buf);
        if (!p) throw std::runtime_error("fftw plan creation failed");
        plans_.emplace(key, p);
        return p;
    }

private:
    std::mutex mu_;
    std::map<std::pair<int, int>, fftw_plan> plans_;
};

PlanCache& cache() {
    static PlanCache c;
    return c;
}

void execute(int sign, std::span<const cd> in, std::span<cd> out) {
    assert(in.size() == out.size());
    assert(in.data() != out.data());
    const int n = static_cast<int>(in.size());
    fftw_plan p = cache().get(n, sign);
    auto* src = reinterpret_cast<fftw_complex*>(const_cast<cd*>(in.data()));
    auto* dst = reinterpret_cast<fftw_complex*>(out.data());
    fftw_execute_dft(p, src, dst);
}

} // namespace

void forward(std::span<const cd> in, std::span<cd> out) {
    execute(FFTW_FORWARD, in, out);
    const double inv = 1.0 / static_cast<double>(in.size());
    for (auto& c : out) c *= inv;
}

void inverse(std::span<const cd> in, std::span<cd> out) {
    execute(FFTW_BACKWARD, in, out);
}

} // namespace kdnls::fft
