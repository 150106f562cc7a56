#include "wwmv/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace wwmv::fft {

namespace {

using Key = std::tuple<std::vector<int>, std::vector<int>, int>;

struct PlanCache {
    std::mutex mu;
    std::map<Key, fftw_plan> plans;

    ~PlanCache() {
        for (auto& [k, p] : plans) fftw_destroy_plan(p);
    }
};

PlanCache& cache() {
    static PlanCache c;
    return c;
}

fftw_plan get_plan(const std::vector<int>& shape, const std::vector<int>& axes, int sign) {
    Key key{shape, axes, sign};
    auto& c = cache();
    std::lock_guard<std::mutex> lock(c.mu);
    if (auto it = c.plans.find(key); it != c.plans.end()) return it->second;

    const int rank = static_cast<int>(shape.size());
    std::vector<int> stride(rank, 1);
    for (int i = rank - 2; i >= 0; --i) stride[i] = stride[i + 1] * shape[i + 1];
    std::vector<bool> is_axis(rank, false);
    for (int a : axes) {
        if (a < 0 || a >= rank) throw std::invalid_argument("fft: axis out of range");
        is_axis[a] = true;
    }
    std::vector<fftw_iodim> dims, loops;
    for (int i = 0; i < rank; ++i) {
        fftw_iodim d{shape[i], stride[i], stride[i]};
        (is_axis[i] ? dims : loops).push_back(d);
    }
    std::size_t total = 1;
    for (int s : shape) total *= static_cast<std::size_t>(s);
    auto* scratch = fftw_alloc_complex(total);
    fftw_plan plan = fftw_plan_guru_dft(
        static_cast<int>(dims.size()), dims.data(), static_cast<int>(loops.size()),
        loops.data(), scratch, scratch, sign < 0 ? FFTW_FORWARD : FFTW_BACKWARD,
        FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(scratch);
    if (!plan) throw std::runtime_error("fft: planning failed");
    c.plans.emplace(std::move(key), plan);
    return plan;
}

}  // namespace

void transform(std::complex<double>* data, const std::vector<int>& shape,
               const std::vector<int>& axes, int sign) {
    if (axes.empty()) return;
    fftw_plan plan = get_plan(shape, axes, sign);
    auto* p = reinterpret_cast<fftw_complex*>(data);
    fftw_execute_dft(plan, p, p);
}

namespace {

// Multiplies each entry by (-1)^(sum of its indices along the listed axes).
void alternate(std::complex<double>* data, const std::vector<int>& shape,
               const std::vector<int>& axes) {
    if (axes.empty()) return;
    const int rank = static_cast<int>(shape.size());
    std::size_t total = 1;
    for (int s : shape) total *= static_cast<std::size_t>(s);
    std::vector<int> idx(rank, 0);
    for (std::size_t i = 0; i < total; ++i) {
        int parity = 0;
        for (int a : axes) parity += idx[a];
        if (parity & 1) data[i] = -data[i];
        for (int d = rank - 1; d >= 0; --d) {
            if (++idx[d] < shape[d]) break;
            idx[d] = 0;
        }
    }
}

}  // namespace

void centered_transform(std::complex<double>* data, const std::vector<int>& shape,
                        const std::vector<int>& axes, int sign, bool in_centered,
                        bool out_centered) {
    // x = xi - h ci, k = ki - h co, h = n/2:
    //   omega^{s x k} = omega^{s xi ki} (-1)^{co xi} (-1)^{ci ki} (-1)^{h ci co}
    if (out_centered) alternate(data, shape, axes);
    transform(data, shape, axes, sign);
    if (in_centered) alternate(data, shape, axes);
    if (in_centered && out_centered) {
        int flips = 0;
        for (int a : axes) flips += shape[a] / 2;
        if (flips & 1) {
            std::size_t total = 1;
            for (int s : shape) total *= static_cast<std::size_t>(s);
            for (std::size_t i = 0; i < total; ++i) data[i] = -data[i];
        }
    }
}

}  // namespace wwmv::fft
