#pragma once

#include <complex>
#include <vector>

namespace wwmv::fft {

// In-place unnormalized DFT over the given axes of a row-major array.
// sign = -1 computes sum_x f(x) exp(-2 pi i k x / n), sign = +1 the conjugate kernel.
// Plans are cached; execution is safe from several threads.
void transform(std::complex<double>* data, const std::vector<int>& shape,
               const std::vector<int>& axes, int sign);

inline void transform_all(std::complex<double>* data, const std::vector<int>& shape,
                          int sign) {
    std::vector<int> axes(shape.size());
    for (std::size_t i = 0; i < axes.size(); ++i) axes[i] = static_cast<int>(i);
    transform(data, shape, axes, sign);
}

// DFT with optionally centered index ranges. Along every listed axis computes
//   out(k) = sum_x in(x) exp(sign 2 pi i x k / n)
// where x (resp. k) runs over [-n/2, n/2) stored at slot x + n/2 when
// in_centered (resp. out_centered), and over [0, n) otherwise.
void centered_transform(std::complex<double>* data, const std::vector<int>& shape,
                        const std::vector<int>& axes, int sign, bool in_centered,
                        bool out_centered);

}  // namespace wwmv::fft
