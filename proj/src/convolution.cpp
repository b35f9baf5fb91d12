#include "pointkg/convolution.hpp"

#include <cstring>
#include <map>

#include <fftw3.h>

#include "pointkg/errors.hpp"
#include "pointkg/quadrature.hpp"

namespace pointkg {

TrapezoidWeights trapezoid_weights(double h, std::size_t count, Mass m) {
    if (!(h > 0.0)) throw InputError("trapezoid_weights: step must be positive");
    TrapezoidWeights w;
    w.h = h;
    w.a.resize(count);
    w.b.resize(count);
#pragma omp parallel for schedule(static)
    for (long long k = 0; k < static_cast<long long>(count); ++k) {
        const double lo = static_cast<double>(k) * h;
        const auto gl = gauss_legendre10(lo, lo + h);
        double a = 0.0, b = 0.0;
        for (int i = 0; i < 10; ++i) {
            const double kv = kernel_K(gl.x[i], m) * gl.w[i];
            const double frac = (gl.x[i] - lo) / h;
            a += kv * (1.0 - frac);
            b += kv * frac;
        }
        w.a[k] = a;
        w.b[k] = b;
    }
    w.c.assign(count, 0.0);
    for (std::size_t j = 1; j < count; ++j) w.c[j] = w.a[j] + w.b[j - 1];
    return w;
}

cplx trapezoid_convolution(const TrapezoidWeights& w, std::span<const cplx> z, std::size_t n) {
    if (n >= z.size()) throw InputError("trapezoid_convolution: index beyond samples");
    if (n == 0) return {};
    if (n >= w.a.size()) throw InputError("trapezoid_convolution: not enough weights");
    cplx acc = w.a[0] * z[n];
    for (std::size_t j = 1; j <= n; ++j) acc += w.c[j] * z[n - j];
    return acc - w.a[n] * z[0];
}

// Cached plans, buffers and transformed kernel segments per block size.
struct HistoryConvolution::Fft {
    struct Level {
        std::size_t size = 0;
        fftw_complex* buf = nullptr;
        fftw_plan forward = nullptr;
        fftw_plan backward = nullptr;
        std::vector<cplx> kernel;  // transform of c[0..size)
    };
    std::map<std::size_t, Level> levels;

    ~Fft() {
        for (auto& [n, l] : levels) {
            fftw_destroy_plan(l.forward);
            fftw_destroy_plan(l.backward);
            fftw_free(l.buf);
        }
    }

    Level& level(std::size_t size, const std::vector<double>& c) {
        auto it = levels.find(size);
        if (it != levels.end()) return it->second;
        Level l;
        l.size = size;
        l.buf = fftw_alloc_complex(size);
        // FFTW_ESTIMATE keeps the plan, and hence the rounding, reproducible.
        l.forward = fftw_plan_dft_1d(static_cast<int>(size), l.buf, l.buf, FFTW_FORWARD, FFTW_ESTIMATE);
        l.backward = fftw_plan_dft_1d(static_cast<int>(size), l.buf, l.buf, FFTW_BACKWARD, FFTW_ESTIMATE);
        for (std::size_t i = 0; i < size; ++i) {
            l.buf[i][0] = i < c.size() ? c[i] : 0.0;
            l.buf[i][1] = 0.0;
        }
        l.buf[0][0] = 0.0;
        fftw_execute(l.forward);
        l.kernel.resize(size);
        for (std::size_t i = 0; i < size; ++i) l.kernel[i] = {l.buf[i][0], l.buf[i][1]};
        return levels.emplace(size, std::move(l)).first->second;
    }
};

HistoryConvolution::HistoryConvolution(std::vector<double> c, ConvMode mode, std::size_t capacity)
    : c_(std::move(c)), mode_(mode), capacity_(capacity) {
    if (c_.size() < capacity_) throw InputError("history convolution: kernel shorter than capacity");
    z_.reserve(capacity_);
    if (mode_ == ConvMode::blocked_fft) {
        far_.assign(capacity_, cplx{});
        fft_ = std::make_unique<Fft>();
    }
}

HistoryConvolution::~HistoryConvolution() = default;

cplx HistoryConvolution::history(std::size_t n) const {
    if (n > z_.size()) throw InputError("history convolution: samples missing");
    if (n >= capacity_) throw InputError("history convolution: index beyond capacity");
    cplx acc{};
    if (mode_ == ConvMode::naive) {
        for (std::size_t j = 1; j <= n; ++j) acc += c_[j] * z_[n - j];
        return acc;
    }
    const std::size_t start = (n / kConvolutionLeaf) * kConvolutionLeaf;
    for (std::size_t i = start; i < n; ++i) acc += c_[n - i] * z_[i];
    return far_[n] + acc;
}

void HistoryConvolution::push(cplx z) {
    if (z_.size() >= capacity_) throw InputError("history convolution: capacity exceeded");
    z_.push_back(z);
    if (mode_ == ConvMode::blocked_fft) flush_blocks();
}

// A left-child block [l, l+B) is complete once sample l+B-1 arrives; it then
// contributes to H on [l+B, l+2B) through a circular product of length 2B.
void HistoryConvolution::flush_blocks() {
    const std::size_t done = z_.size();
    for (std::size_t B = kConvolutionLeaf; B <= done; B *= 2) {
        if (done % B != 0 || (done / B) % 2 == 0) continue;
        const std::size_t l = done - B;
        const std::size_t out_lo = l + B;
        if (out_lo >= capacity_) continue;
        const std::size_t P = 2 * B;
        auto& lev = fft_->level(P, c_);
        for (std::size_t i = 0; i < P; ++i) {
            if (i < B) {
                lev.buf[i][0] = z_[l + i].real();
                lev.buf[i][1] = z_[l + i].imag();
            } else {
                lev.buf[i][0] = 0.0;
                lev.buf[i][1] = 0.0;
            }
        }
        fftw_execute(lev.forward);
        for (std::size_t i = 0; i < P; ++i) {
            const cplx v = cplx{lev.buf[i][0], lev.buf[i][1]} * lev.kernel[i];
            lev.buf[i][0] = v.real();
            lev.buf[i][1] = v.imag();
        }
        fftw_execute(lev.backward);
        const double scale = 1.0 / static_cast<double>(P);
        for (std::size_t k = B; k < P && l + k < capacity_; ++k) {
            far_[l + k] += cplx{lev.buf[k][0], lev.buf[k][1]} * scale;
        }
    }
}

}  // namespace pointkg
