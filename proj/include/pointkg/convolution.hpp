#pragma once

#include <memory>
#include <span>
#include <vector>

#include "pointkg/specfun.hpp"

namespace pointkg {

enum class ConvMode { naive, blocked_fft };

/// Product-trapezoid weights for int_0^{t_n} K(s) z(t_n - s) ds with z
/// piecewise linear on the grid t_k = k h:
///   a[k] = int_{kh}^{(k+1)h} K(s) (1 - (s - kh)/h) ds
///   b[k] = int_{kh}^{(k+1)h} K(s) (s - kh)/h ds
///   c[j] = a[j] + b[j-1]  (c[0] = 0)
/// so that C_n = a[0] z_n + sum_{j=1}^{n} c[j] z_{n-j} - a[n] z_0.
struct TrapezoidWeights {
    double h = 0.0;
    std::vector<double> a;
    std::vector<double> b;
    std::vector<double> c;
};

/// Weights for intervals k = 0..count-1.
[[nodiscard]] TrapezoidWeights trapezoid_weights(double h, std::size_t count, Mass m);

/// C_n from samples z_0..z_n by direct summation.
[[nodiscard]] cplx trapezoid_convolution(const TrapezoidWeights& w, std::span<const cplx> z,
                                         std::size_t n);

/// Online evaluation of H_n = sum_{j=1}^{n} c[j] z_{n-j} while samples arrive
/// one at a time. The blocked mode splits the history into dyadic blocks and
/// adds each finished block to the future in one FFT product, costing
/// O(N log^2 N) in total instead of O(N^2).
class HistoryConvolution {
public:
    HistoryConvolution(std::vector<double> c, ConvMode mode, std::size_t capacity);
    ~HistoryConvolution();
    HistoryConvolution(const HistoryConvolution&) = delete;
    HistoryConvolution& operator=(const HistoryConvolution&) = delete;

    /// H_n; requires samples z_0..z_{n-1} to have been pushed.
    [[nodiscard]] cplx history(std::size_t n) const;
    void push(cplx z);
    [[nodiscard]] std::size_t size() const noexcept { return z_.size(); }

private:
    struct Fft;
    void flush_blocks();

    std::vector<double> c_;
    ConvMode mode_;
    std::size_t capacity_;
    std::vector<cplx> z_;
    std::vector<cplx> far_;  // block contributions from outside the current leaf
    std::unique_ptr<Fft> fft_;
};

/// Leaf size of the blocked mode; pairs inside one leaf are summed directly.
inline constexpr std::size_t kConvolutionLeaf = 64;

}  // namespace pointkg
