#pragma once

#include <complex>

namespace pointkg {

using cplx = std::complex<double>;

/// Mass parameter of the Klein-Gordon operator (wave speed is 1, so m is an
/// inverse length and also the edge of the spectral gap [-m, m]).
class Mass {
public:
    explicit Mass(double m);
    [[nodiscard]] double value() const noexcept { return m_; }
    operator double() const noexcept { return m_; }

private:
    double m_;
};

/// J0, J1/x and J2/x^2 at one argument, sharing a single series or
/// asymptotic evaluation. The scaled forms are entire in x^2 and are what the
/// retarded kernels need near the light cone.
struct BesselScaled {
    double j0;
    double j1_over_x;
    double j2_over_x2;
};

/// Power series below kBesselSwitch, Hankel asymptotics above.
inline constexpr double kBesselSwitch = 17.0;

[[nodiscard]] BesselScaled bessel_scaled(double x);
[[nodiscard]] double bessel_j0(double x);
[[nodiscard]] double bessel_j1(double x);

/// Memory kernel K(t) = J1(m t)/t, with K(0) = m/2.
[[nodiscard]] double kernel_K(double t, Mass m);

/// Retarded kernel L(r,t) = theta(t-r) J1(m sqrt(t^2-r^2)) / sqrt(t^2-r^2).
/// On the cone t == r the continuous value m/2 is returned.
[[nodiscard]] double kernel_L(double r, double t, Mass m);

/// d/dt L(r,t) inside the cone (t > r); zero outside.
[[nodiscard]] double kernel_L_dt(double r, double t, Mass m);

/// Yukawa Green's function e^{-m r} / (4 pi r). Throws DomainError at r <= 0.
[[nodiscard]] double green_G(double r, Mass m);

/// Upper-half-plane boundary value of sqrt(omega^2 - m^2).
[[nodiscard]] cplx kappa(double omega, Mass m);

/// Fourier transform of K on the gap |omega| <= m.
[[nodiscard]] cplx K_hat(double omega, Mass m);

/// Fourier transform in t of L(r, .) on the gap, r > 0.
[[nodiscard]] cplx L_hat(double r, double omega, Mass m);

}  // namespace pointkg
