// Independent test oracles. Everything here is deliberately implemented
// through a different route than the library code it checks.
#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <vector>

namespace oracle {

// Characteristic polynomial of a real 4x4 via the Faddeev-LeVerrier
// recursion: p(s) = s^4 + c3 s^3 + c2 s^2 + c1 s + c0.
inline std::array<double, 4> char_poly_4(const std::array<std::array<double, 4>, 4>& A) {
    auto mul = [](const std::array<std::array<double, 4>, 4>& X,
                  const std::array<std::array<double, 4>, 4>& Y) {
        std::array<std::array<double, 4>, 4> Z{};
        for (int i = 0; i < 4; ++i)
            for (int k = 0; k < 4; ++k)
                for (int j = 0; j < 4; ++j) Z[i][j] += X[i][k] * Y[k][j];
        return Z;
    };
    auto trace = [](const std::array<std::array<double, 4>, 4>& X) {
        return X[0][0] + X[1][1] + X[2][2] + X[3][3];
    };
    std::array<std::array<double, 4>, 4> M{};
    for (int i = 0; i < 4; ++i) M[i][i] = 1.0; // M1 = I
    std::array<double, 4> c{};                 // c[k] multiplies s^k
    double cn = 1.0;
    std::array<std::array<double, 4>, 4> AM = A;
    // iteration: c_{n-k} = -tr(A M_k)/k, M_{k+1} = A M_k + c_{n-k} I
    double coeff3 = -trace(AM) / 1.0;
    for (int i = 0; i < 4; ++i) AM[i][i] += coeff3;
    auto M2 = AM;
    AM = mul(A, M2);
    double coeff2 = -trace(AM) / 2.0;
    for (int i = 0; i < 4; ++i) AM[i][i] += coeff2;
    auto M3 = AM;
    AM = mul(A, M3);
    double coeff1 = -trace(AM) / 3.0;
    for (int i = 0; i < 4; ++i) AM[i][i] += coeff1;
    auto M4 = AM;
    AM = mul(A, M4);
    double coeff0 = -trace(AM) / 4.0;
    (void)cn;
    (void)M;
    c = {coeff0, coeff1, coeff2, coeff3};
    return c; // p(s) = s^4 + c[3] s^3 + c[2] s^2 + c[1] s + c[0]
}

// Durand-Kerner simultaneous root iteration for the quartic
// s^4 + c3 s^3 + c2 s^2 + c1 s + c0.
inline std::array<std::complex<double>, 4> quartic_roots(const std::array<double, 4>& c) {
    using C = std::complex<double>;
    const auto p = [&](C s) {
        return ((s + c[3]) * s + c[2]) * s * s + c[1] * s + c[0];
    };
    std::array<C, 4> r;
    const C seed(0.4, 0.9); // standard non-real starting point
    r[0] = seed;
    for (int i = 1; i < 4; ++i) r[i] = r[i - 1] * seed;
    for (int it = 0; it < 500; ++it) {
        double step = 0.0;
        for (int i = 0; i < 4; ++i) {
            C denom(1.0, 0.0);
            for (int j = 0; j < 4; ++j) {
                if (j != i) denom *= (r[i] - r[j]);
            }
            const C d = p(r[i]) / denom;
            r[i] -= d;
            step = std::max(step, std::abs(d));
        }
        if (step < 1e-14) break;
    }
    return r;
}

// Trapezoid quadrature of |G(i 2 pi f)|^2 for the vertical Dryden filter,
// unit two-sided white-noise PSD; the stationary-variance oracle.
inline double dryden_variance_quadrature(double sigma_w, double L_w, double u1, double f_max,
                                         int n) {
    const double K = sigma_w * std::sqrt(L_w / (3.14159265358979323846 * u1));
    const double T = L_w / u1;
    auto g2 = [&](double f) {
        const double w = 2.0 * 3.14159265358979323846 * f;
        const double tw2 = T * T * w * w;
        return K * K * (1.0 + 3.0 * tw2) / ((1.0 + tw2) * (1.0 + tw2));
    };
    double sum = 0.5 * (g2(0.0) + g2(f_max));
    for (int i = 1; i < n; ++i) sum += g2(f_max * i / n);
    return 2.0 * sum * (f_max / n); // two-sided
}

// Closed-form 2x2 lift/moment trim balance (no drag, thrust through CG):
//   cL0 + cLa a + cLde d = W / (qbar S),  cm0 + cma a + cmde d = 0.
struct TrimOracle {
    double alpha;
    double deltaE;
};

inline TrimOracle trim_2x2(double cL0, double cLa, double cLde, double cm0, double cma,
                           double cmde, double weight, double qbarS) {
    const double b1 = weight / qbarS - cL0;
    const double b2 = -cm0;
    const double det = cLa * cmde - cLde * cma;
    return {(b1 * cmde - cLde * b2) / det, (cLa * b2 - b1 * cma) / det};
}

} // namespace oracle
