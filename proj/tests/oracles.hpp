// Independent reference implementations used only by tests. These must stay
// free of the library's FFT/filter code paths.
#ifndef MLCCFP_TESTS_ORACLES_HPP
#define MLCCFP_TESTS_ORACLES_HPP

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

namespace oracles {

/// O(N^2) complex DFT, forward, unnormalized.
inline std::vector<std::complex<double>> naive_dft(const std::vector<double>& v) {
    const std::size_t n = v.size();
    std::vector<std::complex<double>> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        std::complex<double> acc = 0.0;
        for (std::size_t m = 0; m < n; ++m) {
            const double angle = -2.0 * M_PI * static_cast<double>(k) *
                                 static_cast<double>(m) / static_cast<double>(n);
            acc += v[m] * std::complex<double>(std::cos(angle), std::sin(angle));
        }
        out[k] = acc;
    }
    return out;
}

/// Circular autocorrelation r[q] = sum_m v[m] v[(m+q) mod N].
inline std::vector<double> circular_acf(const std::vector<double>& v) {
    const std::size_t n = v.size();
    std::vector<double> r(n, 0.0);
    for (std::size_t q = 0; q < n; ++q)
        for (std::size_t m = 0; m < n; ++m) r[q] += v[m] * v[(m + q) % n];
    return r;
}

/// Direct evaluation of the published 4-term Blackman-Harris coefficients.
inline std::vector<double> blackman_harris_direct(std::size_t len) {
    std::vector<double> w(len);
    for (std::size_t i = 0; i < len; ++i) {
        const double x = 2.0 * M_PI * static_cast<double>(i) / static_cast<double>(len - 1);
        w[i] = 0.35875 - 0.48829 * std::cos(x) + 0.14128 * std::cos(2.0 * x) -
               0.01168 * std::cos(3.0 * x);
    }
    return w;
}

/// Steady-state amplitude of a (possibly filtered) sine: sqrt(2 * mean square)
/// over the trailing portion, an integer number of cycles long.
inline double tail_amplitude(const std::vector<double>& y, double sample_rate,
                             double probe_hz, double tail_fraction = 0.25) {
    const double period = sample_rate / probe_hz;
    const std::size_t want = static_cast<std::size_t>(y.size() * tail_fraction);
    const std::size_t cycles = std::max<std::size_t>(1, static_cast<std::size_t>(want / period));
    const std::size_t len = static_cast<std::size_t>(std::lround(cycles * period));
    double acc = 0.0;
    for (std::size_t i = y.size() - len; i < y.size(); ++i) acc += y[i] * y[i];
    return std::sqrt(2.0 * acc / static_cast<double>(len));
}

/// Welch-averaged periodogram with a Hann window, 50% overlap. Returns
/// (frequency, power density) pairs for bins 1..nfft/2.
inline std::vector<std::pair<double, double>> welch_psd(const std::vector<double>& x,
                                                        double sample_rate,
                                                        std::size_t nfft) {
    std::vector<double> window(nfft);
    double win_power = 0.0;
    for (std::size_t i = 0; i < nfft; ++i) {
        window[i] = 0.5 - 0.5 * std::cos(2.0 * M_PI * i / static_cast<double>(nfft - 1));
        win_power += window[i] * window[i];
    }
    std::vector<double> power(nfft / 2 + 1, 0.0);
    std::size_t segments = 0;
    for (std::size_t start = 0; start + nfft <= x.size(); start += nfft / 2) {
        std::vector<double> seg(nfft);
        for (std::size_t i = 0; i < nfft; ++i) seg[i] = x[start + i] * window[i];
        auto spec = naive_dft(seg);
        for (std::size_t k = 0; k <= nfft / 2; ++k) power[k] += std::norm(spec[k]);
        ++segments;
    }
    std::vector<std::pair<double, double>> psd;
    for (std::size_t k = 1; k <= nfft / 2; ++k)
        psd.emplace_back(static_cast<double>(k) * sample_rate / static_cast<double>(nfft),
                         power[k] / (static_cast<double>(segments) * win_power * sample_rate));
    return psd;
}

/// Least-squares slope of dB-vs-log10(frequency) over [f_lo, f_hi].
inline double psd_slope_db_per_decade(const std::vector<std::pair<double, double>>& psd,
                                      double f_lo, double f_hi) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t count = 0;
    for (const auto& [f, p] : psd) {
        if (f < f_lo || f > f_hi || p <= 0.0) continue;
        const double lx = std::log10(f);
        const double ly = 10.0 * std::log10(p);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
        ++count;
    }
    const double n = static_cast<double>(count);
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace oracles

#endif
