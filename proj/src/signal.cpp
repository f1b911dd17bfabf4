#include "mlccfp/signal.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <cstring>
#include <mutex>

namespace mlccfp {

namespace {
// FFTW planner calls are not reentrant.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}
}  // namespace

void TimeSeries::validate() const {
    if (sample_rate <= 0.0)
        throw std::invalid_argument("TimeSeries: sample_rate must be > 0");
    if (samples.empty())
        throw std::invalid_argument("TimeSeries: empty signal");
    for (double s : samples)
        if (!std::isfinite(s))
            throw std::invalid_argument("TimeSeries: non-finite sample");
}

void WindowSpec::validate() const {
    if (window_length == 0 || dft_size == 0)
        throw std::invalid_argument("WindowSpec: zero window or DFT size");
    if (window_length > dft_size)
        throw std::invalid_argument("WindowSpec: window_length > dft_size");
    if (hop == 0)
        throw std::invalid_argument("WindowSpec: hop must be >= 1");
}

std::vector<double> make_window(const WindowSpec& spec) {
    spec.validate();
    const std::size_t len = spec.window_length;
    std::vector<double> w(len, 1.0);
    switch (spec.kind) {
        case WindowKind::rectangular:
            return w;
        case WindowKind::blackman_harris: {
            // 4-term Blackman-Harris, periodic over L-1 (symmetric form).
            const double a0 = 0.35875, a1 = 0.48829, a2 = 0.14128, a3 = 0.01168;
            const double denom = static_cast<double>(len - 1);
            for (std::size_t i = 0; i < len; ++i) {
                const double t = (len == 1) ? 0.0 : static_cast<double>(i) / denom;
                w[i] = a0 - a1 * std::cos(2.0 * M_PI * t) + a2 * std::cos(4.0 * M_PI * t)
                       - a3 * std::cos(6.0 * M_PI * t);
            }
            return w;
        }
    }
    throw std::invalid_argument("make_window: unsupported window kind");
}

Fft::Fft(std::size_t n) : n_(n) {
    if (n < 2) throw std::invalid_argument("Fft: size must be >= 2");
    in_buf_ = fftw_alloc_real(n);
    out_buf_ = fftw_alloc_complex(n / 2 + 1);
    std::lock_guard<std::mutex> lock(planner_mutex());
    plan_ = fftw_plan_dft_r2c_1d(static_cast<int>(n), in_buf_,
                                 static_cast<fftw_complex*>(out_buf_), FFTW_ESTIMATE);
    if (!plan_) throw std::runtime_error("Fft: planner failed");
}

Fft::~Fft() {
    if (plan_) {
        std::lock_guard<std::mutex> lock(planner_mutex());
        fftw_destroy_plan(static_cast<fftw_plan>(plan_));
    }
    fftw_free(in_buf_);
    fftw_free(out_buf_);
}

void Fft::execute(const double* in) {
    std::memcpy(in_buf_, in, n_ * sizeof(double));
    fftw_execute(static_cast<fftw_plan>(plan_));
}

void Fft::magnitude(const double* in, double* out) {
    execute(in);
    const auto* spec = static_cast<fftw_complex*>(out_buf_);
    const std::size_t half = n_ / 2;
    for (std::size_t k = 0; k <= half; ++k)
        out[k] = std::hypot(spec[k][0], spec[k][1]);
    // |X[N-k]| = |X[k]| for real input
    for (std::size_t k = half + 1; k < n_; ++k) out[k] = out[n_ - k];
}

void Fft::real_part(const double* in, double* out) {
    execute(in);
    const auto* spec = static_cast<fftw_complex*>(out_buf_);
    const std::size_t half = n_ / 2;
    for (std::size_t k = 0; k <= half; ++k) out[k] = spec[k][0];
    // Re(X[N-k]) = Re(X[k]) for real input
    for (std::size_t k = half + 1; k < n_; ++k) out[k] = out[n_ - k];
}

Spectrogram stft_magnitude(const TimeSeries& x, const WindowSpec& spec) {
    x.validate();
    spec.validate();
    if (x.samples.size() < spec.window_length)
        throw std::invalid_argument("stft_magnitude: signal shorter than one window");

    const std::size_t n = spec.dft_size;
    const std::size_t num_frames =
        (x.samples.size() - spec.window_length) / spec.hop + 1;
    const std::vector<double> win = make_window(spec);

    Spectrogram out;
    out.num_bins = n;
    out.num_frames = num_frames;
    out.axis = Axis::frequency;
    out.bin_step = x.sample_rate / static_cast<double>(n);
    out.frame_hop_seconds = static_cast<double>(spec.hop) / x.sample_rate;
    out.values.assign(n * num_frames, 0.0);

    Fft fft(n);
    std::vector<double> frame(n, 0.0);
    for (std::size_t f = 0; f < num_frames; ++f) {
        const double* src = x.samples.data() + f * spec.hop;
        for (std::size_t m = 0; m < spec.window_length; ++m)
            frame[m] = src[m] * win[m];
        for (std::size_t m = spec.window_length; m < n; ++m) frame[m] = 0.0;
        fft.magnitude(frame.data(), out.frame(f));
    }
    return out;
}

void power_activation(std::vector<double>& values, double gamma) {
    if (gamma <= 0.0)
        throw std::invalid_argument("power_activation: gamma must be > 0");
    if (gamma == 1.0) {
        for (double& v : values)
            if (v <= 0.0) v = 0.0;
        return;
    }
    for (double& v : values) v = (v > 0.0) ? std::pow(v, gamma) : 0.0;
}

void power_activation(Spectrogram& s, double gamma) {
    power_activation(s.values, gamma);
}

std::vector<std::uint8_t> highpass_mask(std::size_t n, std::size_t cutoff_index) {
    if (2 * cutoff_index >= n)
        throw std::invalid_argument("highpass_mask: cutoff_index >= N/2 leaves nothing");
    std::vector<std::uint8_t> mask(n, 0);
    for (std::size_t i = cutoff_index + 1; i < n - cutoff_index; ++i) mask[i] = 1;
    return mask;
}

std::vector<double> real_dft(const std::vector<double>& v) {
    if (v.size() < 2) throw std::invalid_argument("real_dft: length must be >= 2");
    Fft fft(v.size());
    std::vector<double> out(v.size());
    fft.real_part(v.data(), out.data());
    return out;
}

}  // namespace mlccfp
