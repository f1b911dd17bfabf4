#include "mlccfp/degrade.hpp"

#include <fftw3.h>

#include <cmath>
#include <complex>
#include <numeric>
#include <random>

namespace mlccfp {

void ButterworthSpec::validate(double sample_rate) const {
    if (order < 1) throw std::invalid_argument("ButterworthSpec: order must be >= 1");
    if (cutoff_hz <= 0.0 || cutoff_hz >= sample_rate / 2.0)
        throw std::invalid_argument("ButterworthSpec: cutoff must be inside (0, fs/2)");
}

TimeSeries gen_square(double f0_hz, double duty, double sample_rate, double duration_s) {
    if (duty <= 0.0 || duty >= 1.0) throw std::invalid_argument("gen_square: duty in (0,1)");
    if (f0_hz <= 0.0 || f0_hz >= sample_rate / 2.0)
        throw std::invalid_argument("gen_square: f0 must be inside (0, fs/2)");
    const auto count = static_cast<std::size_t>(std::llround(duration_s * sample_rate));
    TimeSeries out;
    out.sample_rate = sample_rate;
    out.samples.resize(count);
    for (std::size_t n = 0; n < count; ++n) {
        const double phase = std::fmod(f0_hz * static_cast<double>(n) / sample_rate, 1.0);
        // small guard so rounding in fmod cannot flip samples at the exact
        // duty-cycle boundary
        out.samples[n] = (phase + 1e-9 < duty) ? 1.0 : -1.0;
    }
    return out;
}

TimeSeries gen_fm_sawtooth(const std::function<double(std::size_t)>& f0_law,
                           double sample_rate, double duration_s) {
    const auto count = static_cast<std::size_t>(std::llround(duration_s * sample_rate));
    TimeSeries out;
    out.sample_rate = sample_rate;
    out.samples.resize(count);
    double cycles = 0.0;  // accumulated phase / 2pi
    for (std::size_t n = 0; n < count; ++n) {
        const double f0 = f0_law(n);
        if (f0 <= 0.0) throw std::invalid_argument("gen_fm_sawtooth: non-positive f0");
        cycles += f0 / sample_rate;  // left-Riemann accumulation
        const double frac = cycles - std::floor(cycles);
        out.samples[n] = 2.0 * frac - 1.0;
    }
    return out;
}

namespace {

// One direct-form-II-transposed biquad (b0 + b1 z^-1 + b2 z^-2) /
// (1 + a1 z^-1 + a2 z^-2). First-order sections set b2 = a2 = 0.
struct Biquad {
    double b0, b1, b2, a1, a2;
};

// Bilinear transform of (b2 s^2 + b1 s + b0) / (s^2 + a1 s + a0) with
// s = (1 - z^-1) / (1 + z^-1).
Biquad bilinear2(double b2, double b1, double b0, double a1, double a0) {
    const double d0 = 1.0 + a1 + a0;
    Biquad q;
    q.b0 = (b2 + b1 + b0) / d0;
    q.b1 = (-2.0 * b2 + 2.0 * b0) / d0;
    q.b2 = (b2 - b1 + b0) / d0;
    q.a1 = (-2.0 + 2.0 * a0) / d0;
    q.a2 = (1.0 - a1 + a0) / d0;
    return q;
}

// Bilinear transform of (b1 s + b0) / (s + a0).
Biquad bilinear1(double b1, double b0, double a0) {
    const double d0 = 1.0 + a0;
    Biquad q;
    q.b0 = (b1 + b0) / d0;
    q.b1 = (b0 - b1) / d0;
    q.b2 = 0.0;
    q.a1 = (a0 - 1.0) / d0;
    q.a2 = 0.0;
    return q;
}

bool biquad_stable(const Biquad& q) {
    // Roots of z^2 + a1 z + a2 inside the unit circle.
    const std::complex<double> disc = std::sqrt(std::complex<double>(q.a1 * q.a1 - 4.0 * q.a2));
    const std::complex<double> r1 = (-q.a1 + disc) / 2.0;
    const std::complex<double> r2 = (-q.a1 - disc) / 2.0;
    const double margin = 1.0 - 1e-9;
    return std::abs(r1) < margin && std::abs(r2) < margin;
}

std::vector<Biquad> design_butterworth(const ButterworthSpec& spec, double sample_rate) {
    spec.validate(sample_rate);
    const int order = spec.order;
    const double warped = std::tan(M_PI * spec.cutoff_hz / sample_rate);

    std::vector<Biquad> sections;
    // Conjugate analog prototype pole pairs on the unit circle, LHP.
    for (int k = 0; k < order / 2; ++k) {
        const double theta = M_PI * (2.0 * k + 1.0) / (2.0 * order) + M_PI / 2.0;
        const std::complex<double> proto = std::polar(1.0, theta);
        std::complex<double> pole =
            (spec.kind == FilterKind::lowpass) ? warped * proto : warped / proto;
        const double a1 = -2.0 * pole.real();
        const double a0 = std::norm(pole);
        Biquad q = (spec.kind == FilterKind::lowpass)
                       ? bilinear2(0.0, 0.0, a0, a1, a0)   // a0 / (s^2 + a1 s + a0)
                       : bilinear2(1.0, 0.0, 0.0, a1, a0); // s^2 / (s^2 + a1 s + a0)
        if (!biquad_stable(q))
            throw std::runtime_error("butterworth: unstable design (cutoff too near Nyquist)");
        sections.push_back(q);
    }
    if (order % 2 == 1) {
        Biquad q = (spec.kind == FilterKind::lowpass) ? bilinear1(0.0, warped, warped)
                                                      : bilinear1(1.0, 0.0, warped);
        if (!biquad_stable(q))
            throw std::runtime_error("butterworth: unstable design (cutoff too near Nyquist)");
        sections.push_back(q);
    }
    return sections;
}

}  // namespace

TimeSeries butterworth_apply(const TimeSeries& x, const ButterworthSpec& spec) {
    x.validate();
    std::vector<Biquad> sections = design_butterworth(spec, x.sample_rate);
    TimeSeries out = x;
    for (const Biquad& q : sections) {
        double s1 = 0.0, s2 = 0.0;
        for (double& v : out.samples) {
            const double in = v;
            const double y = q.b0 * in + s1;
            s1 = q.b1 * in - q.a1 * y + s2;
            s2 = q.b2 * in - q.a2 * y;
            v = y;
        }
    }
    return out;
}

TimeSeries gen_pink(std::size_t num_samples, double sample_rate, std::uint64_t seed) {
    if (num_samples < 1) throw std::invalid_argument("gen_pink: need at least one sample");
    const std::size_t n = num_samples;

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> white(n);
    for (double& v : white) v = gauss(rng);

    if (n >= 4) {
        // Shape the white spectrum by 1/sqrt(k) and transform back.
        double* buf = fftw_alloc_real(n);
        fftw_complex* spec = fftw_alloc_complex(n / 2 + 1);
        fftw_plan fwd = fftw_plan_dft_r2c_1d(static_cast<int>(n), buf, spec, FFTW_ESTIMATE);
        fftw_plan inv = fftw_plan_dft_c2r_1d(static_cast<int>(n), spec, buf, FFTW_ESTIMATE);
        std::copy(white.begin(), white.end(), buf);
        fftw_execute(fwd);
        spec[0][0] = spec[0][1] = 0.0;  // zero mean
        for (std::size_t k = 1; k <= n / 2; ++k) {
            const double g = 1.0 / std::sqrt(static_cast<double>(k));
            spec[k][0] *= g;
            spec[k][1] *= g;
        }
        fftw_execute(inv);
        for (std::size_t i = 0; i < n; ++i) white[i] = buf[i] / static_cast<double>(n);
        fftw_destroy_plan(fwd);
        fftw_destroy_plan(inv);
        fftw_free(buf);
        fftw_free(spec);
    }

    // Standardize to zero mean, unit variance.
    const double mean = std::accumulate(white.begin(), white.end(), 0.0) / static_cast<double>(n);
    double var = 0.0;
    for (double v : white) var += (v - mean) * (v - mean);
    var /= static_cast<double>(n);
    const double scale = (var > 0.0) ? 1.0 / std::sqrt(var) : 1.0;

    TimeSeries out;
    out.sample_rate = sample_rate;
    out.samples.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.samples[i] = (white[i] - mean) * scale;
    return out;
}

namespace {
double mean_square(const std::vector<double>& v) {
    double acc = 0.0;
    for (double s : v) acc += s * s;
    return acc / static_cast<double>(v.size());
}
}  // namespace

TimeSeries mix_at_snr(const TimeSeries& signal, const TimeSeries& noise, double snr_db) {
    if (signal.samples.size() != noise.samples.size() ||
        signal.sample_rate != noise.sample_rate)
        throw std::invalid_argument("mix_at_snr: signal/noise length or rate mismatch");
    const double p_sig = mean_square(signal.samples);
    const double p_noise = mean_square(noise.samples);
    if (p_sig <= 0.0 || p_noise <= 0.0)
        throw std::invalid_argument("mix_at_snr: zero-power signal or noise");
    const double alpha = std::sqrt(p_sig / (p_noise * std::pow(10.0, snr_db / 10.0)));
    TimeSeries out = signal;
    for (std::size_t i = 0; i < out.samples.size(); ++i)
        out.samples[i] += alpha * noise.samples[i];
    return out;
}

TimeSeries add_impulse(const TimeSeries& x, double at_seconds, double amplitude) {
    if (at_seconds < 0.0 || at_seconds >= x.duration_seconds())
        throw std::invalid_argument("add_impulse: time outside signal");
    TimeSeries out = x;
    const auto idx = static_cast<std::size_t>(std::llround(at_seconds * x.sample_rate));
    out.samples[std::min(idx, out.samples.size() - 1)] += amplitude;
    return out;
}

TimeSeries apply_degradation(const TimeSeries& x, const DegradeSpec& spec) {
    TimeSeries out = x;
    if (spec.filter) out = butterworth_apply(out, *spec.filter);
    if (spec.pink_snr_db) {
        TimeSeries pink = gen_pink(out.samples.size(), out.sample_rate, spec.seed);
        out = mix_at_snr(out, pink, *spec.pink_snr_db);
    }
    if (spec.impulse_at_seconds) {
        double amp = spec.impulse_amplitude;
        if (amp == 0.0) {
            for (double s : x.samples) amp = std::max(amp, std::abs(s));
            amp *= 10.0;
        }
        out = add_impulse(out, *spec.impulse_at_seconds, amp);
    }
    return out;
}

double recipe_saw_f0(const SimulationRecipe& recipe, double sample_index) {
    const double mod_period_samples = recipe.saw_mod_period_s * recipe.sample_rate;
    return recipe.saw_f0_base_hz +
           recipe.saw_f0_depth_hz * std::cos(2.0 * M_PI * sample_index / mod_period_samples);
}

SimulationSignals build_simulation(const SimulationRecipe& recipe) {
    SimulationSignals sig;
    TimeSeries square =
        gen_square(recipe.square_f0_hz, recipe.square_duty, recipe.sample_rate, recipe.duration_s);
    TimeSeries saw = gen_fm_sawtooth(
        [&recipe](std::size_t n) { return recipe_saw_f0(recipe, static_cast<double>(n)); },
        recipe.sample_rate, recipe.duration_s);

    ButterworthSpec lp{recipe.butter_order, recipe.butter_cutoff_hz, FilterKind::lowpass};
    ButterworthSpec hp{recipe.butter_order, recipe.butter_cutoff_hz, FilterKind::highpass};
    sig.x1 = butterworth_apply(square, lp);
    sig.x2 = butterworth_apply(saw, hp);

    sig.clean = sig.x1;
    for (std::size_t i = 0; i < sig.clean.samples.size(); ++i)
        sig.clean.samples[i] += sig.x2.samples[i];

    DegradeSpec noise;
    noise.pink_snr_db = recipe.pink_snr_db;
    noise.impulse_at_seconds = recipe.impulse_at_seconds;
    noise.impulse_amplitude = recipe.impulse_amplitude;
    noise.seed = recipe.seed;
    sig.noisy = apply_degradation(sig.clean, noise);
    return sig;
}

}  // namespace mlccfp
