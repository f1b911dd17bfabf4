#ifndef MLCCFP_DEGRADE_HPP
#define MLCCFP_DEGRADE_HPP

#include <cstdint>
#include <functional>
#include <optional>

#include "mlccfp/signal.hpp"

namespace mlccfp {

enum class FilterKind { lowpass, highpass };

struct ButterworthSpec {
    int order = 4;
    double cutoff_hz = 0.0;
    FilterKind kind = FilterKind::lowpass;

    void validate(double sample_rate) const;
};

struct DegradeSpec {
    std::optional<ButterworthSpec> filter;
    std::optional<double> pink_snr_db;
    std::optional<double> impulse_at_seconds;
    double impulse_amplitude = 0.0;  // 0 means "10x signal peak"
    std::uint64_t seed = 1;
};

/// Bipolar square wave: +1 while the fractional phase is below duty, else -1.
TimeSeries gen_square(double f0_hz, double duty, double sample_rate, double duration_s);

/// FM sawtooth, positive ramp with vertical drop, phase accumulated from the
/// instantaneous-frequency law (sample index -> Hz).
TimeSeries gen_fm_sawtooth(const std::function<double(std::size_t)>& f0_law,
                           double sample_rate, double duration_s);

/// Causal single-pass Butterworth IIR (bilinear design with prewarping, run
/// as cascaded second-order sections).
TimeSeries butterworth_apply(const TimeSeries& x, const ButterworthSpec& spec);

/// Pink noise by spectral shaping: seeded white Gaussian noise with bin k
/// scaled by 1/sqrt(k). Zero mean, unit variance.
TimeSeries gen_pink(std::size_t num_samples, double sample_rate, std::uint64_t seed);

/// signal + alpha * noise with alpha chosen so the mixed noise power sits
/// snr_db below the signal power (powers as mean squares).
TimeSeries mix_at_snr(const TimeSeries& signal, const TimeSeries& noise, double snr_db);

TimeSeries add_impulse(const TimeSeries& x, double at_seconds, double amplitude);

TimeSeries apply_degradation(const TimeSeries& x, const DegradeSpec& spec);

struct SimulationRecipe {
    double sample_rate = 1000.0;
    double duration_s = 100.0;
    double square_f0_hz = 2.0;
    double square_duty = 0.2;
    double saw_f0_base_hz = 2.5;
    double saw_f0_depth_hz = 1.0;
    double saw_mod_period_s = 10.0;
    int butter_order = 10;
    double butter_cutoff_hz = 10.0;
    double pink_snr_db = 10.0;
    double impulse_at_seconds = 80.0;
    double impulse_amplitude = 0.0;  // 0 means "10x signal peak"
    std::uint64_t seed = 1;
};

struct SimulationSignals {
    TimeSeries x1;      // lowpassed square
    TimeSeries x2;      // highpassed FM sawtooth
    TimeSeries clean;   // x1 + x2
    TimeSeries noisy;   // clean + pink @ SNR + impulse
};

/// Instantaneous F0 of the recipe's sawtooth at a given sample index.
double recipe_saw_f0(const SimulationRecipe& recipe, double sample_index);

SimulationSignals build_simulation(const SimulationRecipe& recipe);

}  // namespace mlccfp

#endif
