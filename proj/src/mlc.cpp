#include "mlccfp/mlc.hpp"

#include <cmath>

#include "mlccfp/parallel.hpp"

namespace mlccfp {

std::size_t MlcConfig::freq_cutoff_index(double sample_rate) const {
    return static_cast<std::size_t>(
        std::llround(cutoff_frequency_hz * static_cast<double>(window.dft_size) / sample_rate));
}

std::size_t MlcConfig::quef_cutoff_index(double sample_rate) const {
    return static_cast<std::size_t>(std::llround(cutoff_quefrency_s * sample_rate));
}

void MlcConfig::validate(double sample_rate) const {
    window.validate();
    if (gammas.empty())
        throw std::invalid_argument("MlcConfig: need at least gamma_0");
    if (num_layers() > kMaxLayers)
        throw std::invalid_argument("MlcConfig: too many layers");
    for (double g : gammas)
        if (g <= 0.0) throw std::invalid_argument("MlcConfig: gamma must be > 0");
    const std::size_t n = window.dft_size;
    if (2 * freq_cutoff_index(sample_rate) >= n)
        throw std::invalid_argument("MlcConfig: cutoff_frequency_hz maps to k_c >= N/2");
    if (num_layers() >= 1 && 2 * quef_cutoff_index(sample_rate) >= n)
        throw std::invalid_argument("MlcConfig: cutoff_quefrency_s maps to n_c >= N/2");
}

Spectrogram compute_layer0(const Spectrogram& magnitudes, double gamma0) {
    if (magnitudes.axis != Axis::frequency)
        throw std::invalid_argument("compute_layer0: expected frequency-axis input");
    Spectrogram out = magnitudes;
    power_activation(out, gamma0);
    return out;
}

Spectrogram compute_next_layer(const Spectrogram& prev, const LayerParams& params) {
    const std::size_t n = prev.num_bins;
    if (params.gamma <= 0.0)
        throw std::invalid_argument("compute_next_layer: gamma must be > 0");

    std::vector<std::uint8_t> mask;
    if (params.cutoff_index) mask = highpass_mask(n, *params.cutoff_index);

    Spectrogram out;
    out.num_bins = n;
    out.num_frames = prev.num_frames;
    out.frame_hop_seconds = prev.frame_hop_seconds;
    if (prev.axis == Axis::frequency) {
        out.axis = Axis::quefrency;
        // bin_step flips: f_s/N per bin -> 1/f_s per bin, with f_s = N * prev.bin_step
        out.bin_step = 1.0 / (static_cast<double>(n) * prev.bin_step);
    } else {
        out.axis = Axis::frequency;
        out.bin_step = 1.0 / (static_cast<double>(n) * prev.bin_step);
    }
    out.values.assign(n * prev.num_frames, 0.0);

    parallel_for(prev.num_frames, [&](std::size_t begin, std::size_t end) {
        Fft fft(n);
        std::vector<double> col(n);
        for (std::size_t f = begin; f < end; ++f) {
            fft.real_part(prev.frame(f), col.data());
            if (!mask.empty())
                for (std::size_t i = 0; i < n; ++i)
                    if (!mask[i]) col[i] = 0.0;
            power_activation(col, params.gamma);
            double* dst = out.frame(f);
            for (std::size_t i = 0; i < n; ++i) dst[i] = col[i];
        }
    });
    return out;
}

LayerStack compute_stack_from_magnitudes(const Spectrogram& magnitudes,
                                         const MlcConfig& config, double sample_rate) {
    config.validate(sample_rate);
    const std::size_t k_c = config.freq_cutoff_index(sample_rate);
    const std::size_t n_c = config.quef_cutoff_index(sample_rate);

    LayerStack stack;
    stack.layers.reserve(config.gammas.size());
    stack.layers.push_back(compute_layer0(magnitudes, config.gammas[0]));
    for (std::size_t l = 1; l < config.gammas.size(); ++l) {
        LayerParams params;
        params.gamma = config.gammas[l];
        params.cutoff_index = (l % 2 == 1) ? n_c : k_c;  // by output-axis parity
        stack.layers.push_back(compute_next_layer(stack.layers.back(), params));
    }
    return stack;
}

LayerStack compute_stack(const TimeSeries& x, const MlcConfig& config) {
    config.validate(x.sample_rate);
    Spectrogram mags = stft_magnitude(x, config.window);
    return compute_stack_from_magnitudes(mags, config, x.sample_rate);
}

}  // namespace mlccfp
