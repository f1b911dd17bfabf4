#ifndef MLCCFP_MLC_HPP
#define MLCCFP_MLC_HPP

#include <optional>
#include <vector>

#include "mlccfp/signal.hpp"

namespace mlccfp {

/// Parameters of one layer transition: exponent of the activation and the
/// high-pass cutoff index applied after the DFT. No cutoff disables masking.
struct LayerParams {
    double gamma = 1.0;
    std::optional<std::size_t> cutoff_index;  // k_c or n_c depending on output axis
};

struct MlcConfig {
    WindowSpec window;
    std::vector<double> gammas;       // gamma_0 .. gamma_L, so num_layers = size - 1
    double cutoff_frequency_hz = 27.5;   // f_c, frequency-axis layers
    double cutoff_quefrency_s = 0.00024; // q_c, quefrency-axis layers

    std::size_t num_layers() const { return gammas.empty() ? 0 : gammas.size() - 1; }
    std::size_t freq_cutoff_index(double sample_rate) const;  // k_c
    std::size_t quef_cutoff_index(double sample_rate) const;  // n_c
    void validate(double sample_rate) const;
};

constexpr std::size_t kMaxLayers = 16;

struct LayerStack {
    std::vector<Spectrogram> layers;  // Z^(0) .. Z^(L), axis alternating

    const Spectrogram& layer(std::size_t l) const { return layers.at(l); }
    std::size_t depth() const { return layers.size() - 1; }  // L
};

/// Z^(0): element-wise activation of the magnitude spectrogram, no filtering.
Spectrogram compute_layer0(const Spectrogram& magnitudes, double gamma0);

/// Z^(l) from Z^(l-1): per-column forward DFT (real part), high-pass index
/// mask, power activation. The axis flips frequency <-> quefrency.
Spectrogram compute_next_layer(const Spectrogram& prev, const LayerParams& params);

/// Full stack Z^(0)..Z^(L). Odd layers use the quefrency cutoff n_c, even
/// layers l >= 2 use the frequency cutoff k_c.
LayerStack compute_stack(const TimeSeries& x, const MlcConfig& config);

/// Same recursion on top of an existing Z^(0) magnitude spectrogram.
LayerStack compute_stack_from_magnitudes(const Spectrogram& magnitudes,
                                         const MlcConfig& config, double sample_rate);

}  // namespace mlccfp

#endif
