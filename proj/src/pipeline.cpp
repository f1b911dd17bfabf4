#include "mlccfp/pipeline.hpp"

namespace mlccfp {

std::pair<std::size_t, std::size_t> fusion_pair(std::size_t num_layers) {
    if (num_layers < 1)
        throw std::invalid_argument("fusion_pair: need at least one layer");
    if (num_layers % 2 == 0) return {num_layers, num_layers - 1};
    return {num_layers - 1, num_layers};
}

CfpRepresentation fuse_stack(const LayerStack& stack) {
    const auto [l_e, l_o] = fusion_pair(stack.depth());
    return fuse(stack.layer(l_e), stack.layer(l_o), l_e, l_o);
}

Salience salience_from_stack(const LayerStack& stack, const LogFreqBank& bank) {
    return project_to_bands(fuse_stack(stack), bank);
}

Salience compute_salience(const TimeSeries& x, const MlcConfig& config,
                          const LogFreqBank& bank) {
    return salience_from_stack(compute_stack(x, config), bank);
}

Salience compute_salience_frames(const Spectrogram& magnitudes, const MlcConfig& config,
                                 double sample_rate, const LogFreqBank& bank,
                                 const std::vector<std::size_t>& frames) {
    Spectrogram subset;
    subset.num_bins = magnitudes.num_bins;
    subset.num_frames = frames.size();
    subset.axis = magnitudes.axis;
    subset.bin_step = magnitudes.bin_step;
    subset.frame_hop_seconds = magnitudes.frame_hop_seconds;
    subset.values.resize(subset.num_bins * frames.size());
    for (std::size_t i = 0; i < frames.size(); ++i) {
        const double* src = magnitudes.frame(frames[i]);
        std::copy(src, src + subset.num_bins, subset.frame(i));
    }
    LayerStack stack = compute_stack_from_magnitudes(subset, config, sample_rate);
    return salience_from_stack(stack, bank);
}

}  // namespace mlccfp
