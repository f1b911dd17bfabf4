#ifndef MLCCFP_PIPELINE_HPP
#define MLCCFP_PIPELINE_HPP

#include "mlccfp/cfp.hpp"
#include "mlccfp/eval.hpp"
#include "mlccfp/mlc.hpp"

namespace mlccfp {

/// Last frequency-axis / quefrency-axis layer indices for an L-layer stack:
/// (L, L-1) when L is even, (L-1, L) when L is odd.
std::pair<std::size_t, std::size_t> fusion_pair(std::size_t num_layers);

CfpRepresentation fuse_stack(const LayerStack& stack);

Salience salience_from_stack(const LayerStack& stack, const LogFreqBank& bank);

Salience compute_salience(const TimeSeries& x, const MlcConfig& config,
                          const LogFreqBank& bank);

/// Salience restricted to a subset of frame columns of a precomputed
/// magnitude spectrogram (column order follows `frames`).
Salience compute_salience_frames(const Spectrogram& magnitudes, const MlcConfig& config,
                                 double sample_rate, const LogFreqBank& bank,
                                 const std::vector<std::size_t>& frames);

}  // namespace mlccfp

#endif
