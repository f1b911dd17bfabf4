#ifndef MLCCFP_CFP_HPP
#define MLCCFP_CFP_HPP

#include <array>
#include <cstddef>
#include <optional>

#include "mlccfp/signal.hpp"

namespace mlccfp {

constexpr int kMidiLow = 21;    // A0, 27.5 Hz
constexpr int kMidiHigh = 108;  // C8
constexpr std::size_t kNumBands = 88;

/// CFP representation: product of a frequency-axis layer and a quefrency-axis
/// layer remapped through q = round(N/k). Only bins k in [1, N/2] are
/// populated; the upper half mirrors and stays zero.
struct CfpRepresentation {
    Spectrogram values;       // frequency axis
    std::size_t layer_freq = 0;  // l_e
    std::size_t layer_quef = 0;  // l_o
};

/// 88 quarter-tone bands centered on MIDI pitches 21..108.
struct LogFreqBank {
    std::array<double, kNumBands> centers_hz;
    std::array<double, kNumBands> lo_edge_hz;  // center / 2^(1/24)
    std::array<double, kNumBands> hi_edge_hz;  // center * 2^(1/24)

    static LogFreqBank standard();
};

/// 88 x M salience matrix, row per MIDI pitch 21..108, column-major like
/// Spectrogram.
struct Salience {
    std::vector<double> values;
    std::size_t num_frames = 0;
    double frame_hop_seconds = 0.0;

    double& at(std::size_t band, std::size_t frame) {
        return values[frame * kNumBands + band];
    }
    double at(std::size_t band, std::size_t frame) const {
        return values[frame * kNumBands + band];
    }
    double* frame(std::size_t n) { return values.data() + n * kNumBands; }
    const double* frame(std::size_t n) const { return values.data() + n * kNumBands; }
};

/// round-half-away-from-zero of N/k; nullopt when the result falls outside
/// [0, N) (k = 0 or k too small).
std::optional<std::size_t> quefrency_index(std::size_t k, std::size_t n);

CfpRepresentation fuse(const Spectrogram& z_freq, const Spectrogram& z_quef,
                       std::size_t layer_freq = 0, std::size_t layer_quef = 1);

Salience project_to_bands(const CfpRepresentation& y, const LogFreqBank& bank);

}  // namespace mlccfp

#endif
