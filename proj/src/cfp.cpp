#include "mlccfp/cfp.hpp"

#include <cmath>
#include <stdexcept>

namespace mlccfp {

LogFreqBank LogFreqBank::standard() {
    LogFreqBank bank;
    const double quarter_tone = std::pow(2.0, 1.0 / 24.0);
    for (std::size_t b = 0; b < kNumBands; ++b) {
        const int midi = kMidiLow + static_cast<int>(b);
        const double center = 440.0 * std::pow(2.0, (midi - 69) / 12.0);
        bank.centers_hz[b] = center;
        bank.lo_edge_hz[b] = center / quarter_tone;
        bank.hi_edge_hz[b] = center * quarter_tone;
    }
    return bank;
}

std::optional<std::size_t> quefrency_index(std::size_t k, std::size_t n) {
    if (k == 0) return std::nullopt;
    const double q = static_cast<double>(n) / static_cast<double>(k);
    const auto rounded = static_cast<std::size_t>(std::llround(q));  // half away from zero
    if (rounded >= n) return std::nullopt;
    return rounded;
}

CfpRepresentation fuse(const Spectrogram& z_freq, const Spectrogram& z_quef,
                       std::size_t layer_freq, std::size_t layer_quef) {
    if (z_freq.axis != Axis::frequency || z_quef.axis != Axis::quefrency)
        throw std::invalid_argument("fuse: axis mismatch");
    if (z_freq.num_bins != z_quef.num_bins || z_freq.num_frames != z_quef.num_frames)
        throw std::invalid_argument("fuse: shape mismatch");

    const std::size_t n = z_freq.num_bins;
    CfpRepresentation out;
    out.layer_freq = layer_freq;
    out.layer_quef = layer_quef;
    out.values.num_bins = n;
    out.values.num_frames = z_freq.num_frames;
    out.values.axis = Axis::frequency;
    out.values.bin_step = z_freq.bin_step;
    out.values.frame_hop_seconds = z_freq.frame_hop_seconds;
    out.values.values.assign(n * z_freq.num_frames, 0.0);

    // Precompute the quefrency remap for k in [1, N/2].
    std::vector<std::ptrdiff_t> remap(n / 2 + 1, -1);
    for (std::size_t k = 1; k <= n / 2; ++k)
        if (auto q = quefrency_index(k, n)) remap[k] = static_cast<std::ptrdiff_t>(*q);

    for (std::size_t f = 0; f < z_freq.num_frames; ++f) {
        const double* zf = z_freq.frame(f);
        const double* zq = z_quef.frame(f);
        double* y = out.values.frame(f);
        for (std::size_t k = 1; k <= n / 2; ++k)
            if (remap[k] >= 0) y[k] = zf[k] * zq[remap[k]];
    }
    return out;
}

Salience project_to_bands(const CfpRepresentation& y, const LogFreqBank& bank) {
    const Spectrogram& v = y.values;
    const std::size_t n = v.num_bins;
    Salience out;
    out.num_frames = v.num_frames;
    out.frame_hop_seconds = v.frame_hop_seconds;
    out.values.assign(kNumBands * v.num_frames, 0.0);

    // Band membership per frequency bin, bins 1..N/2 only.
    std::vector<std::ptrdiff_t> band_of(n / 2 + 1, -1);
    for (std::size_t k = 1; k <= n / 2; ++k) {
        const double freq = static_cast<double>(k) * v.bin_step;
        for (std::size_t b = 0; b < kNumBands; ++b) {
            if (freq >= bank.lo_edge_hz[b] && freq < bank.hi_edge_hz[b]) {
                band_of[k] = static_cast<std::ptrdiff_t>(b);
                break;
            }
        }
    }

    for (std::size_t f = 0; f < v.num_frames; ++f) {
        const double* src = v.frame(f);
        double* dst = out.frame(f);
        for (std::size_t k = 1; k <= n / 2; ++k)
            if (band_of[k] >= 0) dst[band_of[k]] += src[k];
    }
    return out;
}

}  // namespace mlccfp
