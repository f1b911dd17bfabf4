#ifndef MLCCFP_EVAL_HPP
#define MLCCFP_EVAL_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "mlccfp/cfp.hpp"

namespace mlccfp {

/// Frame-level pitch activity over MIDI 21..108.
struct PianoRoll {
    std::vector<std::uint8_t> active;  // kNumBands * num_frames, column-major
    std::size_t num_frames = 0;
    double frame_hop_seconds = 0.0;

    bool at(std::size_t band, std::size_t frame) const {
        return active[frame * kNumBands + band] != 0;
    }
    void set(std::size_t band, std::size_t frame, bool on) {
        active[frame * kNumBands + band] = on ? 1 : 0;
    }
    static PianoRoll empty(std::size_t num_frames, double hop_seconds);
};

struct EvalCounts {
    std::uint64_t tp = 0, fp = 0, fn = 0;
    EvalCounts& operator+=(const EvalCounts& o) {
        tp += o.tp;
        fp += o.fp;
        fn += o.fn;
        return *this;
    }
};

struct Scores {
    double precision = 0.0, recall = 0.0, f_score = 0.0;
};

/// Band b is active iff it is a local maximum across bands (one-sided at the
/// edges) and >= threshold_ratio times the frame maximum.
PianoRoll pick_pitches(const Salience& salience, double threshold_ratio);

double hz_to_midi(double freq_hz);
double midi_to_hz(double midi);

struct GroundTruth {
    PianoRoll roll;
    std::size_t dropped_out_of_range = 0;  // pitches outside MIDI 21..108
};

/// Annotation text: one frame per line, time in seconds then active F0s in
/// Hz (or MIDI numbers when midi_fields). Resampled to the analysis hop by
/// nearest-frame lookup.
GroundTruth ingest_ground_truth(const std::string& path, double frame_hop_seconds,
                                std::size_t num_frames, bool midi_fields = false);
GroundTruth parse_ground_truth_lines(const std::vector<std::string>& lines,
                                     double frame_hop_seconds, std::size_t num_frames,
                                     bool midi_fields = false);

EvalCounts evaluate(const PianoRoll& pred, const PianoRoll& truth);

Scores scores(const EvalCounts& counts);

}  // namespace mlccfp

#endif
