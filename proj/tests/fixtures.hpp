// Shared synthetic-piece builders for the search and acceptance suites.
#ifndef MLCCFP_TESTS_FIXTURES_HPP
#define MLCCFP_TESTS_FIXTURES_HPP

#include <cmath>
#include <vector>

#include "mlccfp/eval.hpp"
#include "mlccfp/search.hpp"
#include "mlccfp/signal.hpp"

namespace fixtures {

struct Note {
    int midi;
    double start_s;
    double end_s;
};

/// Sum of harmonic tones with 1/h amplitude rolloff, harmonics up to
/// max_harmonic_hz.
inline mlccfp::TimeSeries render_notes(const std::vector<Note>& notes, double fs,
                                       double duration_s, double max_harmonic_hz) {
    mlccfp::TimeSeries x;
    x.sample_rate = fs;
    x.samples.assign(static_cast<std::size_t>(std::llround(duration_s * fs)), 0.0);
    for (const Note& note : notes) {
        const double f0 = mlccfp::midi_to_hz(note.midi);
        const auto begin = static_cast<std::size_t>(std::llround(note.start_s * fs));
        const auto end = std::min(x.samples.size(),
                                  static_cast<std::size_t>(std::llround(note.end_s * fs)));
        for (int h = 1; h * f0 < max_harmonic_hz; ++h) {
            const double amp = 1.0 / h;
            const double w = 2.0 * M_PI * h * f0 / fs;
            // fixed per-harmonic phase offset so partials do not all align
            const double phase0 = 0.37 * h * note.midi;
            for (std::size_t n = begin; n < end; ++n)
                x.samples[n] += amp * std::sin(w * static_cast<double>(n - begin) + phase0);
        }
    }
    return x;
}

inline mlccfp::PianoRoll roll_from_notes(const std::vector<Note>& notes,
                                         double hop_seconds, std::size_t num_frames) {
    mlccfp::PianoRoll roll = mlccfp::PianoRoll::empty(num_frames, hop_seconds);
    for (const Note& note : notes) {
        for (std::size_t f = 0; f < num_frames; ++f) {
            const double t = static_cast<double>(f) * hop_seconds;
            if (t >= note.start_s && t < note.end_s)
                roll.set(static_cast<std::size_t>(note.midi - mlccfp::kMidiLow), f, true);
        }
    }
    return roll;
}

inline mlccfp::SearchPiece make_piece(const std::string& id, const std::vector<Note>& notes,
                                      double fs, double duration_s,
                                      const mlccfp::MlcConfig& tmpl,
                                      double max_harmonic_hz = 0.0) {
    if (max_harmonic_hz <= 0.0) max_harmonic_hz = 0.45 * fs;
    mlccfp::TimeSeries audio = render_notes(notes, fs, duration_s, max_harmonic_hz);
    mlccfp::SearchPiece piece;
    piece.id = id;
    piece.sample_rate = fs;
    piece.magnitudes = mlccfp::stft_magnitude(audio, tmpl.window);
    piece.truth = roll_from_notes(notes, piece.magnitudes.frame_hop_seconds,
                                  piece.magnitudes.num_frames);
    return piece;
}

/// Small analysis setup for fast tests: 4 kHz audio, 1024-point DFT.
inline mlccfp::MlcConfig small_config(std::size_t num_layers = 1) {
    mlccfp::MlcConfig cfg;
    cfg.window = mlccfp::WindowSpec{mlccfp::WindowKind::blackman_harris, 1024, 1024, 40};
    cfg.gammas.assign(num_layers + 1, 1.0);
    cfg.cutoff_frequency_hz = 27.5;
    cfg.cutoff_quefrency_s = 0.00024;
    return cfg;
}

}  // namespace fixtures

#endif
