#ifndef MLCCFP_IO_HPP
#define MLCCFP_IO_HPP

#include <string>

#include "mlccfp/cfp.hpp"
#include "mlccfp/eval.hpp"

namespace mlccfp {

/// Layer/CFP dump: rows = bins, columns = frames. Header row carries frame
/// times in seconds; header column carries bin frequencies (Hz) or
/// quefrencies (s).
void write_spectrogram_csv(const std::string& path, const Spectrogram& s);

/// Salience dump: 88 rows keyed by MIDI pitch 21..108, same column layout.
void write_salience_csv(const std::string& path, const Salience& s);

void write_pianoroll_csv(const std::string& path, const PianoRoll& roll);

/// Prediction text: one frame per line, time in seconds then the active F0s
/// in Hz at band centers. Matches the annotation input format.
void write_predictions_txt(const std::string& path, const PianoRoll& roll);

void write_counts_csv(const std::string& path, const EvalCounts& counts,
                      const Scores& s);

}  // namespace mlccfp

#endif
