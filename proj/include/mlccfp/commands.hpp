#ifndef MLCCFP_COMMANDS_HPP
#define MLCCFP_COMMANDS_HPP

#include <string>

#include "mlccfp/config.hpp"
#include "mlccfp/eval.hpp"
#include "mlccfp/search.hpp"

namespace mlccfp {

struct EvalReport {
    EvalCounts counts;
    Scores score;
};

/// Writes x1.wav, x2.wav, x.wav, x_noisy.wav under out_dir.
void run_synth(const RunConfig& cfg, const std::string& out_dir);

void run_degrade(const RunConfig& cfg, const std::string& in_wav, const std::string& out_wav);

/// Layer CSVs z0.csv..zL.csv plus cfp.csv and salience.csv under out_dir.
void run_analyze(const RunConfig& cfg, const std::string& in_wav, const std::string& out_dir);

/// Analysis plus peak picking: predictions.txt and pianoroll.csv.
void run_estimate(const RunConfig& cfg, const std::string& in_wav, const std::string& out_dir);

/// Both files in the annotation text format; the prediction file fixes the
/// frame grid. Writes counts.csv when out_dir is non-empty.
EvalReport run_eval(const RunConfig& cfg, const std::string& predictions_path,
                    const std::string& truth_path, const std::string& out_dir);

/// mode: brute | greedy | sgd. Dataset dir pairs X.wav with X.txt.
/// Writes results.csv and summary.txt under out_dir.
EvalReport run_search(const RunConfig& cfg, const std::string& mode,
                      const std::string& dataset_dir, const std::string& out_dir);

}  // namespace mlccfp

#endif
