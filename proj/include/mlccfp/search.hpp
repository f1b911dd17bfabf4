#ifndef MLCCFP_SEARCH_HPP
#define MLCCFP_SEARCH_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "mlccfp/pipeline.hpp"

namespace mlccfp {

/// One dataset piece prepared for repeated evaluation: the magnitude
/// spectrogram is cached so only the layer recursion reruns per gamma vector.
struct SearchPiece {
    std::string id;
    Spectrogram magnitudes;
    double sample_rate = 0.0;
    PianoRoll truth;
};

SearchPiece prepare_piece(const std::string& id, const TimeSeries& audio,
                          const std::string& annotation_path, const MlcConfig& tmpl,
                          bool midi_fields = false);

/// End-to-end evaluation of one gamma vector over a dataset: stack, fuse,
/// project, pick, count.
EvalCounts evaluate_gammas(const std::vector<SearchPiece>& pieces, const MlcConfig& tmpl,
                           const std::vector<double>& gammas, double threshold_ratio,
                           const LogFreqBank& bank);

struct SearchSpace {
    std::vector<std::vector<double>> grids;  // candidate gammas per layer 0..L

    /// The default grid 0.1..0.9 in steps of 0.1, plus 1.0.
    static std::vector<double> coarse_grid();
    /// 0.01..0.99 step 0.01.
    static std::vector<double> fine_grid();
};

struct ScoredPoint {
    std::vector<double> gammas;
    Scores score;
    EvalCounts counts;
};

struct SearchOutcome {
    std::vector<double> best_gammas;
    Scores best_score;
    EvalCounts best_counts;
    std::vector<ScoredPoint> table;        // every grid point (brute force)
    std::vector<ScoredPoint> layer_trace;  // per-layer best (greedy)
    std::size_t failed_points = 0;
};

SearchOutcome brute_force(const SearchSpace& space, const std::vector<SearchPiece>& pieces,
                          const MlcConfig& tmpl, double threshold_ratio,
                          bool keep_table = true);

/// Layer-wise scan: step l fixes gamma_0..gamma_{l-1} from earlier steps,
/// sets the final layer's gamma to 1, and scans gamma_l over the fine grid
/// maximizing F of the pair (l, l+1).
SearchOutcome greedy(const std::vector<std::vector<double>>& per_layer_grids,
                     const std::vector<SearchPiece>& pieces, const MlcConfig& tmpl,
                     double threshold_ratio);

struct SgdConfig {
    double learning_rate = 0.1;
    std::size_t batch_size = 256;
    std::size_t max_epochs = 40;
    std::vector<double> init_gammas;  // empty: 0.24, 0.6, then 1s
    double fd_step_relative = 1e-3;
    double gamma_min = 0.01, gamma_max = 3.0;
    bool train_gammas = true;  // false: affine output layer only
    std::uint64_t seed = 1;

    std::vector<double> initial_gammas(std::size_t num_layers) const;
};

struct SgdModel {
    std::vector<double> gammas;
    std::array<double, kNumBands> scale;  // a_b
    std::array<double, kNumBands> bias;   // c_b
};

struct SgdFoldResult {
    std::vector<std::size_t> test_pieces;
    SgdModel model;
    EvalCounts counts;
    std::vector<double> epoch_loss;
};

struct SgdOutcome {
    std::vector<SgdFoldResult> folds;
    EvalCounts pooled_counts;
    Scores pooled_score;
};

/// Mean binary cross-entropy of sigmoid(a*s + c) against the roll over the
/// given salience columns.
double sgd_batch_loss(const SgdModel& model, const Salience& salience,
                      const PianoRoll& truth, const std::vector<std::size_t>& truth_frames);

/// Batch loss recomputed end-to-end from the piece's cached magnitudes under
/// the model's gammas.
double sgd_pipeline_loss(const SgdModel& model, const SearchPiece& piece,
                         const MlcConfig& tmpl, const std::vector<std::size_t>& frames);

/// Central-finite-difference gradient of sgd_pipeline_loss with respect to
/// each gamma.
std::vector<double> sgd_gamma_gradient(const SgdModel& model, const SearchPiece& piece,
                                       const MlcConfig& tmpl,
                                       const std::vector<std::size_t>& frames,
                                       double fd_step_relative = 1e-3);

SgdModel sgd_fit(const SgdConfig& config, const std::vector<SearchPiece>& train,
                 const MlcConfig& tmpl, std::size_t num_layers,
                 std::vector<double>* epoch_loss = nullptr);

PianoRoll sgd_predict(const SgdModel& model, const SearchPiece& piece, const MlcConfig& tmpl);

SgdOutcome sgd_train(const SgdConfig& config, const std::vector<SearchPiece>& pieces,
                     const MlcConfig& tmpl, std::size_t num_layers, std::size_t num_folds = 10);

/// Contiguous deterministic partition; each piece lands in exactly one test set.
std::vector<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> kfold_split(
    std::size_t num_pieces, std::size_t k);

void write_search_csv(const std::string& path, const SearchOutcome& outcome);
std::string format_search_summary(const std::string& method, const SearchOutcome& outcome);

}  // namespace mlccfp

#endif
