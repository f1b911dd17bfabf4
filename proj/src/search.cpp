#include "mlccfp/search.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numeric>
#include <random>
#include <sstream>

namespace mlccfp {

SearchPiece prepare_piece(const std::string& id, const TimeSeries& audio,
                          const std::string& annotation_path, const MlcConfig& tmpl,
                          bool midi_fields) {
    SearchPiece piece;
    piece.id = id;
    piece.sample_rate = audio.sample_rate;
    piece.magnitudes = stft_magnitude(audio, tmpl.window);
    GroundTruth gt = ingest_ground_truth(annotation_path, piece.magnitudes.frame_hop_seconds,
                                         piece.magnitudes.num_frames, midi_fields);
    piece.truth = std::move(gt.roll);
    return piece;
}

EvalCounts evaluate_gammas(const std::vector<SearchPiece>& pieces, const MlcConfig& tmpl,
                           const std::vector<double>& gammas, double threshold_ratio,
                           const LogFreqBank& bank) {
    EvalCounts total;
    for (const SearchPiece& piece : pieces) {
        MlcConfig cfg = tmpl;
        cfg.gammas = gammas;
        LayerStack stack =
            compute_stack_from_magnitudes(piece.magnitudes, cfg, piece.sample_rate);
        PianoRoll pred = pick_pitches(salience_from_stack(stack, bank), threshold_ratio);
        total += evaluate(pred, piece.truth);
    }
    return total;
}

std::vector<double> SearchSpace::coarse_grid() {
    std::vector<double> g;
    for (int i = 1; i <= 9; ++i) g.push_back(i / 10.0);
    g.push_back(1.0);
    return g;
}

std::vector<double> SearchSpace::fine_grid() {
    std::vector<double> g;
    for (int i = 1; i <= 99; ++i) g.push_back(i / 100.0);
    return g;
}

namespace {

struct DfsState {
    const SearchSpace& space;
    const std::vector<SearchPiece>& pieces;
    const MlcConfig& tmpl;
    double threshold_ratio;
    LogFreqBank bank;
    bool keep_table;
    // layers[p][l] = current Z^(l) of piece p along the DFS path
    std::vector<std::vector<Spectrogram>> layers;
    std::vector<double> gammas;
    SearchOutcome outcome;
    bool have_best = false;
};

void dfs_layer(DfsState& st, std::size_t l) {
    const std::size_t depth = st.space.grids.size() - 1;  // L
    for (double g : st.space.grids[l]) {
        st.gammas.push_back(g);
        bool layer_ok = true;
        try {
            for (std::size_t p = 0; p < st.pieces.size(); ++p) {
                auto& pl = st.layers[p];
                pl.resize(l);
                if (l == 0) {
                    pl.push_back(compute_layer0(st.pieces[p].magnitudes, g));
                } else {
                    LayerParams params;
                    params.gamma = g;
                    params.cutoff_index = (l % 2 == 1)
                        ? st.tmpl.quef_cutoff_index(st.pieces[p].sample_rate)
                        : st.tmpl.freq_cutoff_index(st.pieces[p].sample_rate);
                    pl.push_back(compute_next_layer(pl.back(), params));
                }
            }
        } catch (const std::exception&) {
            ++st.outcome.failed_points;
            layer_ok = false;
        }
        if (layer_ok) {
            if (l < depth) {
                dfs_layer(st, l + 1);
            } else {
                try {
                    EvalCounts counts;
                    const auto [l_e, l_o] = fusion_pair(depth);
                    for (std::size_t p = 0; p < st.pieces.size(); ++p) {
                        const auto& pl = st.layers[p];
                        CfpRepresentation y = fuse(pl[l_e], pl[l_o], l_e, l_o);
                        PianoRoll pred =
                            pick_pitches(project_to_bands(y, st.bank), st.threshold_ratio);
                        counts += evaluate(pred, st.pieces[p].truth);
                    }
                    ScoredPoint point{st.gammas, scores(counts), counts};
                    if (st.keep_table) st.outcome.table.push_back(point);
                    // strict > keeps the lexicographically smallest tie winner
                    if (!st.have_best || point.score.f_score > st.outcome.best_score.f_score) {
                        st.have_best = true;
                        st.outcome.best_gammas = point.gammas;
                        st.outcome.best_score = point.score;
                        st.outcome.best_counts = point.counts;
                    }
                } catch (const std::exception&) {
                    ++st.outcome.failed_points;
                }
            }
        }
        st.gammas.pop_back();
    }
}

}  // namespace

SearchOutcome brute_force(const SearchSpace& space, const std::vector<SearchPiece>& pieces,
                          const MlcConfig& tmpl, double threshold_ratio, bool keep_table) {
    if (space.grids.empty()) throw std::invalid_argument("brute_force: empty search space");
    if (space.grids.size() < 2)
        throw std::invalid_argument("brute_force: need at least layers 0 and 1 for fusion");
    for (const auto& g : space.grids)
        if (g.empty()) throw std::invalid_argument("brute_force: empty grid");
    if (pieces.empty()) throw std::invalid_argument("brute_force: empty dataset");

    DfsState st{space, pieces, tmpl, threshold_ratio, LogFreqBank::standard(), keep_table,
                {},    {},     {},   false};
    st.layers.resize(pieces.size());
    dfs_layer(st, 0);
    if (!st.have_best) throw std::runtime_error("brute_force: every grid point failed");
    return st.outcome;
}

SearchOutcome greedy(const std::vector<std::vector<double>>& per_layer_grids,
                     const std::vector<SearchPiece>& pieces, const MlcConfig& tmpl,
                     double threshold_ratio) {
    if (per_layer_grids.empty()) throw std::invalid_argument("greedy: empty search space");
    if (pieces.empty()) throw std::invalid_argument("greedy: empty dataset");
    const LogFreqBank bank = LogFreqBank::standard();

    SearchOutcome outcome;
    std::vector<double> chosen;  // gamma_0 .. gamma_{l-1}
    for (std::size_t step = 0; step < per_layer_grids.size(); ++step) {
        bool have_best = false;
        ScoredPoint best;
        for (double g : per_layer_grids[step]) {
            std::vector<double> gammas = chosen;
            gammas.push_back(g);
            gammas.push_back(1.0);  // final layer fixed
            try {
                EvalCounts counts = evaluate_gammas(pieces, tmpl, gammas, threshold_ratio, bank);
                Scores s = scores(counts);
                if (!have_best || s.f_score > best.score.f_score) {
                    have_best = true;
                    best = ScoredPoint{gammas, s, counts};
                }
            } catch (const std::exception&) {
                ++outcome.failed_points;
            }
        }
        if (!have_best) throw std::runtime_error("greedy: every candidate failed at a layer");
        chosen.push_back(best.gammas[step]);
        outcome.layer_trace.push_back(best);
    }
    outcome.best_gammas = outcome.layer_trace.back().gammas;
    outcome.best_score = outcome.layer_trace.back().score;
    outcome.best_counts = outcome.layer_trace.back().counts;
    return outcome;
}

std::vector<double> SgdConfig::initial_gammas(std::size_t num_layers) const {
    if (!init_gammas.empty()) {
        if (init_gammas.size() != num_layers + 1)
            throw std::invalid_argument("SgdConfig: init_gammas size mismatch");
        return init_gammas;
    }
    std::vector<double> g(num_layers + 1, 1.0);
    g[0] = 0.24;
    if (num_layers >= 1) g[1] = 0.6;
    return g;
}

namespace {

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

// Per-frame max normalization keeps the sigmoid input in [0, 1] regardless
// of the unnormalized DFT scale.
void normalize_frames(Salience& s) {
    for (std::size_t f = 0; f < s.num_frames; ++f) {
        double* col = s.frame(f);
        double mx = 0.0;
        for (std::size_t b = 0; b < kNumBands; ++b) mx = std::max(mx, col[b]);
        if (mx > 0.0)
            for (std::size_t b = 0; b < kNumBands; ++b) col[b] /= mx;
    }
}

double bce(double p, bool t) {
    const double eps = 1e-12;
    p = std::clamp(p, eps, 1.0 - eps);
    return t ? -std::log(p) : -std::log(1.0 - p);
}

double batch_loss_for(const SgdModel& model, const Salience& salience,
                      const PianoRoll& truth, const std::vector<std::size_t>& truth_frames) {
    double loss = 0.0;
    for (std::size_t i = 0; i < truth_frames.size(); ++i) {
        const double* col = salience.frame(i);
        for (std::size_t b = 0; b < kNumBands; ++b) {
            const double p = sigmoid(model.scale[b] * col[b] + model.bias[b]);
            loss += bce(p, truth.at(b, truth_frames[i]));
        }
    }
    return loss / (static_cast<double>(truth_frames.size()) * kNumBands);
}

}  // namespace

double sgd_batch_loss(const SgdModel& model, const Salience& salience,
                      const PianoRoll& truth, const std::vector<std::size_t>& truth_frames) {
    return batch_loss_for(model, salience, truth, truth_frames);
}

double sgd_pipeline_loss(const SgdModel& model, const SearchPiece& piece,
                         const MlcConfig& tmpl, const std::vector<std::size_t>& frames) {
    MlcConfig cfg = tmpl;
    cfg.gammas = model.gammas;
    Salience s = compute_salience_frames(piece.magnitudes, cfg, piece.sample_rate,
                                         LogFreqBank::standard(), frames);
    normalize_frames(s);
    return batch_loss_for(model, s, piece.truth, frames);
}

std::vector<double> sgd_gamma_gradient(const SgdModel& model, const SearchPiece& piece,
                                       const MlcConfig& tmpl,
                                       const std::vector<std::size_t>& frames,
                                       double fd_step_relative) {
    std::vector<double> grad(model.gammas.size(), 0.0);
    for (std::size_t i = 0; i < model.gammas.size(); ++i) {
        const double h = fd_step_relative * std::abs(model.gammas[i]);
        SgdModel lo = model, hi = model;
        lo.gammas[i] -= h;
        hi.gammas[i] += h;
        grad[i] = (sgd_pipeline_loss(hi, piece, tmpl, frames) -
                   sgd_pipeline_loss(lo, piece, tmpl, frames)) /
                  (2.0 * h);
    }
    return grad;
}

SgdModel sgd_fit(const SgdConfig& config, const std::vector<SearchPiece>& train,
                 const MlcConfig& tmpl, std::size_t num_layers,
                 std::vector<double>* epoch_loss) {
    if (train.empty()) throw std::invalid_argument("sgd_fit: empty training set");
    const LogFreqBank bank = LogFreqBank::standard();

    SgdModel model;
    model.gammas = config.initial_gammas(num_layers);
    model.scale.fill(1.0);
    model.bias.fill(0.0);

    // Every (piece, frame) cell of the training set.
    std::vector<std::pair<std::size_t, std::size_t>> cells;
    for (std::size_t p = 0; p < train.size(); ++p)
        for (std::size_t f = 0; f < train[p].magnitudes.num_frames; ++f)
            cells.emplace_back(p, f);

    std::mt19937_64 rng(config.seed);

    // Salience of one batch under a given gamma vector, columns ordered as
    // (piece, frames) groups.
    struct BatchGroup {
        std::size_t piece;
        std::vector<std::size_t> frames;
    };
    auto batch_salience = [&](const std::vector<BatchGroup>& groups,
                              const std::vector<double>& gammas) {
        MlcConfig cfg = tmpl;
        cfg.gammas = gammas;
        std::vector<Salience> out;
        out.reserve(groups.size());
        for (const BatchGroup& g : groups) {
            Salience s = compute_salience_frames(train[g.piece].magnitudes, cfg,
                                                 train[g.piece].sample_rate, bank, g.frames);
            normalize_frames(s);
            out.push_back(std::move(s));
        }
        return out;
    };
    auto loss_over = [&](const std::vector<BatchGroup>& groups,
                         const std::vector<Salience>& sal) {
        double loss = 0.0;
        std::size_t frames = 0;
        for (std::size_t i = 0; i < groups.size(); ++i) {
            loss += batch_loss_for(model, sal[i], train[groups[i].piece].truth,
                                   groups[i].frames) *
                    static_cast<double>(groups[i].frames.size());
            frames += groups[i].frames.size();
        }
        return loss / static_cast<double>(frames);
    };
    auto loss_at_gammas = [&](const std::vector<BatchGroup>& groups,
                              const std::vector<double>& gammas) {
        return loss_over(groups, batch_salience(groups, gammas));
    };

    for (std::size_t epoch = 0; epoch < config.max_epochs; ++epoch) {
        std::shuffle(cells.begin(), cells.end(), rng);
        for (std::size_t start = 0; start < cells.size(); start += config.batch_size) {
            const std::size_t stop = std::min(start + config.batch_size, cells.size());
            std::vector<BatchGroup> groups;
            for (std::size_t i = start; i < stop; ++i) {
                const auto [p, f] = cells[i];
                auto it = std::find_if(groups.begin(), groups.end(),
                                       [p](const BatchGroup& g) { return g.piece == p; });
                if (it == groups.end()) {
                    groups.push_back({p, {f}});
                } else {
                    it->frames.push_back(f);
                }
            }

            std::vector<Salience> sal = batch_salience(groups, model.gammas);

            // Analytic gradients for the per-band affine output layer.
            std::array<double, kNumBands> grad_a{}, grad_c{};
            std::size_t frames = 0;
            for (const BatchGroup& g : groups) frames += g.frames.size();
            for (std::size_t gi = 0; gi < groups.size(); ++gi) {
                const PianoRoll& truth = train[groups[gi].piece].truth;
                for (std::size_t i = 0; i < groups[gi].frames.size(); ++i) {
                    const double* col = sal[gi].frame(i);
                    for (std::size_t b = 0; b < kNumBands; ++b) {
                        const double p = sigmoid(model.scale[b] * col[b] + model.bias[b]);
                        const double d =
                            p - (truth.at(b, groups[gi].frames[i]) ? 1.0 : 0.0);
                        grad_a[b] += d * col[b];
                        grad_c[b] += d;
                    }
                }
            }
            const double denom = static_cast<double>(frames) * kNumBands;

            // Central finite differences for the gammas.
            std::vector<double> grad_g(model.gammas.size(), 0.0);
            if (config.train_gammas) {
                for (std::size_t i = 0; i < model.gammas.size(); ++i) {
                    const double h = config.fd_step_relative * std::abs(model.gammas[i]);
                    std::vector<double> lo = model.gammas, hi = model.gammas;
                    lo[i] = std::max(config.gamma_min, lo[i] - h);
                    hi[i] = std::min(config.gamma_max, hi[i] + h);
                    if (hi[i] == lo[i]) continue;
                    const double l_hi = loss_at_gammas(groups, hi);
                    const double l_lo = loss_at_gammas(groups, lo);
                    grad_g[i] = (l_hi - l_lo) / (hi[i] - lo[i]);
                }
            }

            const double current = loss_over(groups, sal);
            if (!std::isfinite(current))
                throw std::runtime_error("sgd_fit: non-finite loss (epoch " +
                                         std::to_string(epoch) + ")");

            for (std::size_t b = 0; b < kNumBands; ++b) {
                model.scale[b] -= config.learning_rate * grad_a[b] / denom;
                model.bias[b] -= config.learning_rate * grad_c[b] / denom;
            }
            if (config.train_gammas) {
                for (std::size_t i = 0; i < model.gammas.size(); ++i)
                    model.gammas[i] = std::clamp(model.gammas[i] - config.learning_rate * grad_g[i],
                                                 config.gamma_min, config.gamma_max);
            }
        }

        if (epoch_loss) {
            std::vector<BatchGroup> all;
            for (std::size_t p = 0; p < train.size(); ++p) {
                BatchGroup g{p, {}};
                g.frames.resize(train[p].magnitudes.num_frames);
                std::iota(g.frames.begin(), g.frames.end(), std::size_t{0});
                all.push_back(std::move(g));
            }
            epoch_loss->push_back(loss_at_gammas(all, model.gammas));
        }
    }
    return model;
}

PianoRoll sgd_predict(const SgdModel& model, const SearchPiece& piece, const MlcConfig& tmpl) {
    MlcConfig cfg = tmpl;
    cfg.gammas = model.gammas;
    LayerStack stack = compute_stack_from_magnitudes(piece.magnitudes, cfg, piece.sample_rate);
    Salience s = salience_from_stack(stack, LogFreqBank::standard());
    normalize_frames(s);
    PianoRoll roll = PianoRoll::empty(s.num_frames, s.frame_hop_seconds);
    for (std::size_t f = 0; f < s.num_frames; ++f)
        for (std::size_t b = 0; b < kNumBands; ++b)
            if (sigmoid(model.scale[b] * s.at(b, f) + model.bias[b]) > 0.5)
                roll.set(b, f, true);
    return roll;
}

SgdOutcome sgd_train(const SgdConfig& config, const std::vector<SearchPiece>& pieces,
                     const MlcConfig& tmpl, std::size_t num_layers, std::size_t num_folds) {
    auto folds = kfold_split(pieces.size(), num_folds);
    SgdOutcome outcome;
    for (const auto& [train_idx, test_idx] : folds) {
        std::vector<SearchPiece> train;
        for (std::size_t i : train_idx) train.push_back(pieces[i]);
        SgdFoldResult fold;
        fold.test_pieces = test_idx;
        fold.model = sgd_fit(config, train, tmpl, num_layers, &fold.epoch_loss);
        for (std::size_t i : test_idx) {
            PianoRoll pred = sgd_predict(fold.model, pieces[i], tmpl);
            fold.counts += evaluate(pred, pieces[i].truth);
        }
        outcome.pooled_counts += fold.counts;
        outcome.folds.push_back(std::move(fold));
    }
    outcome.pooled_score = scores(outcome.pooled_counts);
    return outcome;
}

std::vector<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> kfold_split(
    std::size_t num_pieces, std::size_t k) {
    if (k == 0 || num_pieces < k)
        throw std::invalid_argument("kfold_split: fewer pieces than folds");
    std::vector<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> folds(k);
    for (std::size_t i = 0; i < num_pieces; ++i) folds[i % k].second.push_back(i);
    for (std::size_t f = 0; f < k; ++f)
        for (std::size_t i = 0; i < num_pieces; ++i)
            if (i % k != f) folds[f].first.push_back(i);
    return folds;
}

void write_search_csv(const std::string& path, const SearchOutcome& outcome) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("search: cannot write " + path);
    out << std::setprecision(10);
    const auto& rows = outcome.table.empty() ? outcome.layer_trace : outcome.table;
    std::size_t width = outcome.best_gammas.size();
    for (const auto& r : rows) width = std::max(width, r.gammas.size());
    for (std::size_t i = 0; i < width; ++i) out << "gamma" << i << ',';
    out << "precision,recall,f_score\n";
    auto emit = [&](const ScoredPoint& r) {
        for (std::size_t i = 0; i < width; ++i) {
            if (i < r.gammas.size()) out << r.gammas[i];
            out << ',';
        }
        out << r.score.precision << ',' << r.score.recall << ',' << r.score.f_score << '\n';
    };
    for (const auto& r : rows) emit(r);
    emit(ScoredPoint{outcome.best_gammas, outcome.best_score, outcome.best_counts});
}

std::string format_search_summary(const std::string& method, const SearchOutcome& outcome) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(2);
    os << "method: " << method << "\ngammas:";
    for (double g : outcome.best_gammas) os << ' ' << g;
    os << "\nP (%): " << 100.0 * outcome.best_score.precision
       << "\nR (%): " << 100.0 * outcome.best_score.recall
       << "\nF (%): " << 100.0 * outcome.best_score.f_score << '\n';
    if (outcome.failed_points > 0) os << "failed grid points: " << outcome.failed_points << '\n';
    return os.str();
}

}  // namespace mlccfp
