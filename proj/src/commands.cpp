#include "mlccfp/commands.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>

#include "mlccfp/io.hpp"
#include "mlccfp/pipeline.hpp"
#include "mlccfp/wav.hpp"

namespace fs = std::filesystem;

namespace mlccfp {

namespace {
void ensure_dir(const std::string& dir) {
    if (dir.empty()) throw std::invalid_argument("output directory not given");
    fs::create_directories(dir);
}
}  // namespace

void run_synth(const RunConfig& cfg, const std::string& out_dir) {
    ensure_dir(out_dir);
    SimulationRecipe recipe = cfg.recipe;
    recipe.seed = cfg.seed;
    SimulationSignals sig = build_simulation(recipe);
    write_wav((fs::path(out_dir) / "x1.wav").string(), sig.x1);
    write_wav((fs::path(out_dir) / "x2.wav").string(), sig.x2);
    write_wav((fs::path(out_dir) / "x.wav").string(), sig.clean);
    write_wav((fs::path(out_dir) / "x_noisy.wav").string(), sig.noisy);
}

void run_degrade(const RunConfig& cfg, const std::string& in_wav, const std::string& out_wav) {
    TimeSeries x = read_wav(in_wav);
    write_wav(out_wav, apply_degradation(x, cfg.degrade_spec()));
}

void run_analyze(const RunConfig& cfg, const std::string& in_wav, const std::string& out_dir) {
    ensure_dir(out_dir);
    TimeSeries x = read_wav(in_wav);
    MlcConfig mlc = cfg.mlc_config(x.sample_rate);
    LayerStack stack = compute_stack(x, mlc);
    for (std::size_t l = 0; l < stack.layers.size(); ++l)
        write_spectrogram_csv((fs::path(out_dir) / ("z" + std::to_string(l) + ".csv")).string(),
                              stack.layers[l]);
    if (stack.depth() >= 1) {
        CfpRepresentation y = fuse_stack(stack);
        write_spectrogram_csv((fs::path(out_dir) / "cfp.csv").string(), y.values);
        write_salience_csv((fs::path(out_dir) / "salience.csv").string(),
                           project_to_bands(y, LogFreqBank::standard()));
    }
}

void run_estimate(const RunConfig& cfg, const std::string& in_wav, const std::string& out_dir) {
    ensure_dir(out_dir);
    TimeSeries x = read_wav(in_wav);
    MlcConfig mlc = cfg.mlc_config(x.sample_rate);
    Salience salience = compute_salience(x, mlc, LogFreqBank::standard());
    PianoRoll roll = pick_pitches(salience, cfg.threshold_ratio);
    write_predictions_txt((fs::path(out_dir) / "predictions.txt").string(), roll);
    write_pianoroll_csv((fs::path(out_dir) / "pianoroll.csv").string(), roll);
}

EvalReport run_eval(const RunConfig& cfg, const std::string& predictions_path,
                    const std::string& truth_path, const std::string& out_dir) {
    std::ifstream pred_in(predictions_path);
    if (!pred_in) throw std::runtime_error("eval: cannot open " + predictions_path);
    std::vector<std::string> pred_lines;
    std::string line;
    while (std::getline(pred_in, line))
        if (line.find_first_not_of(" \t\r") != std::string::npos) pred_lines.push_back(line);
    if (pred_lines.empty()) throw std::runtime_error("eval: empty prediction file");

    // The prediction file fixes the frame grid: hop from its time column.
    double hop = cfg.hop_seconds;
    if (pred_lines.size() >= 2) {
        const double t0 = std::stod(pred_lines[0]);
        const double t1 = std::stod(pred_lines[1]);
        if (t1 > t0) hop = t1 - t0;
    }
    const std::size_t num_frames = pred_lines.size();
    GroundTruth pred = parse_ground_truth_lines(pred_lines, hop, num_frames, false);
    GroundTruth truth = ingest_ground_truth(truth_path, hop, num_frames, cfg.midi_fields);

    EvalReport report;
    report.counts = evaluate(pred.roll, truth.roll);
    report.score = scores(report.counts);
    if (!out_dir.empty()) {
        ensure_dir(out_dir);
        write_counts_csv((fs::path(out_dir) / "counts.csv").string(), report.counts,
                         report.score);
    }
    return report;
}

namespace {

std::vector<SearchPiece> load_dataset(const RunConfig& cfg, const std::string& dataset_dir) {
    std::vector<std::pair<std::string, fs::path>> wavs;
    for (const auto& entry : fs::directory_iterator(dataset_dir))
        if (entry.is_regular_file() && entry.path().extension() == ".wav")
            wavs.emplace_back(entry.path().stem().string(), entry.path());
    std::sort(wavs.begin(), wavs.end());
    if (wavs.empty()) throw std::runtime_error("search: no .wav files in " + dataset_dir);

    std::vector<SearchPiece> pieces;
    std::string missing;
    for (const auto& [stem, wav_path] : wavs) {
        fs::path ann = wav_path;
        ann.replace_extension(".txt");
        if (!fs::exists(ann)) {
            missing += (missing.empty() ? "" : ", ") + stem;
            continue;
        }
        TimeSeries audio = read_wav(wav_path.string());
        MlcConfig mlc = cfg.mlc_config(audio.sample_rate);
        pieces.push_back(prepare_piece(stem, audio, ann.string(), mlc, cfg.midi_fields));
    }
    if (!missing.empty())
        throw std::runtime_error("search: missing annotation for: " + missing);
    return pieces;
}

}  // namespace

EvalReport run_search(const RunConfig& cfg, const std::string& mode,
                      const std::string& dataset_dir, const std::string& out_dir) {
    ensure_dir(out_dir);
    std::vector<SearchPiece> pieces = load_dataset(cfg, dataset_dir);
    const double sample_rate = pieces.front().sample_rate;
    MlcConfig tmpl = cfg.mlc_config(sample_rate);
    const std::size_t layers = cfg.search_layers;

    SearchOutcome outcome;
    if (mode == "brute") {
        SearchSpace space;
        space.grids.assign(layers + 1, SearchSpace::coarse_grid());
        outcome = brute_force(space, pieces, tmpl, cfg.threshold_ratio);
    } else if (mode == "greedy") {
        std::vector<std::vector<double>> grids(layers, SearchSpace::fine_grid());
        outcome = greedy(grids, pieces, tmpl, cfg.threshold_ratio);
    } else if (mode == "sgd") {
        SgdConfig sgd;
        sgd.learning_rate = cfg.sgd_learning_rate;
        sgd.batch_size = cfg.sgd_batch_size;
        sgd.max_epochs = cfg.sgd_epochs;
        sgd.seed = cfg.seed;
        SgdOutcome result = sgd_train(sgd, pieces, tmpl, layers, cfg.sgd_folds);
        outcome.best_counts = result.pooled_counts;
        outcome.best_score = result.pooled_score;
        outcome.best_gammas = result.folds.empty() ? std::vector<double>{}
                                                   : result.folds.front().model.gammas;
        for (const auto& fold : result.folds)
            outcome.layer_trace.push_back(
                ScoredPoint{fold.model.gammas, scores(fold.counts), fold.counts});
    } else {
        throw std::invalid_argument("search: unknown mode '" + mode + "'");
    }

    write_search_csv((fs::path(out_dir) / "results.csv").string(), outcome);
    std::ofstream summary((fs::path(out_dir) / "summary.txt").string());
    summary << format_search_summary(mode, outcome);

    return EvalReport{outcome.best_counts, outcome.best_score};
}

}  // namespace mlccfp
