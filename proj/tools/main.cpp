// mlccfp command-line tool. Talks to the library only through the C API.

#include <CLI11.hpp>

#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include "mlccfp.h"

namespace {

struct SessionDeleter {
    void operator()(mlc_session* s) const { mlc_session_free(s); }
};
using SessionPtr = std::unique_ptr<mlc_session, SessionDeleter>;

const char* category(mlc_status status) {
    switch (status) {
        case MLC_OK: return "ok";
        case MLC_ERR_INVALID_ARGUMENT: return "invalid argument";
        case MLC_ERR_IO: return "i/o error";
        case MLC_ERR_RUNTIME: return "runtime error";
    }
    return "unknown";
}

int check(mlc_session* session, mlc_status status) {
    if (status == MLC_OK) return 0;
    std::fprintf(stderr, "error (%s): %s\n", category(status), mlc_last_error(session));
    return static_cast<int>(status);
}

// Shared options: --config file first, then individual key overrides.
struct CommonOpts {
    std::string config_file;
    std::vector<std::pair<std::string, std::string>> overrides;
};

void add_common(CLI::App* cmd, CommonOpts& opts) {
    cmd->add_option("--config", opts.config_file, "flat key = value config file");
    for (const char* const* key = mlc_option_keys(); *key; ++key) {
        const std::string name = "--" + std::string(*key);
        cmd->add_option_function<std::string>(
            name,
            [&opts, key](const std::string& value) {
                opts.overrides.emplace_back(*key, value);
            },
            "config key " + std::string(*key));
    }
}

int apply_common(mlc_session* session, const CommonOpts& opts) {
    if (!opts.config_file.empty()) {
        int rc = check(session, mlc_load_config(session, opts.config_file.c_str()));
        if (rc) return rc;
    }
    for (const auto& [key, value] : opts.overrides) {
        int rc = check(session, mlc_set_option(session, key.c_str(), value.c_str()));
        if (rc) return rc;
    }
    return 0;
}

void print_scores(const mlc_scores& s) {
    std::printf("tp=%llu fp=%llu fn=%llu\n", s.tp, s.fp, s.fn);
    std::printf("P = %.2f%%  R = %.2f%%  F = %.2f%%\n", 100.0 * s.precision,
                100.0 * s.recall, 100.0 * s.f_score);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"MLC-CFP multiple fundamental frequency estimation"};
    app.require_subcommand(1);

    SessionPtr session(mlc_session_new());
    if (!session) {
        std::fprintf(stderr, "error: out of memory\n");
        return 1;
    }

    CommonOpts synth_opts, degrade_opts, analyze_opts, estimate_opts, eval_opts, search_opts;
    std::string out_dir, in_wav, out_wav, predictions, truth, mode, dataset_dir;

    CLI::App* synth = app.add_subcommand("synth", "generate the simulation signals");
    synth->add_option("-o,--out", out_dir, "output directory")->required();
    add_common(synth, synth_opts);

    CLI::App* degrade = app.add_subcommand("degrade", "apply the degradation recipe to a WAV");
    degrade->add_option("input", in_wav, "input WAV")->required();
    degrade->add_option("output", out_wav, "output WAV")->required();
    add_common(degrade, degrade_opts);

    CLI::App* analyze = app.add_subcommand("analyze", "dump layer/CFP/salience CSVs");
    analyze->add_option("input", in_wav, "input WAV")->required();
    analyze->add_option("-o,--out", out_dir, "output directory")->required();
    add_common(analyze, analyze_opts);

    CLI::App* estimate = app.add_subcommand("estimate", "frame-level multi-F0 estimation");
    estimate->add_option("input", in_wav, "input WAV")->required();
    estimate->add_option("-o,--out", out_dir, "output directory")->required();
    add_common(estimate, estimate_opts);

    CLI::App* eval = app.add_subcommand("eval", "score predictions against ground truth");
    eval->add_option("predictions", predictions, "prediction text file")->required();
    eval->add_option("truth", truth, "ground-truth text file")->required();
    eval->add_option("-o,--out", out_dir, "output directory for counts.csv");
    add_common(eval, eval_opts);

    CLI::App* search = app.add_subcommand("search", "gamma parameter search over a dataset");
    search->add_option("mode", mode, "brute | greedy | sgd")->required();
    search->add_option("dataset", dataset_dir, "directory of X.wav + X.txt pairs")->required();
    search->add_option("-o,--out", out_dir, "output directory")->required();
    add_common(search, search_opts);

    CLI11_PARSE(app, argc, argv);

    mlc_session* s = session.get();
    if (synth->parsed()) {
        if (int rc = apply_common(s, synth_opts)) return rc;
        return check(s, mlc_synth(s, out_dir.c_str()));
    }
    if (degrade->parsed()) {
        if (int rc = apply_common(s, degrade_opts)) return rc;
        return check(s, mlc_degrade(s, in_wav.c_str(), out_wav.c_str()));
    }
    if (analyze->parsed()) {
        if (int rc = apply_common(s, analyze_opts)) return rc;
        return check(s, mlc_analyze(s, in_wav.c_str(), out_dir.c_str()));
    }
    if (estimate->parsed()) {
        if (int rc = apply_common(s, estimate_opts)) return rc;
        return check(s, mlc_estimate(s, in_wav.c_str(), out_dir.c_str()));
    }
    if (eval->parsed()) {
        if (int rc = apply_common(s, eval_opts)) return rc;
        mlc_scores scores;
        int rc = check(s, mlc_eval(s, predictions.c_str(), truth.c_str(),
                                   out_dir.empty() ? nullptr : out_dir.c_str(), &scores));
        if (rc) return rc;
        print_scores(scores);
        return 0;
    }
    if (search->parsed()) {
        if (int rc = apply_common(s, search_opts)) return rc;
        mlc_scores scores;
        int rc = check(s, mlc_search(s, mode.c_str(), dataset_dir.c_str(), out_dir.c_str(),
                                     &scores));
        if (rc) return rc;
        print_scores(scores);
        return 0;
    }
    return 1;
}
