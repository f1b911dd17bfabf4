#include "mlccfp.h"

#include <ios>
#include <new>
#include <stdexcept>
#include <string>
#include <vector>

#include "mlccfp/commands.hpp"

struct mlc_session {
    mlccfp::RunConfig config;
    std::string last_error;
};

namespace {

mlc_status fail(mlc_session* session, mlc_status code, const std::string& message) {
    if (session) session->last_error = message;
    return code;
}

template <typename Fn>
mlc_status guarded(mlc_session* session, Fn&& fn) {
    if (!session) return MLC_ERR_INVALID_ARGUMENT;
    session->last_error.clear();
    try {
        fn();
        return MLC_OK;
    } catch (const std::invalid_argument& e) {
        return fail(session, MLC_ERR_INVALID_ARGUMENT, e.what());
    } catch (const std::ios_base::failure& e) {
        return fail(session, MLC_ERR_IO, e.what());
    } catch (const std::exception& e) {
        const std::string what = e.what();
        const bool io = what.find("cannot open") != std::string::npos ||
                        what.find("cannot write") != std::string::npos;
        return fail(session, io ? MLC_ERR_IO : MLC_ERR_RUNTIME, what);
    }
}

mlc_scores to_c(const mlccfp::EvalReport& report) {
    mlc_scores s;
    s.precision = report.score.precision;
    s.recall = report.score.recall;
    s.f_score = report.score.f_score;
    s.tp = report.counts.tp;
    s.fp = report.counts.fp;
    s.fn = report.counts.fn;
    return s;
}

}  // namespace

extern "C" {

const char* mlc_version(void) { return "0.1.0"; }

mlc_session* mlc_session_new(void) { return new (std::nothrow) mlc_session(); }

void mlc_session_free(mlc_session* session) { delete session; }

const char* mlc_last_error(const mlc_session* session) {
    return session ? session->last_error.c_str() : "null session";
}

mlc_status mlc_load_config(mlc_session* session, const char* path) {
    if (!path) return fail(session, MLC_ERR_INVALID_ARGUMENT, "null path");
    return guarded(session, [&] { session->config.load_file(path); });
}

mlc_status mlc_set_option(mlc_session* session, const char* key, const char* value) {
    if (!key || !value) return fail(session, MLC_ERR_INVALID_ARGUMENT, "null key or value");
    return guarded(session, [&] { session->config.set(key, value); });
}

const char* const* mlc_option_keys(void) {
    static std::vector<const char*> keys = [] {
        std::vector<const char*> v;
        for (const std::string& k : mlccfp::RunConfig::known_keys()) v.push_back(k.c_str());
        v.push_back(nullptr);
        return v;
    }();
    return keys.data();
}

mlc_status mlc_synth(mlc_session* session, const char* out_dir) {
    if (!out_dir) return fail(session, MLC_ERR_INVALID_ARGUMENT, "null out_dir");
    return guarded(session, [&] { mlccfp::run_synth(session->config, out_dir); });
}

mlc_status mlc_degrade(mlc_session* session, const char* in_wav, const char* out_wav) {
    if (!in_wav || !out_wav) return fail(session, MLC_ERR_INVALID_ARGUMENT, "null path");
    return guarded(session, [&] { mlccfp::run_degrade(session->config, in_wav, out_wav); });
}

mlc_status mlc_analyze(mlc_session* session, const char* in_wav, const char* out_dir) {
    if (!in_wav || !out_dir) return fail(session, MLC_ERR_INVALID_ARGUMENT, "null path");
    return guarded(session, [&] { mlccfp::run_analyze(session->config, in_wav, out_dir); });
}

mlc_status mlc_estimate(mlc_session* session, const char* in_wav, const char* out_dir) {
    if (!in_wav || !out_dir) return fail(session, MLC_ERR_INVALID_ARGUMENT, "null path");
    return guarded(session, [&] { mlccfp::run_estimate(session->config, in_wav, out_dir); });
}

mlc_status mlc_eval(mlc_session* session, const char* predictions_path,
                    const char* truth_path, const char* out_dir, mlc_scores* out) {
    if (!predictions_path || !truth_path)
        return fail(session, MLC_ERR_INVALID_ARGUMENT, "null path");
    return guarded(session, [&] {
        mlccfp::EvalReport report = mlccfp::run_eval(session->config, predictions_path,
                                                     truth_path, out_dir ? out_dir : "");
        if (out) *out = to_c(report);
    });
}

mlc_status mlc_search(mlc_session* session, const char* mode, const char* dataset_dir,
                      const char* out_dir, mlc_scores* out) {
    if (!mode || !dataset_dir || !out_dir)
        return fail(session, MLC_ERR_INVALID_ARGUMENT, "null argument");
    return guarded(session, [&] {
        mlccfp::EvalReport report =
            mlccfp::run_search(session->config, mode, dataset_dir, out_dir);
        if (out) *out = to_c(report);
    });
}

}  // extern "C"
