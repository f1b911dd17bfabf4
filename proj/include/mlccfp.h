/* C interface to the MLC-CFP multiple-F0 estimation library.
 *
 * All entry points take an opaque session holding the run configuration and
 * the last error message, and return an error code. On failure the message
 * from mlc_last_error() stays valid until the next call on the session.
 */
#ifndef MLCCFP_H
#define MLCCFP_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef struct mlc_session mlc_session;

typedef enum {
    MLC_OK = 0,
    MLC_ERR_INVALID_ARGUMENT = 1,
    MLC_ERR_IO = 2,
    MLC_ERR_RUNTIME = 3
} mlc_status;

typedef struct {
    double precision;
    double recall;
    double f_score;
    unsigned long long tp, fp, fn;
} mlc_scores;

const char* mlc_version(void);

mlc_session* mlc_session_new(void);
void mlc_session_free(mlc_session* session);

/* Empty string until an error occurs. */
const char* mlc_last_error(const mlc_session* session);

/* Flat `key = value` config file; `#` starts a comment. */
mlc_status mlc_load_config(mlc_session* session, const char* path);
mlc_status mlc_set_option(mlc_session* session, const char* key, const char* value);

/* NULL-terminated array of the accepted option keys; statically allocated. */
const char* const* mlc_option_keys(void);

/* Writes x1.wav, x2.wav, x.wav, x_noisy.wav under out_dir. */
mlc_status mlc_synth(mlc_session* session, const char* out_dir);

mlc_status mlc_degrade(mlc_session* session, const char* in_wav, const char* out_wav);

/* Layer CSVs z0..zL plus cfp.csv and salience.csv under out_dir. */
mlc_status mlc_analyze(mlc_session* session, const char* in_wav, const char* out_dir);

/* predictions.txt and pianoroll.csv under out_dir. */
mlc_status mlc_estimate(mlc_session* session, const char* in_wav, const char* out_dir);

/* out_dir may be NULL to skip the counts.csv dump. */
mlc_status mlc_eval(mlc_session* session, const char* predictions_path,
                    const char* truth_path, const char* out_dir, mlc_scores* out);

/* mode: "brute" | "greedy" | "sgd". */
mlc_status mlc_search(mlc_session* session, const char* mode, const char* dataset_dir,
                      const char* out_dir, mlc_scores* out);

#ifdef __cplusplus
}
#endif

#endif
