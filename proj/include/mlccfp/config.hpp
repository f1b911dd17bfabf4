#ifndef MLCCFP_CONFIG_HPP
#define MLCCFP_CONFIG_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "mlccfp/degrade.hpp"
#include "mlccfp/mlc.hpp"

namespace mlccfp {

/// Flat key = value run configuration. Every key can come from a config file
/// (one `key = value` per line, `#` comments) or be overridden individually.
struct RunConfig {
    // analysis
    std::size_t dft_size = 7939;
    std::size_t window_length = 0;  // 0: same as dft_size
    std::string window_kind = "blackman_harris";
    double hop_seconds = 0.01;
    std::vector<double> gammas = {0.24, 0.6, 1.0};
    double cutoff_frequency_hz = 27.5;
    double cutoff_quefrency_s = 0.00024;
    double threshold_ratio = 0.1;
    bool midi_fields = false;

    // synthesis recipe
    SimulationRecipe recipe;

    // degradation
    std::string degrade_kind = "none";  // none | lowpass | highpass
    int degrade_order = 4;
    double degrade_cutoff_hz = 1000.0;
    double degrade_snr_db = 0.0;
    bool degrade_add_pink = false;
    double degrade_impulse_at_s = -1.0;  // < 0: no impulse
    double degrade_impulse_amplitude = 0.0;

    // search
    std::size_t search_layers = 1;
    double sgd_learning_rate = 0.1;
    std::size_t sgd_batch_size = 256;
    std::size_t sgd_epochs = 40;
    std::size_t sgd_folds = 10;
    std::uint64_t seed = 1;

    void set(const std::string& key, const std::string& value);
    void load_file(const std::string& path);
    static const std::vector<std::string>& known_keys();

    MlcConfig mlc_config(double sample_rate) const;
    DegradeSpec degrade_spec() const;
};

std::vector<double> parse_double_list(const std::string& text);

}  // namespace mlccfp

#endif
