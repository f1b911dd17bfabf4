#include "mlccfp/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

namespace mlccfp {

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    std::string item;
    std::istringstream iss(text);
    while (std::getline(iss, item, ',')) {
        if (item.find_first_not_of(" \t") == std::string::npos) continue;
        out.push_back(std::stod(item));
    }
    if (out.empty()) throw std::invalid_argument("expected a comma-separated number list");
    return out;
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

bool parse_bool(const std::string& v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw std::invalid_argument("expected a boolean, got '" + v + "'");
}

}  // namespace

void RunConfig::set(const std::string& key, const std::string& value) {
    try {
        if (key == "dft_size") dft_size = std::stoul(value);
        else if (key == "window_length") window_length = std::stoul(value);
        else if (key == "window_kind") {
            if (value != "blackman_harris" && value != "rectangular")
                throw std::invalid_argument("unknown window kind '" + value + "'");
            window_kind = value;
        }
        else if (key == "hop_seconds") hop_seconds = std::stod(value);
        else if (key == "gammas") gammas = parse_double_list(value);
        else if (key == "cutoff_frequency_hz") cutoff_frequency_hz = std::stod(value);
        else if (key == "cutoff_quefrency_s") cutoff_quefrency_s = std::stod(value);
        else if (key == "threshold_ratio") threshold_ratio = std::stod(value);
        else if (key == "midi_fields") midi_fields = parse_bool(value);
        else if (key == "synth_sample_rate") recipe.sample_rate = std::stod(value);
        else if (key == "synth_duration_s") recipe.duration_s = std::stod(value);
        else if (key == "square_f0_hz") recipe.square_f0_hz = std::stod(value);
        else if (key == "square_duty") recipe.square_duty = std::stod(value);
        else if (key == "saw_f0_base_hz") recipe.saw_f0_base_hz = std::stod(value);
        else if (key == "saw_f0_depth_hz") recipe.saw_f0_depth_hz = std::stod(value);
        else if (key == "saw_mod_period_s") recipe.saw_mod_period_s = std::stod(value);
        else if (key == "synth_butter_order") recipe.butter_order = std::stoi(value);
        else if (key == "synth_butter_cutoff_hz") recipe.butter_cutoff_hz = std::stod(value);
        else if (key == "synth_pink_snr_db") recipe.pink_snr_db = std::stod(value);
        else if (key == "synth_impulse_at_s") recipe.impulse_at_seconds = std::stod(value);
        else if (key == "synth_impulse_amplitude") recipe.impulse_amplitude = std::stod(value);
        else if (key == "degrade_kind") {
            if (value != "none" && value != "lowpass" && value != "highpass")
                throw std::invalid_argument("unknown degrade kind '" + value + "'");
            degrade_kind = value;
        }
        else if (key == "degrade_order") degrade_order = std::stoi(value);
        else if (key == "degrade_cutoff_hz") degrade_cutoff_hz = std::stod(value);
        else if (key == "degrade_add_pink") degrade_add_pink = parse_bool(value);
        else if (key == "degrade_snr_db") degrade_snr_db = std::stod(value);
        else if (key == "degrade_impulse_at_s") degrade_impulse_at_s = std::stod(value);
        else if (key == "degrade_impulse_amplitude") degrade_impulse_amplitude = std::stod(value);
        else if (key == "search_layers") search_layers = std::stoul(value);
        else if (key == "sgd_learning_rate") sgd_learning_rate = std::stod(value);
        else if (key == "sgd_batch_size") sgd_batch_size = std::stoul(value);
        else if (key == "sgd_epochs") sgd_epochs = std::stoul(value);
        else if (key == "sgd_folds") sgd_folds = std::stoul(value);
        else if (key == "seed") seed = std::stoull(value);
        else throw std::invalid_argument("unknown config key '" + key + "'");
    } catch (const std::invalid_argument&) {
        throw;
    } catch (const std::exception&) {
        throw std::invalid_argument("bad value for config key '" + key + "': '" + value + "'");
    }
}

const std::vector<std::string>& RunConfig::known_keys() {
    static const std::vector<std::string> keys = {
        "dft_size", "window_length", "window_kind", "hop_seconds", "gammas",
        "cutoff_frequency_hz", "cutoff_quefrency_s", "threshold_ratio", "midi_fields",
        "synth_sample_rate", "synth_duration_s", "square_f0_hz", "square_duty",
        "saw_f0_base_hz", "saw_f0_depth_hz", "saw_mod_period_s", "synth_butter_order",
        "synth_butter_cutoff_hz", "synth_pink_snr_db", "synth_impulse_at_s",
        "synth_impulse_amplitude", "degrade_kind", "degrade_order", "degrade_cutoff_hz",
        "degrade_add_pink", "degrade_snr_db", "degrade_impulse_at_s",
        "degrade_impulse_amplitude", "search_layers", "sgd_learning_rate",
        "sgd_batch_size", "sgd_epochs", "sgd_folds", "seed"};
    return keys;
}

void RunConfig::load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config: cannot open " + path);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config: expected 'key = value' at " + path + ":" +
                                     std::to_string(line_no));
        set(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
}

MlcConfig RunConfig::mlc_config(double sample_rate) const {
    MlcConfig cfg;
    cfg.window.kind = (window_kind == "rectangular") ? WindowKind::rectangular
                                                     : WindowKind::blackman_harris;
    cfg.window.dft_size = dft_size;
    cfg.window.window_length = (window_length == 0) ? dft_size : window_length;
    cfg.window.hop = static_cast<std::size_t>(
        std::max<long long>(1, std::llround(hop_seconds * sample_rate)));
    cfg.gammas = gammas;
    cfg.cutoff_frequency_hz = cutoff_frequency_hz;
    cfg.cutoff_quefrency_s = cutoff_quefrency_s;
    cfg.validate(sample_rate);
    return cfg;
}

DegradeSpec RunConfig::degrade_spec() const {
    DegradeSpec spec;
    if (degrade_kind != "none") {
        ButterworthSpec butter;
        butter.order = degrade_order;
        butter.cutoff_hz = degrade_cutoff_hz;
        butter.kind = (degrade_kind == "lowpass") ? FilterKind::lowpass : FilterKind::highpass;
        spec.filter = butter;
    }
    if (degrade_add_pink) spec.pink_snr_db = degrade_snr_db;
    if (degrade_impulse_at_s >= 0.0) {
        spec.impulse_at_seconds = degrade_impulse_at_s;
        spec.impulse_amplitude = degrade_impulse_amplitude;
    }
    spec.seed = seed;
    return spec;
}

}  // namespace mlccfp
