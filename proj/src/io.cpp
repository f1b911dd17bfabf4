#include "mlccfp/io.hpp"

#include <fstream>
#include <iomanip>

namespace mlccfp {

namespace {
std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("io: cannot write " + path);
    out << std::setprecision(12);
    return out;
}
}  // namespace

void write_spectrogram_csv(const std::string& path, const Spectrogram& s) {
    std::ofstream out = open_out(path);
    out << (s.axis == Axis::frequency ? "freq_hz" : "quefrency_s");
    for (std::size_t f = 0; f < s.num_frames; ++f)
        out << ',' << static_cast<double>(f) * s.frame_hop_seconds;
    out << '\n';
    for (std::size_t k = 0; k < s.num_bins; ++k) {
        out << static_cast<double>(k) * s.bin_step;
        for (std::size_t f = 0; f < s.num_frames; ++f) out << ',' << s.at(k, f);
        out << '\n';
    }
}

void write_salience_csv(const std::string& path, const Salience& s) {
    std::ofstream out = open_out(path);
    out << "midi";
    for (std::size_t f = 0; f < s.num_frames; ++f)
        out << ',' << static_cast<double>(f) * s.frame_hop_seconds;
    out << '\n';
    for (std::size_t b = 0; b < kNumBands; ++b) {
        out << (kMidiLow + static_cast<int>(b));
        for (std::size_t f = 0; f < s.num_frames; ++f) out << ',' << s.at(b, f);
        out << '\n';
    }
}

void write_pianoroll_csv(const std::string& path, const PianoRoll& roll) {
    std::ofstream out = open_out(path);
    out << "midi";
    for (std::size_t f = 0; f < roll.num_frames; ++f)
        out << ',' << static_cast<double>(f) * roll.frame_hop_seconds;
    out << '\n';
    for (std::size_t b = 0; b < kNumBands; ++b) {
        out << (kMidiLow + static_cast<int>(b));
        for (std::size_t f = 0; f < roll.num_frames; ++f)
            out << ',' << (roll.at(b, f) ? 1 : 0);
        out << '\n';
    }
}

void write_predictions_txt(const std::string& path, const PianoRoll& roll) {
    std::ofstream out = open_out(path);
    for (std::size_t f = 0; f < roll.num_frames; ++f) {
        out << static_cast<double>(f) * roll.frame_hop_seconds;
        for (std::size_t b = 0; b < kNumBands; ++b)
            if (roll.at(b, f)) out << ' ' << midi_to_hz(kMidiLow + static_cast<int>(b));
        out << '\n';
    }
}

void write_counts_csv(const std::string& path, const EvalCounts& counts, const Scores& s) {
    std::ofstream out = open_out(path);
    out << "tp,fp,fn,precision,recall,f_score\n";
    out << counts.tp << ',' << counts.fp << ',' << counts.fn << ',' << s.precision << ','
        << s.recall << ',' << s.f_score << '\n';
}

}  // namespace mlccfp
