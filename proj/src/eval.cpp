#include "mlccfp/eval.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace mlccfp {

PianoRoll PianoRoll::empty(std::size_t num_frames, double hop_seconds) {
    PianoRoll roll;
    roll.num_frames = num_frames;
    roll.frame_hop_seconds = hop_seconds;
    roll.active.assign(kNumBands * num_frames, 0);
    return roll;
}

PianoRoll pick_pitches(const Salience& salience, double threshold_ratio) {
    if (threshold_ratio <= 0.0 || threshold_ratio >= 1.0)
        throw std::invalid_argument("pick_pitches: threshold_ratio must be in (0,1)");
    PianoRoll roll = PianoRoll::empty(salience.num_frames, salience.frame_hop_seconds);
    for (std::size_t f = 0; f < salience.num_frames; ++f) {
        const double* s = salience.frame(f);
        double frame_max = 0.0;
        for (std::size_t b = 0; b < kNumBands; ++b)
            frame_max = std::max(frame_max, s[b]);
        if (frame_max <= 0.0) continue;
        const double floor_val = threshold_ratio * frame_max;
        for (std::size_t b = 0; b < kNumBands; ++b) {
            if (s[b] < floor_val || s[b] <= 0.0) continue;
            const bool left_ok = (b == 0) || s[b] > s[b - 1];
            const bool right_ok = (b == kNumBands - 1) || s[b] > s[b + 1];
            if (left_ok && right_ok) roll.set(b, f, true);
        }
    }
    return roll;
}

double hz_to_midi(double freq_hz) {
    if (freq_hz <= 0.0) throw std::invalid_argument("hz_to_midi: frequency must be > 0");
    return 69.0 + 12.0 * std::log2(freq_hz / 440.0);
}

double midi_to_hz(double midi) { return 440.0 * std::pow(2.0, (midi - 69.0) / 12.0); }

GroundTruth parse_ground_truth_lines(const std::vector<std::string>& lines,
                                     double frame_hop_seconds, std::size_t num_frames,
                                     bool midi_fields) {
    struct AnnFrame {
        double time;
        std::vector<int> midis;
    };
    std::vector<AnnFrame> ann;
    std::size_t dropped = 0;
    std::size_t line_no = 0;
    for (const std::string& line : lines) {
        ++line_no;
        std::istringstream iss(line);
        double t;
        if (!(iss >> t))
            throw std::runtime_error("ground truth: malformed line " + std::to_string(line_no));
        AnnFrame frame;
        frame.time = t;
        double v;
        while (iss >> v) {
            if (v == 0.0) continue;  // silence marker
            double midi = midi_fields ? v : hz_to_midi(v);
            int m = static_cast<int>(std::llround(midi));
            if (m < kMidiLow || m > kMidiHigh) {
                ++dropped;
                continue;
            }
            frame.midis.push_back(m);
        }
        if (!iss.eof()) throw std::runtime_error("ground truth: malformed line " + std::to_string(line_no));
        ann.push_back(std::move(frame));
    }
    if (ann.empty()) throw std::runtime_error("ground truth: no frames");

    GroundTruth gt;
    gt.dropped_out_of_range = dropped;
    gt.roll = PianoRoll::empty(num_frames, frame_hop_seconds);
    // Nearest annotation frame per analysis frame. Annotation times are
    // assumed sorted; scan once.
    std::size_t j = 0;
    for (std::size_t f = 0; f < num_frames; ++f) {
        const double t = static_cast<double>(f) * frame_hop_seconds;
        while (j + 1 < ann.size() &&
               std::abs(ann[j + 1].time - t) < std::abs(ann[j].time - t))
            ++j;
        for (int m : ann[j].midis) gt.roll.set(static_cast<std::size_t>(m - kMidiLow), f, true);
    }
    return gt;
}

GroundTruth ingest_ground_truth(const std::string& path, double frame_hop_seconds,
                                std::size_t num_frames, bool midi_fields) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("ground truth: cannot open " + path);
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line))
        if (line.find_first_not_of(" \t\r") != std::string::npos) lines.push_back(line);
    return parse_ground_truth_lines(lines, frame_hop_seconds, num_frames, midi_fields);
}

EvalCounts evaluate(const PianoRoll& pred, const PianoRoll& truth) {
    if (pred.num_frames != truth.num_frames)
        throw std::invalid_argument("evaluate: frame count mismatch");
    EvalCounts c;
    for (std::size_t i = 0; i < pred.active.size(); ++i) {
        const bool p = pred.active[i] != 0;
        const bool t = truth.active[i] != 0;
        if (p && t)
            ++c.tp;
        else if (p)
            ++c.fp;
        else if (t)
            ++c.fn;
    }
    return c;
}

Scores scores(const EvalCounts& counts) {
    Scores s;
    const double tp = static_cast<double>(counts.tp);
    if (counts.tp + counts.fp > 0) s.precision = tp / static_cast<double>(counts.tp + counts.fp);
    if (counts.tp + counts.fn > 0) s.recall = tp / static_cast<double>(counts.tp + counts.fn);
    if (s.precision + s.recall > 0.0)
        s.f_score = 2.0 * s.precision * s.recall / (s.precision + s.recall);
    return s;
}

}  // namespace mlccfp
