#ifndef MLCCFP_SIGNAL_HPP
#define MLCCFP_SIGNAL_HPP

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace mlccfp {

/// Sampled real signal with its sample rate.
struct TimeSeries {
    std::vector<double> samples;
    double sample_rate = 0.0;

    double duration_seconds() const {
        return static_cast<double>(samples.size()) / sample_rate;
    }
    void validate() const;
};

enum class WindowKind { blackman_harris, rectangular };

struct WindowSpec {
    WindowKind kind = WindowKind::blackman_harris;
    std::size_t window_length = 0;  // <= dft_size
    std::size_t dft_size = 0;       // N
    std::size_t hop = 0;            // H, samples

    void validate() const;
};

enum class Axis { frequency, quefrency };

/// N x M nonnegative matrix, column per frame. Column-major storage
/// (bins contiguous within a frame).
struct Spectrogram {
    std::vector<double> values;  // num_bins * num_frames
    std::size_t num_bins = 0;    // N
    std::size_t num_frames = 0;  // M
    Axis axis = Axis::frequency;
    double bin_step = 0.0;            // Hz per bin (frequency) or s per bin (quefrency)
    double frame_hop_seconds = 0.0;   // H / f_s

    double& at(std::size_t bin, std::size_t frame) {
        return values[frame * num_bins + bin];
    }
    double at(std::size_t bin, std::size_t frame) const {
        return values[frame * num_bins + bin];
    }
    double* frame(std::size_t n) { return values.data() + n * num_bins; }
    const double* frame(std::size_t n) const { return values.data() + n * num_bins; }
};

std::vector<double> make_window(const WindowSpec& spec);

Spectrogram stft_magnitude(const TimeSeries& x, const WindowSpec& spec);

/// x^gamma for x > 0, exactly 0 for x <= 0, element-wise in place.
void power_activation(std::vector<double>& values, double gamma);
void power_activation(Spectrogram& s, double gamma);

/// 0/1 diagonal of the high-pass filter: mask[i] = 1 iff cutoff < i < N - cutoff.
std::vector<std::uint8_t> highpass_mask(std::size_t n, std::size_t cutoff_index);

/// Forward unnormalized DFT, real part only. Input must be real; for the
/// even-symmetric inputs produced by the layer recursion the imaginary part
/// vanishes, so nothing is discarded.
std::vector<double> real_dft(const std::vector<double>& v);

/// Reusable FFT plan for one transform size (FFTW backed). Not thread-safe;
/// use one instance per thread.
class Fft {
  public:
    explicit Fft(std::size_t n);
    ~Fft();
    Fft(const Fft&) = delete;
    Fft& operator=(const Fft&) = delete;

    std::size_t size() const { return n_; }

    /// |DFT(in)| into out, all N two-sided bins. in/out length N.
    void magnitude(const double* in, double* out);
    /// Re(DFT(in)) into out, all N two-sided bins. in/out length N.
    void real_part(const double* in, double* out);

  private:
    std::size_t n_;
    void* plan_ = nullptr;     // fftw_plan
    double* in_buf_ = nullptr;
    void* out_buf_ = nullptr;  // fftw_complex*
    void execute(const double* in);
};

}  // namespace mlccfp

#endif
