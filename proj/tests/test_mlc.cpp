#include <doctest.h>

#include <random>

#include "mlccfp/mlc.hpp"
#include "oracles.hpp"

using namespace mlccfp;

namespace {

Spectrogram random_spectrogram(std::size_t n, std::size_t m, std::uint64_t seed,
                               Axis axis = Axis::frequency) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(0.0, 1.0);
    Spectrogram s;
    s.num_bins = n;
    s.num_frames = m;
    s.axis = axis;
    s.bin_step = 1000.0 / static_cast<double>(n);
    s.frame_hop_seconds = 0.01;
    s.values.resize(n * m);
    for (double& v : s.values) v = dist(rng);
    return s;
}

TimeSeries random_signal(std::size_t len, std::uint64_t seed, double fs = 1000.0) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    TimeSeries x;
    x.sample_rate = fs;
    x.samples.resize(len);
    for (double& v : x.samples) v = dist(rng);
    return x;
}

}  // namespace

TEST_CASE("layer0 with gamma 1 is the identity") {
    auto s = random_spectrogram(32, 3, 1);
    auto z0 = compute_layer0(s, 1.0);
    CHECK(z0.values == s.values);
}

TEST_CASE("layer0 with gamma 2 squares magnitudes") {
    auto s = random_spectrogram(32, 3, 2);
    auto z0 = compute_layer0(s, 2.0);
    for (std::size_t i = 0; i < s.values.size(); ++i)
        CHECK(z0.values[i] == doctest::Approx(s.values[i] * s.values[i]).epsilon(1e-12));
}

TEST_CASE("layer0 of zero matrix is zero") {
    Spectrogram s = random_spectrogram(16, 2, 3);
    std::fill(s.values.begin(), s.values.end(), 0.0);
    auto z0 = compute_layer0(s, 0.24);
    for (double v : z0.values) CHECK(v == 0.0);
}

TEST_CASE("layer0 rejects nonpositive gamma") {
    auto s = random_spectrogram(16, 1, 4);
    CHECK_THROWS_AS(compute_layer0(s, 0.0), std::invalid_argument);
}

TEST_CASE("flat spectrum column with masking becomes zero") {
    Spectrogram s = random_spectrogram(64, 1, 5);
    std::fill(s.values.begin(), s.values.end(), 3.5);
    LayerParams params{1.0, std::size_t{1}};
    auto z1 = compute_next_layer(s, params);
    for (double v : z1.values) CHECK(v == 0.0);
    CHECK(z1.axis == Axis::quefrency);
}

TEST_CASE("unmasked layer 1 with gammas (2,1) equals circular ACF oracle") {
    // The unnormalized forward DFT convention carries a factor N against the
    // plain time-domain autocorrelation.
    const std::size_t n = 256;
    auto x = random_signal(n, 6);
    WindowSpec spec{WindowKind::blackman_harris, n, n, n};
    auto mags = stft_magnitude(x, spec);
    auto z0 = compute_layer0(mags, 2.0);
    auto z1 = compute_next_layer(z0, LayerParams{1.0, std::nullopt});

    auto w = make_window(spec);
    std::vector<double> frame(n);
    for (std::size_t m = 0; m < n; ++m) frame[m] = x.samples[m] * w[m];
    auto acf = oracles::circular_acf(frame);
    for (std::size_t q = 0; q < n; ++q) {
        const double expect = std::max(0.0, static_cast<double>(n) * acf[q]);
        CHECK(std::abs(z1.at(q, 0) - expect) <= 1e-9 * std::max(1.0, std::abs(expect)));
    }
}

TEST_CASE("stack of depth 0 is the activated spectrogram") {
    auto x = random_signal(300, 7);
    MlcConfig cfg;
    cfg.window = WindowSpec{WindowKind::rectangular, 128, 128, 64};
    cfg.gammas = {0.5};
    cfg.cutoff_frequency_hz = 20.0;
    auto stack = compute_stack(x, cfg);
    CHECK(stack.depth() == 0);
    auto mags = stft_magnitude(x, cfg.window);
    auto z0 = compute_layer0(mags, 0.5);
    CHECK(stack.layer(0).values == z0.values);
}

TEST_CASE("axis alternation and nonnegativity across the stack") {
    auto x = random_signal(600, 8);
    MlcConfig cfg;
    cfg.window = WindowSpec{WindowKind::blackman_harris, 128, 128, 64};
    cfg.gammas = {0.24, 0.6, 1.0, 0.8, 0.9};
    cfg.cutoff_frequency_hz = 30.0;
    cfg.cutoff_quefrency_s = 0.002;
    auto stack = compute_stack(x, cfg);
    REQUIRE(stack.depth() == 4);
    for (std::size_t l = 0; l < stack.layers.size(); ++l) {
        CHECK(stack.layer(l).axis == (l % 2 == 0 ? Axis::frequency : Axis::quefrency));
        for (double v : stack.layer(l).values) {
            CHECK(v >= 0.0);
            CHECK(std::isfinite(v));
        }
    }
}

TEST_CASE("pre-activation columns are even-symmetric for deeper layers") {
    auto x = random_signal(500, 9);
    MlcConfig cfg;
    cfg.window = WindowSpec{WindowKind::rectangular, 200, 200, 100};
    cfg.gammas = {0.5, 0.7};
    cfg.cutoff_frequency_hz = 25.0;
    cfg.cutoff_quefrency_s = 0.002;
    auto stack = compute_stack(x, cfg);
    // gamma = 1 and no mask exposes the raw transform of the last layer
    auto raw = compute_next_layer(stack.layer(1), LayerParams{1.0, std::nullopt});
    const std::size_t n = raw.num_bins;
    double scale = 0.0;
    for (double v : raw.values) scale = std::max(scale, std::abs(v));
    for (std::size_t f = 0; f < raw.num_frames; ++f)
        for (std::size_t i = 1; i < n / 2; ++i)
            CHECK(std::abs(raw.at(i, f) - raw.at(n - i, f)) <= 1e-9 * scale);
}

TEST_CASE("scaling the input scales every layer by the gamma product") {
    auto x = random_signal(500, 10);
    const double alpha = 2.0;
    TimeSeries scaled = x;
    for (double& v : scaled.samples) v *= alpha;

    MlcConfig cfg;
    cfg.window = WindowSpec{WindowKind::blackman_harris, 128, 128, 64};
    cfg.gammas = {0.24, 0.6, 1.0};
    cfg.cutoff_frequency_hz = 30.0;
    cfg.cutoff_quefrency_s = 0.002;

    auto a = compute_stack(x, cfg);
    auto b = compute_stack(scaled, cfg);
    double gamma_product = 1.0;
    for (std::size_t l = 0; l < a.layers.size(); ++l) {
        gamma_product *= cfg.gammas[l];
        const double factor = std::pow(alpha, gamma_product);
        for (std::size_t i = 0; i < a.layer(l).values.size(); ++i) {
            const double expect = factor * a.layer(l).values[i];
            CHECK(std::abs(b.layer(l).values[i] - expect) <=
                  1e-9 * std::max(1.0, std::abs(expect)));
        }
        // peak bins unchanged per frame
        for (std::size_t f = 0; f < a.layer(l).num_frames; ++f) {
            std::size_t arg_a = 0, arg_b = 0;
            for (std::size_t k = 0; k < a.layer(l).num_bins; ++k) {
                if (a.layer(l).at(k, f) > a.layer(l).at(arg_a, f)) arg_a = k;
                if (b.layer(l).at(k, f) > b.layer(l).at(arg_b, f)) arg_b = k;
            }
            CHECK(arg_a == arg_b);
        }
    }
}

TEST_CASE("config validation rejects bad cutoffs and layer counts") {
    MlcConfig cfg;
    cfg.window = WindowSpec{WindowKind::rectangular, 64, 64, 32};
    cfg.gammas = {0.5, 0.5};
    cfg.cutoff_frequency_hz = 600.0;  // k_c >= N/2 at fs = 1000
    CHECK_THROWS_AS(cfg.validate(1000.0), std::invalid_argument);

    cfg.cutoff_frequency_hz = 20.0;
    cfg.cutoff_quefrency_s = 0.064;  // n_c >= N/2
    CHECK_THROWS_AS(cfg.validate(1000.0), std::invalid_argument);

    cfg.cutoff_quefrency_s = 0.002;
    cfg.gammas.assign(kMaxLayers + 2, 0.5);
    CHECK_THROWS_AS(cfg.validate(1000.0), std::invalid_argument);
}
