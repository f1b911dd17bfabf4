#include <doctest.h>

#include <numeric>
#include <random>

#include "mlccfp/degrade.hpp"
#include "oracles.hpp"

using namespace mlccfp;

TEST_CASE("square wave period and duty structure") {
    auto x = gen_square(2.0, 0.2, 1000.0, 2.0);
    REQUIRE(x.samples.size() == 2000);
    // period 500 samples, 100 high per period
    for (std::size_t p = 0; p < 4; ++p) {
        std::size_t high = 0;
        for (std::size_t i = 0; i < 500; ++i)
            if (x.samples[p * 500 + i] > 0) ++high;
        CHECK(high == 100);
    }
    for (double v : x.samples) CHECK((v == 1.0 || v == -1.0));
}

TEST_CASE("square wave means") {
    auto sym = gen_square(5.0, 0.5, 1000.0, 1.0);  // whole periods
    const double mean =
        std::accumulate(sym.samples.begin(), sym.samples.end(), 0.0) / sym.samples.size();
    CHECK(std::abs(mean) <= 1e-12);

    const double duty = 0.3;
    auto one = gen_square(1.0, duty, 1000.0, 1.0);  // exactly one period
    const double m1 =
        std::accumulate(one.samples.begin(), one.samples.end(), 0.0) / one.samples.size();
    CHECK(m1 == doctest::Approx(2.0 * duty - 1.0).epsilon(1e-12));
}

TEST_CASE("square wave rejects bad parameters") {
    CHECK_THROWS_AS(gen_square(2.0, 0.0, 1000.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(gen_square(2.0, 1.0, 1000.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(gen_square(600.0, 0.2, 1000.0, 1.0), std::invalid_argument);
}

TEST_CASE("constant-law sawtooth has the exact period") {
    const double f0 = 4.0, fs = 1000.0;
    auto x = gen_fm_sawtooth([f0](std::size_t) { return f0; }, fs, 2.0);
    const std::size_t period = static_cast<std::size_t>(fs / f0);
    for (std::size_t i = 0; i + period < x.samples.size(); ++i) {
        // equality modulo the wrap: -1 and (almost) 1 are the same phase
        const double d = std::abs(x.samples[i] - x.samples[i + period]);
        CHECK(std::min(d, 2.0 - d) <= 1e-6);
    }
    for (double v : x.samples) {
        CHECK(v >= -1.0);
        CHECK(v < 1.0);
    }
}

TEST_CASE("FM sawtooth instantaneous frequency tracks the law") {
    const double fs = 1000.0;
    auto law = [fs](std::size_t n) {
        return 2.5 + std::cos(2.0 * M_PI * static_cast<double>(n) / (10.0 * fs));
    };
    auto x = gen_fm_sawtooth(law, fs, 30.0);
    // phase-difference estimate from consecutive ramp values
    for (std::size_t n = 1; n < x.samples.size(); n += 97) {
        double d = (x.samples[n] - x.samples[n - 1]) / 2.0;
        if (d < -0.5) d += 1.0;
        const double freq = d * fs;
        CHECK(freq == doctest::Approx(law(n)).epsilon(0.01));
    }
}

TEST_CASE("sawtooth rejects non-positive instantaneous frequency") {
    CHECK_THROWS_AS(gen_fm_sawtooth([](std::size_t) { return 0.0; }, 1000.0, 1.0),
                    std::invalid_argument);
}

TEST_CASE("butterworth magnitude is -3.01 dB at cutoff") {
    const double fs = 1000.0, cutoff = 50.0;
    for (int order : {4, 10}) {
        for (FilterKind kind : {FilterKind::lowpass, FilterKind::highpass}) {
            TimeSeries probe;
            probe.sample_rate = fs;
            probe.samples.resize(static_cast<std::size_t>(fs) * 30);
            for (std::size_t n = 0; n < probe.samples.size(); ++n)
                probe.samples[n] = std::sin(2.0 * M_PI * cutoff * n / fs);
            auto y = butterworth_apply(probe, ButterworthSpec{order, cutoff, kind});
            const double gain_db =
                20.0 * std::log10(oracles::tail_amplitude(y.samples, fs, cutoff));
            CHECK(std::abs(gain_db - (-3.01)) <= 0.1);
        }
    }
}

TEST_CASE("highpass kills DC in steady state") {
    TimeSeries dc;
    dc.sample_rate = 1000.0;
    dc.samples.assign(20000, 1.0);
    auto y = butterworth_apply(dc, ButterworthSpec{4, 100.0, FilterKind::highpass});
    for (std::size_t i = y.samples.size() - 100; i < y.samples.size(); ++i)
        CHECK(std::abs(y.samples[i]) <= 1e-6);
}

TEST_CASE("butterworth magnitude response is monotone") {
    const double fs = 1000.0, cutoff = 50.0;
    auto gain_at = [&](FilterKind kind, double freq) {
        TimeSeries probe;
        probe.sample_rate = fs;
        probe.samples.resize(static_cast<std::size_t>(fs) * 30);
        for (std::size_t n = 0; n < probe.samples.size(); ++n)
            probe.samples[n] = std::sin(2.0 * M_PI * freq * n / fs);
        auto y = butterworth_apply(probe, ButterworthSpec{4, cutoff, kind});
        return oracles::tail_amplitude(y.samples, fs, freq);
    };
    // 5 log-spaced probes per side of the cutoff
    const std::vector<double> freqs = {5.0, 10.0, 20.0, 35.0, 50.0, 80.0, 120.0, 200.0, 320.0};
    double prev = 1e9;
    for (double f : freqs) {
        const double g = gain_at(FilterKind::lowpass, f);
        CHECK(g <= prev + 1e-3);
        prev = g;
    }
    prev = -1e9;
    for (double f : freqs) {
        const double g = gain_at(FilterKind::highpass, f);
        CHECK(g >= prev - 1e-3);
        prev = g;
    }
}

TEST_CASE("butterworth filtering is linear") {
    TimeSeries a, b;
    a.sample_rate = b.sample_rate = 1000.0;
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> dist(-1.0, 1.0);
    a.samples.resize(2000);
    b.samples.resize(2000);
    for (auto& v : a.samples) v = dist(rng);
    for (auto& v : b.samples) v = dist(rng);

    ButterworthSpec spec{4, 80.0, FilterKind::lowpass};
    const double ca = 1.7, cb = -0.4;
    TimeSeries mix = a;
    for (std::size_t i = 0; i < mix.samples.size(); ++i)
        mix.samples[i] = ca * a.samples[i] + cb * b.samples[i];
    auto fa = butterworth_apply(a, spec);
    auto fb = butterworth_apply(b, spec);
    auto fmix = butterworth_apply(mix, spec);
    for (std::size_t i = 0; i < mix.samples.size(); ++i) {
        const double expect = ca * fa.samples[i] + cb * fb.samples[i];
        CHECK(std::abs(fmix.samples[i] - expect) <= 1e-9 * std::max(1.0, std::abs(expect)));
    }
}

TEST_CASE("butterworth rejects invalid specs") {
    TimeSeries x;
    x.sample_rate = 1000.0;
    x.samples.assign(100, 0.5);
    CHECK_THROWS(butterworth_apply(x, ButterworthSpec{0, 50.0, FilterKind::lowpass}));
    CHECK_THROWS(butterworth_apply(x, ButterworthSpec{4, 500.0, FilterKind::lowpass}));
    CHECK_THROWS(butterworth_apply(x, ButterworthSpec{4, 0.0, FilterKind::lowpass}));
}

TEST_CASE("pink noise is deterministic per seed") {
    auto a = gen_pink(4096, 1000.0, 77);
    auto b = gen_pink(4096, 1000.0, 77);
    auto c = gen_pink(4096, 1000.0, 78);
    CHECK(a.samples == b.samples);
    CHECK(a.samples != c.samples);
}

TEST_CASE("pink noise PSD slope is about -10 dB per decade") {
    const double fs = 1000.0;
    std::vector<std::pair<double, double>> averaged;
    const std::size_t nfft = 512;
    std::vector<double> power;
    std::vector<double> freqs;
    const int realizations = 50;
    for (int r = 0; r < realizations; ++r) {
        auto x = gen_pink(4096, fs, 1000 + r);
        auto psd = oracles::welch_psd(x.samples, fs, nfft);
        if (power.empty()) {
            power.assign(psd.size(), 0.0);
            for (const auto& [f, p] : psd) freqs.push_back(f);
        }
        for (std::size_t i = 0; i < psd.size(); ++i) power[i] += psd[i].second;
    }
    for (std::size_t i = 0; i < power.size(); ++i)
        averaged.emplace_back(freqs[i], power[i] / realizations);
    const double slope = oracles::psd_slope_db_per_decade(averaged, 10.0, 200.0);
    CHECK(std::abs(slope - (-10.0)) <= 1.5);
}

TEST_CASE("pink noise mean is within the standard-error bound") {
    auto x = gen_pink(1000000, 1000.0, 5);
    const double mean =
        std::accumulate(x.samples.begin(), x.samples.end(), 0.0) / x.samples.size();
    double var = 0.0;
    for (double v : x.samples) var += (v - mean) * (v - mean);
    const double std_dev = std::sqrt(var / x.samples.size());
    CHECK(std::abs(mean) <= 3.0 * std_dev / 1000.0);
}

TEST_CASE("mix_at_snr hits the requested power ratio") {
    auto sig = gen_square(5.0, 0.5, 1000.0, 4.0);
    auto noise = gen_pink(sig.samples.size(), 1000.0, 8);

    auto power = [](const std::vector<double>& v) {
        double acc = 0.0;
        for (double s : v) acc += s * s;
        return acc / v.size();
    };

    SUBCASE("0 dB equalizes powers") {
        auto mixed = mix_at_snr(sig, noise, 0.0);
        std::vector<double> delta(sig.samples.size());
        for (std::size_t i = 0; i < delta.size(); ++i)
            delta[i] = mixed.samples[i] - sig.samples[i];
        CHECK(power(delta) == doctest::Approx(power(sig.samples)).epsilon(1e-9));
    }
    SUBCASE("10 dB puts noise power at a tenth") {
        auto mixed = mix_at_snr(sig, noise, 10.0);
        std::vector<double> delta(sig.samples.size());
        for (std::size_t i = 0; i < delta.size(); ++i)
            delta[i] = mixed.samples[i] - sig.samples[i];
        CHECK(power(delta) == doctest::Approx(0.1 * power(sig.samples)).epsilon(1e-9));
    }
    SUBCASE("doubling the signal doubles the scaled noise amplitude") {
        auto m1 = mix_at_snr(sig, noise, 10.0);
        TimeSeries big = sig;
        for (double& v : big.samples) v *= 2.0;
        auto m2 = mix_at_snr(big, noise, 10.0);
        const double n1 = m1.samples[0] - sig.samples[0];
        const double n2 = m2.samples[0] - big.samples[0];
        CHECK(n2 == doctest::Approx(2.0 * n1).epsilon(1e-9));
    }
    SUBCASE("zero-power inputs are rejected") {
        TimeSeries silent;
        silent.sample_rate = 1000.0;
        silent.samples.assign(sig.samples.size(), 0.0);
        CHECK_THROWS_AS(mix_at_snr(silent, noise, 0.0), std::invalid_argument);
        CHECK_THROWS_AS(mix_at_snr(sig, silent, 0.0), std::invalid_argument);
    }
}

TEST_CASE("add_impulse touches exactly one sample") {
    auto x = gen_square(2.0, 0.2, 1000.0, 90.0);
    SUBCASE("zero amplitude leaves the signal unchanged") {
        auto y = add_impulse(x, 10.0, 0.0);
        CHECK(y.samples == x.samples);
    }
    SUBCASE("one sample modified at the 80 s index") {
        auto y = add_impulse(x, 80.0, 5.0);
        std::size_t changed = 0, where = 0;
        for (std::size_t i = 0; i < x.samples.size(); ++i)
            if (y.samples[i] != x.samples[i]) {
                ++changed;
                where = i;
            }
        CHECK(changed == 1);
        CHECK(where == 80000);
        CHECK(y.samples[where] - x.samples[where] == doctest::Approx(5.0));
    }
    SUBCASE("out-of-range time is rejected") {
        CHECK_THROWS_AS(add_impulse(x, 90.0, 1.0), std::invalid_argument);
        CHECK_THROWS_AS(add_impulse(x, -1.0, 1.0), std::invalid_argument);
    }
}

TEST_CASE("simulation builder is deterministic and covers the impulse") {
    SimulationRecipe recipe;
    recipe.duration_s = 100.0;
    auto a = build_simulation(recipe);
    auto b = build_simulation(recipe);
    CHECK(a.noisy.samples == b.noisy.samples);
    CHECK(a.clean.duration_seconds() >= 100.0 - 1e-9);
    CHECK(a.x1.samples.size() == a.x2.samples.size());
}
