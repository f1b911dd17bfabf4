#include "mlccfp/wav.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>

namespace mlccfp {

namespace {

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatFloat = 3;

template <typename T>
T read_le(std::istream& in) {
    unsigned char buf[sizeof(T)];
    in.read(reinterpret_cast<char*>(buf), sizeof(T));
    T v = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) v |= static_cast<T>(buf[i]) << (8 * i);
    return v;
}

template <typename T>
void write_le(std::ostream& out, T v) {
    unsigned char buf[sizeof(T)];
    for (std::size_t i = 0; i < sizeof(T); ++i)
        buf[i] = static_cast<unsigned char>((v >> (8 * i)) & 0xff);
    out.write(reinterpret_cast<const char*>(buf), sizeof(T));
}

}  // namespace

TimeSeries read_wav(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("wav: cannot open " + path);

    char tag[4];
    in.read(tag, 4);
    if (std::memcmp(tag, "RIFF", 4) != 0) throw std::runtime_error("wav: not RIFF: " + path);
    read_le<std::uint32_t>(in);  // riff size
    in.read(tag, 4);
    if (std::memcmp(tag, "WAVE", 4) != 0) throw std::runtime_error("wav: not WAVE: " + path);

    std::uint16_t format = 0, channels = 0, bits = 0;
    std::uint32_t rate = 0;
    std::vector<char> data;
    bool have_fmt = false, have_data = false;
    while (in.read(tag, 4)) {
        const std::uint32_t size = read_le<std::uint32_t>(in);
        if (std::memcmp(tag, "fmt ", 4) == 0) {
            format = read_le<std::uint16_t>(in);
            channels = read_le<std::uint16_t>(in);
            rate = read_le<std::uint32_t>(in);
            read_le<std::uint32_t>(in);  // byte rate
            read_le<std::uint16_t>(in);  // block align
            bits = read_le<std::uint16_t>(in);
            if (size > 16) in.seekg(size - 16, std::ios::cur);
            have_fmt = true;
        } else if (std::memcmp(tag, "data", 4) == 0) {
            data.resize(size);
            in.read(data.data(), size);
            have_data = true;
        } else {
            in.seekg(size + (size % 2), std::ios::cur);
        }
    }
    if (!have_fmt || !have_data) throw std::runtime_error("wav: missing fmt/data chunk: " + path);
    if (channels == 0 || rate == 0) throw std::runtime_error("wav: bad header: " + path);

    const std::size_t bytes_per_sample = bits / 8;
    const std::size_t num_frames = data.size() / (bytes_per_sample * channels);
    TimeSeries out;
    out.sample_rate = static_cast<double>(rate);
    out.samples.resize(num_frames, 0.0);

    const unsigned char* p = reinterpret_cast<const unsigned char*>(data.data());
    for (std::size_t f = 0; f < num_frames; ++f) {
        double acc = 0.0;
        for (std::uint16_t c = 0; c < channels; ++c) {
            const unsigned char* s = p + (f * channels + c) * bytes_per_sample;
            if (format == kFormatPcm && bits == 16) {
                const auto v = static_cast<std::int16_t>(s[0] | (s[1] << 8));
                acc += static_cast<double>(v) / 32768.0;
            } else if (format == kFormatFloat && bits == 32) {
                std::uint32_t u = s[0] | (s[1] << 8) | (s[2] << 16)
                                  | (static_cast<std::uint32_t>(s[3]) << 24);
                float v;
                std::memcpy(&v, &u, 4);
                acc += static_cast<double>(v);
            } else {
                throw std::runtime_error("wav: unsupported format (need PCM16 or float32): " + path);
            }
        }
        out.samples[f] = acc / channels;
    }
    return out;
}

void write_wav(const std::string& path, const TimeSeries& x, WavFormat format) {
    x.validate();
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("wav: cannot write " + path);

    const std::uint16_t bits = (format == WavFormat::pcm16) ? 16 : 32;
    const std::uint16_t fmt_code = (format == WavFormat::pcm16) ? kFormatPcm : kFormatFloat;
    const std::uint32_t rate = static_cast<std::uint32_t>(x.sample_rate);
    const std::uint32_t data_size =
        static_cast<std::uint32_t>(x.samples.size() * (bits / 8));

    out.write("RIFF", 4);
    write_le<std::uint32_t>(out, 36 + data_size);
    out.write("WAVE", 4);
    out.write("fmt ", 4);
    write_le<std::uint32_t>(out, 16);
    write_le<std::uint16_t>(out, fmt_code);
    write_le<std::uint16_t>(out, 1);  // mono
    write_le<std::uint32_t>(out, rate);
    write_le<std::uint32_t>(out, rate * (bits / 8));
    write_le<std::uint16_t>(out, bits / 8);
    write_le<std::uint16_t>(out, bits);
    out.write("data", 4);
    write_le<std::uint32_t>(out, data_size);

    if (format == WavFormat::pcm16) {
        for (double v : x.samples) {
            const double clamped = std::clamp(v, -1.0, 1.0);
            write_le<std::uint16_t>(out, static_cast<std::uint16_t>(
                static_cast<std::int16_t>(std::lround(clamped * 32767.0))));
        }
    } else {
        for (double v : x.samples) {
            const float f = static_cast<float>(v);
            std::uint32_t u;
            std::memcpy(&u, &f, 4);
            write_le<std::uint32_t>(out, u);
        }
    }
    if (!out) throw std::runtime_error("wav: write failed: " + path);
}

}  // namespace mlccfp
