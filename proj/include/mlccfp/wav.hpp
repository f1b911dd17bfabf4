#ifndef MLCCFP_WAV_HPP
#define MLCCFP_WAV_HPP

#include <string>

#include "mlccfp/signal.hpp"

namespace mlccfp {

enum class WavFormat { pcm16, float32 };

/// Reads mono or multi-channel PCM16 / float32 RIFF WAV; channels are
/// averaged down to mono.
TimeSeries read_wav(const std::string& path);

void write_wav(const std::string& path, const TimeSeries& x,
               WavFormat format = WavFormat::float32);

}  // namespace mlccfp

#endif
