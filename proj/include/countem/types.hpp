#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>

namespace countem {

template <typename S>
using MatX = Eigen::Matrix<S, Eigen::Dynamic, Eigen::Dynamic>;
template <typename S>
using VecX = Eigen::Matrix<S, Eigen::Dynamic, 1>;

using Scalar = float;
using Mat = MatX<Scalar>;
using Vec = VecX<Scalar>;
using MatD = MatX<double>;
using VecD = VecX<double>;
using MatU8 = MatX<std::uint8_t>;
using VecI = VecX<std::int64_t>;
using Index = Eigen::Index;

// Piano range: pitch index 0 corresponds to MIDI note 21 (A0).
inline constexpr int kDefaultPitchCount = 88;
inline constexpr int kMidiPitchOffset = 21;

inline constexpr double kDefaultFrameLenS = 0.032;

// Guard against float rounding when a time sits exactly on a frame edge.
inline constexpr double kFrameEps = 1e-9;

/// Frame index covering time t (frames are half-open [k*len, (k+1)*len)).
inline Index frame_of(double t_s, double frame_len_s) {
    return static_cast<Index>(std::floor(t_s / frame_len_s + kFrameEps));
}

/// Number of frames needed to cover [0, duration_s).
inline Index frames_for(double duration_s, double frame_len_s) {
    return static_cast<Index>(std::ceil(duration_s / frame_len_s - kFrameEps));
}

}  // namespace countem
