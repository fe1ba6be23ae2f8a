#pragma once

namespace divlab {

// B_2, B_4, ..., B_32 as exact fractions rounded once to binary64.
inline constexpr double kBernoulli2v[16] = {
    1.0 / 6,       -1.0 / 30,         1.0 / 42,           -1.0 / 30,
    5.0 / 66,      -691.0 / 2730,     7.0 / 6,            -3617.0 / 510,
    43867.0 / 798, -174611.0 / 330,   854513.0 / 138,     -236364091.0 / 2730,
    8553103.0 / 6, -23749461029.0 / 870,
    8615841276005.0 / 14322, -7709321041217.0 / 510};

}  // namespace divlab
