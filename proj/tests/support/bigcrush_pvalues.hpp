#pragma once

#include <array>

namespace rcf::testdata {

// p-values of 50 consecutive forward-bit runs of BigCrush test 11, as tabulated.
inline constexpr std::array<double, 50> kBigCrushPValues = {
    0.60, 0.45, 0.91, 0.60, 0.28, 0.54, 0.60, 0.81, 0.76, 0.96,    //
    0.09, 0.40, 0.03, 0.35, 0.08, 0.9917, 0.75, 0.03, 0.05, 0.56,  //
    0.67, 0.85, 0.82, 0.33, 0.48, 0.51, 0.75, 0.40, 0.39, 0.76,    //
    0.91, 0.52, 0.66, 0.65, 0.9997, 0.50, 0.00000067, 0.32, 0.52, 0.83,
    0.54, 0.26, 0.86, 0.64, 0.65, 0.96, 0.99, 0.96, 0.18, 0.66,
};

}  // namespace rcf::testdata
