#pragma once

#include <complex>
#include <numbers>

namespace rmtlab {

using cplx = std::complex<double>;
inline constexpr double pi = std::numbers::pi;

}  // namespace rmtlab
