#pragma once

#include "basor_chen.hpp"
#include "chebyshev.hpp"
#include "circle.hpp"
#include "common.hpp"
#include "contour.hpp"
#include "exact.hpp"
#include "free_energy.hpp"
#include "groups.hpp"
#include "io.hpp"
#include "partitions.hpp"
#include "quadrature.hpp"
#include "real_line.hpp"
#include "romanovski.hpp"
#include "special.hpp"
#include "symbol.hpp"
