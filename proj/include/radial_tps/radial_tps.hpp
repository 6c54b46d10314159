#pragma once

#include "basis.hpp"
#include "compact.hpp"
#include "convergence.hpp"
#include "energy.hpp"
#include "errors.hpp"
#include "io.hpp"
#include "linalg.hpp"
#include "profile.hpp"
#include "quadrature.hpp"
#include "rabut.hpp"
#include "spline.hpp"
