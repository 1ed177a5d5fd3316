// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "relaysec/analytic.hpp"
#include "relaysec/channel.hpp"
#include "relaysec/config.hpp"
#include "relaysec/csvio.hpp"
#include "relaysec/montecarlo.hpp"
#include "relaysec/protocols.hpp"
#include "relaysec/quadrature.hpp"
#include "relaysec/rng.hpp"
#include "relaysec/scenario.hpp"
