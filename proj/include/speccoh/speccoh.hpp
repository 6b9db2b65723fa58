#pragma once

// Umbrella header.

#include "speccoh/campaign.hpp"
#include "speccoh/commands.hpp"
#include "speccoh/errors.hpp"
#include "speccoh/hermitian.hpp"
#include "speccoh/io.hpp"
#include "speccoh/matrix.hpp"
#include "speccoh/method.hpp"
#include "speccoh/models.hpp"
#include "speccoh/multitaper.hpp"
#include "speccoh/parallel.hpp"
#include "speccoh/pcoh.hpp"
#include "speccoh/rng.hpp"
#include "speccoh/scenario.hpp"
#include "speccoh/shrink_precision.hpp"
#include "speccoh/shrink_spectral.hpp"
#include "speccoh/trace_est.hpp"
#include "speccoh/wishart.hpp"
