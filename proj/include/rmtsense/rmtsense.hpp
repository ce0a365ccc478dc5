// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "rmtsense/core_matrix.hpp"
#include "rmtsense/density_estimation.hpp"
#include "rmtsense/detection.hpp"
#include "rmtsense/ensemble_ops.hpp"
#include "rmtsense/errors.hpp"
#include "rmtsense/io.hpp"
#include "rmtsense/parallel.hpp"
#include "rmtsense/rng.hpp"
#include "rmtsense/spectral_laws.hpp"
#include "rmtsense/synthgen.hpp"
#include "rmtsense/version.hpp"
