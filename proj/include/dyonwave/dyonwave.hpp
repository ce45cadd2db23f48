// dyonwave.hpp - umbrella header

#pragma once

#include "dyonwave/classical.hpp"
#include "dyonwave/config.hpp"
#include "dyonwave/constants.hpp"
#include "dyonwave/dyon.hpp"
#include "dyonwave/dyon_qed.hpp"
#include "dyonwave/errors.hpp"
#include "dyonwave/external_field.hpp"
#include "dyonwave/fit.hpp"
#include "dyonwave/grid.hpp"
#include "dyonwave/io.hpp"
#include "dyonwave/operators.hpp"
#include "dyonwave/parallel.hpp"
#include "dyonwave/poisson.hpp"
#include "dyonwave/quantum_wave.hpp"
#include "dyonwave/quaternion.hpp"
#include "dyonwave/random.hpp"
#include "dyonwave/scenario.hpp"
#include "dyonwave/wave_stepper.hpp"
