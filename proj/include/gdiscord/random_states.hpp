#pragma once

#include <random>

#include "gdiscord/measurement.hpp"
#include "gdiscord/symplectic.hpp"

namespace gdiscord {

// Random physical two-mode covariance: thermal spectrum in [1, nu_max]
// conjugated by a random symplectic built from rotations, single-mode
// squeezers (|r| <= r_max) and a beamsplitter.
TwoModeCov random_physical_state(std::mt19937_64& rng, double nu_max = 4.0, double r_max = 1.0);

// Random product state (C block exactly zero).
TwoModeCov random_product_state(std::mt19937_64& rng, double nu_max = 4.0, double r_max = 1.0);

// Random joint measurement with l drawn from [l_min, 1]. Keeping l_min
// moderately above the homodyne floor keeps 4x4 determinants of the outcome
// covariance well conditioned for identity cross-checks.
JointMeasurement random_joint_measurement(std::mt19937_64& rng, double l_min = 0.01);

// Conjugation by a random local rotation R(alpha) (+) R(beta).
TwoModeCov random_local_rotation(const TwoModeCov& state, std::mt19937_64& rng);

}  // namespace gdiscord
