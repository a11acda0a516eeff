#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "framelab/frames.hpp"

namespace framelab {

using Rng = std::mt19937_64;

// Random orthogonal (R) or unitary (C) n x n matrix, Haar distributed.
CMatrix random_unitary(int n, Field field, Rng& rng);
std::vector<int> random_permutation(int k, Rng& rng);
// Signs for R, unit phases for C.
std::vector<cplx> random_phases(int k, Field field, Rng& rng);

// Nearest spherical tight frame to `seed` by alternating projection between
// unit-norm frames and tight frames. Throws NumericalRefusal if it stalls.
Frame project_to_spherical_tight(const Frame& seed, double tol = 1e-13, int max_iter = 20000);

// Harmonic frame acted on by a random orthogonal/unitary matrix, permutation
// and phases. Stays inside the harmonic orbit.
Frame random_harmonic_orbit_frame(int k, int n, Field field, Rng& rng);

// Generic spherical tight frame: Gaussian perturbation of a harmonic frame
// projected back onto the spherical tight frames.
Frame random_spherical_tight_frame(int k, int n, Field field, Rng& rng, double spread = 0.6);

// Unit complex numbers with sum of squares zero (a planar spherical tight frame).
std::vector<cplx> random_planar_frame(int k, Rng& rng);

}  // namespace framelab
