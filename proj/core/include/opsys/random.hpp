// Copyright 2026 The opsys Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <random>

#include "opsys/linalg.hpp"

namespace opsys {

// Every sampling routine takes this generator by reference; nothing in the
// library seeds its own.
using Rng = std::mt19937_64;

double uniform(Rng& rng, double lo = 0.0, double hi = 1.0);
int uniform_int(Rng& rng, int lo, int hi);  // inclusive
double gaussian(Rng& rng);

// Entries with independent standard normal real and imaginary parts.
ComplexMatrix random_gaussian(Rng& rng, int rows, int cols);
// Hermitian part of a Gaussian matrix, scaled to operator norm 1.
ComplexMatrix random_hermitian(Rng& rng, int d);
// Haar unitary via QR with phase fix.
ComplexMatrix random_unitary(Rng& rng, int d);
// Trace-one positive matrix of the given rank (0 means full rank).
ComplexMatrix random_density(Rng& rng, int d, int rank = 0);
ComplexVector random_unit_vector(Rng& rng, int d);

}  // namespace opsys
