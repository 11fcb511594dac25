// Copyright 2026 The Authors.
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

#ifndef SPECGEOM_SPECGEOM_HPP_
#define SPECGEOM_SPECGEOM_HPP_

#include "specgeom/bounds.hpp"
#include "specgeom/comparison.hpp"
#include "specgeom/cutoff.hpp"
#include "specgeom/decomposition.hpp"
#include "specgeom/eigensolve.hpp"
#include "specgeom/error.hpp"
#include "specgeom/grid.hpp"
#include "specgeom/manifolds.hpp"
#include "specgeom/metric.hpp"
#include "specgeom/metric_space.hpp"
#include "specgeom/monotonicity.hpp"
#include "specgeom/pipeline.hpp"
#include "specgeom/quadrature.hpp"
#include "specgeom/rayleigh.hpp"
#include "specgeom/report.hpp"
#include "specgeom/rng.hpp"
#include "specgeom/sampling.hpp"
#include "specgeom/scenarios.hpp"
#include "specgeom/space_io.hpp"
#include "specgeom/spectra.hpp"

#endif  // SPECGEOM_SPECGEOM_HPP_
