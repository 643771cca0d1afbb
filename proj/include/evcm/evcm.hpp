// SPDX-License-Identifier: Apache-2.0
// evcm - eigen-domain MIMO channel simulator
//
// Umbrella header: pulls in the whole library.
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

#ifndef EVCM_EVCM_HPP
#define EVCM_EVCM_HPP

#include "evcm/analysis.hpp"
#include "evcm/det_classes.hpp"
#include "evcm/doppler.hpp"
#include "evcm/linalg.hpp"
#include "evcm/manifest.hpp"
#include "evcm/model.hpp"
#include "evcm/rng.hpp"
#include "evcm/scenario.hpp"
#include "evcm/spectrum.hpp"
#include "evcm/svd.hpp"
#include "evcm/trace_io.hpp"
#include "evcm/validation.hpp"

#endif // EVCM_EVCM_HPP
