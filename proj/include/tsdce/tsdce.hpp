// SPDX-License-Identifier: Apache-2.0
//
// tsdce: transformed spatial domain channel estimation for analog mmWave links
// Copyright (C) 2026 The tsdce authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef TSDCE_TSDCE_HPP
#define TSDCE_TSDCE_HPP

#include "tsdce/algorithm.hpp"
#include "tsdce/analysis/baselines.hpp"
#include "tsdce/analysis/bounds.hpp"
#include "tsdce/analysis/crlb.hpp"
#include "tsdce/bench/bound_sweep.hpp"
#include "tsdce/bench/config.hpp"
#include "tsdce/bench/csv.hpp"
#include "tsdce/bench/experiment.hpp"
#include "tsdce/bench/metrics.hpp"
#include "tsdce/channel.hpp"
#include "tsdce/observation.hpp"

#endif
