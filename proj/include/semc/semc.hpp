// Copyright 2026 The semc Authors
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

#include "semc/adaptation.hpp"
#include "semc/core.hpp"
#include "semc/evidence.hpp"
#include "semc/kernels.hpp"
#include "semc/metrics.hpp"
#include "semc/problems/bimodal.hpp"
#include "semc/problems/exhaustive.hpp"
#include "semc/problems/spectral.hpp"
#include "semc/random.hpp"
#include "semc/samplers/remc.hpp"
#include "semc/samplers/semc.hpp"
#include "semc/samplers/sequential.hpp"
#include "semc/samplers/smc.hpp"
#include "semc/worker_pool.hpp"
