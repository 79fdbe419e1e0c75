// SPDX-License-Identifier: Apache-2.0
//
// csiga: cross-splitting information geometry detectors for MU-MIMO uplink
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

#pragma once

#include "csiga/baselines.hpp"
#include "csiga/channel.hpp"
#include "csiga/constellation.hpp"
#include "csiga/cs_iga.hpp"
#include "csiga/gaussian.hpp"
#include "csiga/harness.hpp"
#include "csiga/ncs_iga.hpp"
#include "csiga/problem.hpp"
#include "csiga/splitting.hpp"
#include "csiga/types.hpp"
#include "csiga/version.hpp"
