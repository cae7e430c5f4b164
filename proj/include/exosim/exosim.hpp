// Copyright 2026 The exosim Authors
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

#include "exosim/types.hpp"
#include "exosim/kinematics.hpp"
#include "exosim/dynamics.hpp"
#include "exosim/controller.hpp"
#include "exosim/reference.hpp"
#include "exosim/sim.hpp"
#include "exosim/config.hpp"
#include "exosim/io.hpp"
#include "exosim/check.hpp"
#include "exosim/cli.hpp"
