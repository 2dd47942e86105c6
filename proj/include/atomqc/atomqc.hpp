// Copyright 2026 The atomqc Authors
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

#include "atomqc/barenco.hpp"
#include "atomqc/circuit.hpp"
#include "atomqc/compiler.hpp"
#include "atomqc/error.hpp"
#include "atomqc/matrix_io.hpp"
#include "atomqc/numerics.hpp"
#include "atomqc/qasm.hpp"
#include "atomqc/qrd.hpp"
#include "atomqc/qsd.hpp"
#include "atomqc/quaternion.hpp"
#include "atomqc/retarget.hpp"
#include "atomqc/sequence.hpp"
#include "atomqc/simulator.hpp"
