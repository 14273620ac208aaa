// Copyright 2026 The cavtel Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CAVTEL_CAVTEL_HPP
#define CAVTEL_CAVTEL_HPP

#include "cavtel/config.hpp"
#include "cavtel/dynamics.hpp"
#include "cavtel/error.hpp"
#include "cavtel/fidelity.hpp"
#include "cavtel/oracle.hpp"
#include "cavtel/protocol.hpp"
#include "cavtel/states.hpp"

#endif  // CAVTEL_CAVTEL_HPP
