// Copyright 2026 The blotto-fp Authors.
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

#include "blotto/best_response.hpp"
#include "blotto/fictitious_play.hpp"
#include "blotto/game.hpp"
#include "blotto/io.hpp"
#include "blotto/payoff.hpp"
#include "blotto/simplex.hpp"
