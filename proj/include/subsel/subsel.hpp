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

#ifndef SUBSEL_SUBSEL_HPP_
#define SUBSEL_SUBSEL_HPP_

#include "subsel/active.hpp"
#include "subsel/dataset.hpp"
#include "subsel/error.hpp"
#include "subsel/harness.hpp"
#include "subsel/kernel.hpp"
#include "subsel/models.hpp"
#include "subsel/objectives.hpp"
#include "subsel/optimizer.hpp"

#endif  // SUBSEL_SUBSEL_HPP_
