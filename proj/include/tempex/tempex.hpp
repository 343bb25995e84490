// Copyright 2026 The Tempex Authors
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

#ifndef TEMPEX_TEMPEX_HPP_
#define TEMPEX_TEMPEX_HPP_

#include "tempex/calendar.hpp"
#include "tempex/corpus.hpp"
#include "tempex/errors.hpp"
#include "tempex/eval.hpp"
#include "tempex/maxent.hpp"
#include "tempex/normalizer.hpp"
#include "tempex/pipeline.hpp"
#include "tempex/recognizer.hpp"
#include "tempex/relations.hpp"
#include "tempex/signals.hpp"

#endif  // TEMPEX_TEMPEX_HPP_
