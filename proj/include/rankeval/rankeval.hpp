/*
 * Copyright 2026 The rankeval Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef RANKEVAL_RANKEVAL_HPP_
#define RANKEVAL_RANKEVAL_HPP_

#include "rankeval/core_log.hpp"
#include "rankeval/evaluation.hpp"
#include "rankeval/interleaving.hpp"
#include "rankeval/jsonl.hpp"
#include "rankeval/matchers.hpp"
#include "rankeval/metrics.hpp"
#include "rankeval/random.hpp"
#include "rankeval/rankers.hpp"
#include "rankeval/simulate.hpp"

#endif  // RANKEVAL_RANKEVAL_HPP_
