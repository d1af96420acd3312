/*
 * Copyright 2026 the reswb authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef RESWB_RESWB_HPP_
#define RESWB_RESWB_HPP_

#include "reswb/val.hpp"
#include "reswb/report.hpp"
#include "reswb/pcm.hpp"
#include "reswb/state.hpp"
#include "reswb/resource.hpp"
#include "reswb/morphism.hpp"
#include "reswb/tree.hpp"
#include "reswb/semantics.hpp"
#include "reswb/catalog.hpp"
#include "reswb/checker.hpp"
#include "reswb/scenarios.hpp"

#endif  // RESWB_RESWB_HPP_
