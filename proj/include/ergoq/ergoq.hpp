/*
 *   Copyright 2026 The ergoq Authors
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

#pragma once

#include "ergoq/error.hpp"
#include "ergoq/qrseq.hpp"
#include "ergoq/discrepancy.hpp"
#include "ergoq/fuzzy_matrix.hpp"
#include "ergoq/power_analysis.hpp"
#include "ergoq/io.hpp"
#include "ergoq/simulation.hpp"
#include "ergoq/report.hpp"
#include "ergoq/config.hpp"
