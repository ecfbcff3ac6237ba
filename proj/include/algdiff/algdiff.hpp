// Copyright 2026 The algdiff Authors
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


// Umbrella header for the whole library.

#pragma once

#include "algdiff/algebra.hpp"
#include "algdiff/algtodiff.hpp"
#include "algdiff/approx.hpp"
#include "algdiff/bipoly.hpp"
#include "algdiff/bounds.hpp"
#include "algdiff/diffop.hpp"
#include "algdiff/errors.hpp"
#include "algdiff/field.hpp"
#include "algdiff/io.hpp"
#include "algdiff/lab.hpp"
#include "algdiff/lift.hpp"
#include "algdiff/modular.hpp"
#include "algdiff/parse.hpp"
#include "algdiff/random.hpp"
#include "algdiff/rec.hpp"
#include "algdiff/resolvent.hpp"
#include "algdiff/telescope.hpp"
