// Copyright 2026 The polyconv Authors.
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

#include "polyconv/amalgam.hpp"
#include "polyconv/convolution.hpp"
#include "polyconv/cuts.hpp"
#include "polyconv/cyclic.hpp"
#include "polyconv/error.hpp"
#include "polyconv/extensions.hpp"
#include "polyconv/ground_set.hpp"
#include "polyconv/inequalities.hpp"
#include "polyconv/io.hpp"
#include "polyconv/ratio.hpp"
#include "polyconv/set_function.hpp"
