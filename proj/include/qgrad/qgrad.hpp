// Copyright 2026 The qgrad Authors
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

/** @file qgrad.hpp Convenience header pulling in the whole library. */

#pragma once

#include "qgrad/autodiff.hpp"
#include "qgrad/collections.hpp"
#include "qgrad/core.hpp"
#include "qgrad/demos.hpp"
#include "qgrad/device.hpp"
#include "qgrad/devices.hpp"
#include "qgrad/errors.hpp"
#include "qgrad/gaussian_device.hpp"
#include "qgrad/gradients.hpp"
#include "qgrad/linalg.hpp"
#include "qgrad/ops.hpp"
#include "qgrad/optimize.hpp"
#include "qgrad/qnode.hpp"
#include "qgrad/qubit_device.hpp"
#include "qgrad/rng.hpp"
#include "qgrad/templates.hpp"
#include "qgrad/tensor.hpp"
#include "qgrad/version.hpp"
