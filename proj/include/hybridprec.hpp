// SPDX-License-Identifier: Apache-2.0
//
// hybridprec: alternating-minimization hybrid precoding for mmWave MIMO
// Copyright (C) 2026 The hybridprec authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef HYBRIDPREC_HYBRIDPREC_HPP
#define HYBRIDPREC_HYBRIDPREC_HPP

#include "hybridprec/baselines.hpp"
#include "hybridprec/channel.hpp"
#include "hybridprec/errors.hpp"
#include "hybridprec/fully_connected.hpp"
#include "hybridprec/manifold.hpp"
#include "hybridprec/numerics.hpp"
#include "hybridprec/partially_connected.hpp"
#include "hybridprec/random.hpp"
#include "hybridprec/reference.hpp"
#include "hybridprec/sdp.hpp"

#endif
