// Copyright 2026 The opfid Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef OPFID_OPFID_HPP
#define OPFID_OPFID_HPP

#include "opfid/dense_hermitian.hpp"
#include "opfid/echo_oracle.hpp"
#include "opfid/entangling_power.hpp"
#include "opfid/errors.hpp"
#include "opfid/ising_analytic.hpp"
#include "opfid/mixed_fidelity.hpp"
#include "opfid/ofs_engine.hpp"
#include "opfid/random.hpp"
#include "opfid/richardson.hpp"
#include "opfid/sector.hpp"
#include "opfid/spectral.hpp"
#include "opfid/spin_hamiltonian.hpp"

#define OPFID_VERSION "0.1.0"

#endif  // OPFID_OPFID_HPP
