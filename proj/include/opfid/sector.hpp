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

#ifndef OPFID_SECTOR_HPP
#define OPFID_SECTOR_HPP

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "opfid/spectral.hpp"
#include "opfid/spin_hamiltonian.hpp"

namespace opfid {

/// Spectrum of one Sz block together with the basis states it lives on.
struct SectorSpectrum {
  std::vector<std::uint64_t> states;
  Spectrum spectrum;
};

inline std::vector<SectorSpectrum> diagonalize_blocks(const std::vector<SzBlock>& blocks) {
  std::vector<SectorSpectrum> out;
  out.reserve(blocks.size());
  for (const auto& b : blocks) out.push_back({b.states, diagonalize(b.matrix)});
  return out;
}

/// Reference to level `level` of sector `sector`.
struct SectorLevel {
  std::size_t sector = 0;
  std::size_t level = 0;
  double energy = 0.0;
};

/// All levels of all sectors, sorted by energy (stable on ties).
inline std::vector<SectorLevel> merged_levels(const std::vector<SectorSpectrum>& sectors) {
  std::vector<SectorLevel> levels;
  for (std::size_t s = 0; s < sectors.size(); ++s) {
    const auto& e = sectors[s].spectrum.energies;
    for (Eigen::Index j = 0; j < e.size(); ++j) {
      levels.push_back({s, static_cast<std::size_t>(j), e(j)});
    }
  }
  std::stable_sort(levels.begin(), levels.end(),
                   [](const SectorLevel& a, const SectorLevel& b) { return a.energy < b.energy; });
  return levels;
}

/// Eigenvector of a sector level embedded in the full 2^N space.
inline Vector embed_level(const SectorSpectrum& sector, std::size_t level, std::size_t dim) {
  Vector v = Vector::Zero(static_cast<Eigen::Index>(dim));
  for (std::size_t i = 0; i < sector.states.size(); ++i) {
    v(static_cast<Eigen::Index>(sector.states[i])) =
        sector.spectrum.vectors(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(level));
  }
  return v;
}

}  // namespace opfid

#endif  // OPFID_SECTOR_HPP
