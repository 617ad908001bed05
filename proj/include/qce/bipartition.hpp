// Copyright 2026 The qce Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QCE_BIPARTITION_HPP
#define QCE_BIPARTITION_HPP

#include <vector>

#include "qce/indexing.hpp"
#include "qce/matrix.hpp"

namespace qce {

// Diagonal blocks of a joint-space density matrix with the analyzed player's
// index factored out: blocks[j](i1, i2) = <i1, j| rho |i2, j>, one m x m
// matrix per opponents' joint coordinate j. Each block inherits conjugate
// symmetry from rho.
inline std::vector<ComplexMatrix> bipartition_diag_blocks(const ComplexMatrix& rho,
                                                          std::size_t player,
                                                          const std::vector<std::size_t>& dims) {
  if (!rho.square()) throw Error(ErrorCode::DimensionMismatch, "state matrix must be square");
  if (joint_count(dims) != rho.rows())
    throw Error(ErrorCode::DimensionMismatch, "product of dims differs from the state dimension");
  const PlayerSplit split(dims, player);
  const std::size_t m = split.own_count();
  const std::size_t n = split.opponents_count();

  std::vector<ComplexMatrix> blocks;
  blocks.reserve(n);
  for (std::size_t j = 0; j < n; ++j) {
    ComplexMatrix block(m, m);
    for (std::size_t i1 = 0; i1 < m; ++i1)
      for (std::size_t i2 = 0; i2 < m; ++i2)
        block(i1, i2) = rho(split.joint_index(i1, j), split.joint_index(i2, j));
    blocks.push_back(std::move(block));
  }
  return blocks;
}

}  // namespace qce

#endif  // QCE_BIPARTITION_HPP
