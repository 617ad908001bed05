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

// Joint-strategy index arithmetic. The normative flattening is row-major with
// player 1 slowest: |s1,...,sk> -> ((s1*n2 + s2)*n3 + s3)...

#ifndef QCE_INDEXING_HPP
#define QCE_INDEXING_HPP

#include <cstddef>
#include <vector>

#include "qce/errors.hpp"

namespace qce {

inline std::size_t joint_count(const std::vector<std::size_t>& dims) {
  std::size_t n = 1;
  for (std::size_t d : dims) n *= d;
  return n;
}

inline std::vector<std::size_t> row_major_strides(const std::vector<std::size_t>& dims) {
  std::vector<std::size_t> strides(dims.size());
  std::size_t s = 1;
  for (std::size_t l = dims.size(); l-- > 0;) {
    strides[l] = s;
    s *= dims[l];
  }
  return strides;
}

inline std::size_t flatten(const std::vector<std::size_t>& coords,
                           const std::vector<std::size_t>& strides) {
  std::size_t idx = 0;
  for (std::size_t l = 0; l < coords.size(); ++l) idx += coords[l] * strides[l];
  return idx;
}

inline std::vector<std::size_t> unflatten(std::size_t idx, const std::vector<std::size_t>& strides) {
  std::vector<std::size_t> coords(strides.size());
  for (std::size_t l = 0; l < strides.size(); ++l) {
    coords[l] = idx / strides[l];
    idx %= strides[l];
  }
  return coords;
}

// Maps (analyzed player's coordinate i, opponents' reduced joint coordinate j)
// to the original flat joint index. The reduced coordinate enumerates the
// remaining players row-major in their original order.
class PlayerSplit {
 public:
  PlayerSplit(const std::vector<std::size_t>& dims, std::size_t player)
      : dims_(dims), player_(player) {
    if (player >= dims.size())
      throw Error(ErrorCode::DimensionMismatch, "player index out of range");
    strides_ = row_major_strides(dims);
    for (std::size_t l = 0; l < dims.size(); ++l)
      if (l != player) reduced_dims_.push_back(dims[l]);
    if (reduced_dims_.empty()) reduced_dims_.push_back(1);
    reduced_strides_ = row_major_strides(reduced_dims_);
  }

  std::size_t own_count() const { return dims_[player_]; }
  std::size_t opponents_count() const { return joint_count(reduced_dims_); }

  std::size_t joint_index(std::size_t own, std::size_t opp) const {
    std::size_t idx = own * strides_[player_];
    if (dims_.size() == 1) return idx;
    const std::vector<std::size_t> coords = unflatten(opp, reduced_strides_);
    std::size_t l = 0;
    for (std::size_t p = 0; p < dims_.size(); ++p) {
      if (p == player_) continue;
      idx += coords[l++] * strides_[p];
    }
    return idx;
  }

 private:
  std::vector<std::size_t> dims_;
  std::size_t player_;
  std::vector<std::size_t> strides_;
  std::vector<std::size_t> reduced_dims_;
  std::vector<std::size_t> reduced_strides_;
};

}  // namespace qce

#endif  // QCE_INDEXING_HPP
