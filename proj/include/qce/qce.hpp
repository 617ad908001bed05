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

#ifndef QCE_QCE_HPP
#define QCE_QCE_HPP

#include "qce/analyzer.hpp"
#include "qce/bipartition.hpp"
#include "qce/deviation.hpp"
#include "qce/errors.hpp"
#include "qce/gain.hpp"
#include "qce/game.hpp"
#include "qce/hermitian.hpp"
#include "qce/matrix.hpp"
#include "qce/state.hpp"

#endif  // QCE_QCE_HPP
