// Copyright 2026 The extmatch Authors
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

#ifndef EXTMATCH_MODE_MATRIX_H
#define EXTMATCH_MODE_MATRIX_H

#include <complex>
#include <span>

#include <Eigen/Dense>

#include "extmatch/basis_state.h"
#include "extmatch/gate_unitaries.h"

namespace extmatch {

/// n x n single-particle mode transformation. Entry (r, c) is the amplitude
/// for a particle in mode c to end in mode r, so a gate applied after V
/// left-multiplies it.
using ModeMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

inline constexpr double kModeMatrixUnitarityTolerance = 1e-10;

double unitarity_deviation(const ModeMatrix &v);

/// Reusable buffers for gathered-submatrix determinants.
class DeterminantWorkspace {
   public:
    /// Gathered h x h buffer, resized on demand.
    Eigen::MatrixXcd &buffer(size_t h);
    /// Gathers v[rows, cols] into the buffer.
    void gather(const ModeMatrix &v, std::span<const size_t> rows, std::span<const size_t> cols);
    /// Listed rows, all columns.
    void gather_rows(const ModeMatrix &v, std::span<const size_t> rows);
    /// Determinant of the current buffer by LU with partial pivoting,
    /// factored in place (the buffer is overwritten). An empty buffer has
    /// determinant 1.
    Complex determinant();

   private:
    Eigen::MatrixXcd buffer_;
};

/// <b| M |a> for the matchgate circuit M with mode transformation v: the
/// determinant of the submatrix with rows at b's occupied modes and
/// columns at a's. Exactly zero when the Hamming weights differ.
Complex amplitude(const ModeMatrix &v, const BasisState &a, const BasisState &b);

}  // namespace extmatch

#endif
