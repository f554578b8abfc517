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

#include "extmatch/mode_matrix.h"

#include "extmatch/error.h"

namespace extmatch {

double unitarity_deviation(const ModeMatrix &v) {
    if (v.rows() == 0) {
        return 0.0;
    }
    return (v.adjoint() * v - ModeMatrix::Identity(v.rows(), v.cols())).cwiseAbs().maxCoeff();
}

Eigen::MatrixXcd &DeterminantWorkspace::buffer(size_t h) {
    if (static_cast<size_t>(buffer_.rows()) != h) {
        buffer_.resize(h, h);
    }
    return buffer_;
}

void DeterminantWorkspace::gather(const ModeMatrix &v, std::span<const size_t> rows, std::span<const size_t> cols) {
    auto &buf = buffer(rows.size());
    for (size_t r = 0; r < rows.size(); r++) {
        for (size_t c = 0; c < cols.size(); c++) {
            buf(r, c) = v(rows[r], cols[c]);
        }
    }
}

void DeterminantWorkspace::gather_rows(const ModeMatrix &v, std::span<const size_t> rows) {
    auto &buf = buffer(rows.size());
    for (size_t r = 0; r < rows.size(); r++) {
        buf.row(r) = v.row(rows[r]);
    }
}

Complex DeterminantWorkspace::determinant() {
    if (buffer_.rows() == 0) {
        return 1.0;
    }
    // Gaussian elimination with partial pivoting. Only U's diagonal is
    // needed, so L and the columns left of the pivot are not kept.
    auto &u = buffer_;
    Eigen::Index m = u.rows();
    Complex det = 1.0;
    for (Eigen::Index k = 0; k < m; k++) {
        Eigen::Index r = m - k - 1;
        Eigen::Index p;
        // |z|^2 ranks pivots like |z| without a hypot per entry.
        if (u.col(k).tail(m - k).cwiseAbs2().maxCoeff(&p) == 0.0) {
            return 0.0;
        }
        p += k;
        if (p != k) {
            u.row(k).tail(m - k).swap(u.row(p).tail(m - k));
            det = -det;
        }
        Complex pivot = u(k, k);
        det *= pivot;
        u.col(k).tail(r) *= 1.0 / pivot;
        for (Eigen::Index j = k + 1; j < m; j++) {
            u.col(j).tail(r) -= u(k, j) * u.col(k).tail(r);
        }
    }
    return det;
}

Complex amplitude(const ModeMatrix &v, const BasisState &a, const BasisState &b) {
    size_t n = static_cast<size_t>(v.rows());
    if (a.num_modes() != n || b.num_modes() != n || static_cast<size_t>(v.cols()) != n) {
        throw input_error("amplitude: dimension mismatch between mode matrix and basis states");
    }
    if (a.hamming_weight() != b.hamming_weight()) {
        return 0.0;
    }
    auto rows = b.occupied_modes();
    auto cols = a.occupied_modes();
    DeterminantWorkspace workspace;
    workspace.gather(v, rows, cols);
    return workspace.determinant();
}

}  // namespace extmatch
