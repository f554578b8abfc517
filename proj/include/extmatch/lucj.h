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

#ifndef EXTMATCH_LUCJ_H
#define EXTMATCH_LUCJ_H

#include <array>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <unordered_map>
#include <utility>
#include <vector>

#include "extmatch/basis_state.h"
#include "extmatch/circuit.h"
#include "extmatch/mode_matrix.h"
#include "extmatch/trajectory.h"

namespace extmatch {

/// A circuit of the form (matchgates) (controlled phases) (matchgates):
///     V(x) = v2 * prod_j D_{x_j}(theta_j) * v1.
struct LucjStructure {
    ModeMatrix v1;
    ModeMatrix v2;
    std::vector<std::pair<size_t, size_t>> cp_pairs;
    std::vector<double> angles;
};

/// Matches the gate list against zero or more matchgates, one or more
/// controlled-phase gates, then zero or more matchgates. Purely syntactic.
std::optional<LucjStructure> detect_lucj(const Circuit &circuit);

/// Modes whose diagonal entry of prod_j D_0^{-1} D_{x_j} is -1, as a bit mask.
using NegatedModes = BitWords;

struct MemoStats {
    uint64_t hits = 0;
    uint64_t misses = 0;
    uint64_t entries = 0;
};

/// Concurrent map from negated-mode patterns to determinants.
class DeterminantMemo {
   public:
    std::optional<Complex> find(const NegatedModes &key) const;
    void insert(const NegatedModes &key, Complex value);
    void clear();
    size_t size() const;

   private:
    struct KeyHash {
        size_t operator()(const NegatedModes &key) const {
            return hash_words({key.data(), key.size()});
        }
    };
    struct Shard {
        mutable std::shared_mutex mutex;
        std::unordered_map<NegatedModes, Complex, KeyHash> map;
    };
    static constexpr size_t kShards = 16;

    Shard &shard_for(const NegatedModes &key) const;

    mutable std::array<Shard, kShards> shards_;
};

class LucjSession;

/// Precomputed factors for the LUCJ fast path. For every trajectory
///     V(x) = base - 2 * sum_{i in N(x)} left.col(i) * right.row(i)
/// with base = left * right, left = v2 * prod_j D_0(theta_j), right = v1.
/// Read-only after construction apart from the session registry used by
/// fast_amplitude.
class LucjCache {
   public:
    explicit LucjCache(const LucjStructure &structure);
    ~LucjCache();
    LucjCache(const LucjCache &) = delete;
    LucjCache &operator=(const LucjCache &) = delete;

    size_t num_modes() const {
        return static_cast<size_t>(base_.rows());
    }
    size_t num_controlled_phases() const {
        return cp_pairs_.size();
    }
    const ModeMatrix &base() const {
        return base_;
    }
    const ModeMatrix &left() const {
        return left_;
    }
    const ModeMatrix &right() const {
        return right_;
    }

    /// Dense left * E_ii * right.
    ModeMatrix correction(size_t mode) const;

    /// N(x): modes touched by an odd number of d_1 branches in x.
    NegatedModes negated_modes(const Trajectory &x) const;
    void negated_modes(const Trajectory &x, NegatedModes &out) const;

    /// Dense base - 2 sum_{i in N(x)} correction(i).
    ModeMatrix trajectory_matrix(const Trajectory &x) const;

    /// <b| V(x) |a> through a memoized per-(a, b) session.
    Complex fast_amplitude(const Trajectory &x, const BasisState &a, const BasisState &b);

    /// Aggregated over every session opened through fast_amplitude.
    MemoStats memo_stats() const;
    void clear_memo();

   private:
    struct PairHash {
        size_t operator()(const std::pair<BasisState, BasisState> &key) const;
    };

    ModeMatrix base_;
    ModeMatrix left_;
    ModeMatrix right_;
    std::vector<std::pair<size_t, size_t>> cp_pairs_;

    mutable std::mutex sessions_mutex_;
    std::unordered_map<std::pair<BasisState, BasisState>, std::unique_ptr<LucjSession>, PairHash> sessions_;
};

LucjCache build_cache(const LucjStructure &structure);

/// Memoized amplitude evaluation for one (a, b) pair. Safe for concurrent
/// calls; each caller supplies its own workspace.
class LucjSession {
   public:
    LucjSession(const LucjCache &cache, const BasisState &a, const BasisState &b);

    struct Workspace {
        DeterminantWorkspace determinant;
        NegatedModes negated;
        std::vector<Eigen::Index> modes;
    };

    Complex amplitude(const Trajectory &x, Workspace &workspace);
    Complex amplitude(const Trajectory &x);

    MemoStats stats() const;
    void clear_memo();

   private:
    Complex evaluate(const NegatedModes &negated, Workspace &workspace) const;

    const LucjCache *cache_;
    bool weight_mismatch_;
    std::vector<size_t> rows_;
    std::vector<size_t> cols_;
    // left[rows, :], right[:, cols] and base[rows, cols] for this pair.
    Eigen::MatrixXcd left_rows_;
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> right_rows_;
    Eigen::MatrixXcd base_block_;
    // Q = right[:, cols] base_block^-1 left[rows, :] and det(base_block),
    // used when base_block is well conditioned.
    bool use_coupling_ = false;
    Complex base_determinant_ = 1.0;
    Eigen::MatrixXcd coupling_;
    DeterminantMemo memo_;
    std::atomic<uint64_t> hits_{0};
    std::atomic<uint64_t> misses_{0};
};

}  // namespace extmatch

#endif
