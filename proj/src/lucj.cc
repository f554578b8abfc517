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

#include "extmatch/lucj.h"

#include <bit>
#include <cmath>

#include "extmatch/error.h"
#include "extmatch/gate_unitaries.h"

namespace extmatch {

namespace {

// Below this reciprocal condition estimate the base block is not inverted.
constexpr double kCouplingMinRcond = 1e-6;

void apply_matchgate(ModeMatrix &v, const Matchgate &g) {
    size_t p = g.lower_mode;
    for (Eigen::Index c = 0; c < v.cols(); c++) {
        Complex lo = v(p, c);
        Complex hi = v(p + 1, c);
        v(p, c) = g.u(0, 0) * lo + g.u(0, 1) * hi;
        v(p + 1, c) = g.u(1, 0) * lo + g.u(1, 1) * hi;
    }
}

}  // namespace

std::optional<LucjStructure> detect_lucj(const Circuit &circuit) {
    size_t n = circuit.num_modes();
    auto gates = circuit.gates();
    size_t first_cp = 0;
    while (first_cp < gates.size() && std::holds_alternative<Matchgate>(gates[first_cp])) {
        first_cp++;
    }
    size_t end_cp = first_cp;
    while (end_cp < gates.size() && std::holds_alternative<ControlledPhase>(gates[end_cp])) {
        end_cp++;
    }
    if (end_cp == first_cp) {
        return std::nullopt;
    }
    for (size_t k = end_cp; k < gates.size(); k++) {
        if (!std::holds_alternative<Matchgate>(gates[k])) {
            return std::nullopt;
        }
    }

    LucjStructure s;
    s.v1 = ModeMatrix::Identity(n, n);
    s.v2 = ModeMatrix::Identity(n, n);
    for (size_t k = 0; k < first_cp; k++) {
        apply_matchgate(s.v1, std::get<Matchgate>(gates[k]));
    }
    for (size_t k = first_cp; k < end_cp; k++) {
        const auto &cp = std::get<ControlledPhase>(gates[k]);
        s.cp_pairs.emplace_back(cp.mode_a, cp.mode_b);
        s.angles.push_back(cp.theta);
    }
    for (size_t k = end_cp; k < gates.size(); k++) {
        apply_matchgate(s.v2, std::get<Matchgate>(gates[k]));
    }
    return s;
}

std::optional<Complex> DeterminantMemo::find(const NegatedModes &key) const {
    Shard &shard = shard_for(key);
    std::shared_lock lock(shard.mutex);
    auto it = shard.map.find(key);
    if (it == shard.map.end()) {
        return std::nullopt;
    }
    return it->second;
}

void DeterminantMemo::insert(const NegatedModes &key, Complex value) {
    Shard &shard = shard_for(key);
    std::unique_lock lock(shard.mutex);
    shard.map.insert_or_assign(key, value);
}

void DeterminantMemo::clear() {
    for (auto &shard : shards_) {
        std::unique_lock lock(shard.mutex);
        std::unordered_map<NegatedModes, Complex, KeyHash>().swap(shard.map);
    }
}

size_t DeterminantMemo::size() const {
    size_t total = 0;
    for (auto &shard : shards_) {
        std::shared_lock lock(shard.mutex);
        total += shard.map.size();
    }
    return total;
}

DeterminantMemo::Shard &DeterminantMemo::shard_for(const NegatedModes &key) const {
    return shards_[(KeyHash{}(key) >> 7) % kShards];
}

LucjCache::LucjCache(const LucjStructure &structure) : cp_pairs_(structure.cp_pairs) {
    size_t n = static_cast<size_t>(structure.v1.rows());
    if (structure.v2.rows() != structure.v1.rows() || structure.angles.size() != structure.cp_pairs.size()) {
        throw input_error("inconsistent LUCJ structure");
    }
    Eigen::VectorXcd d0 = Eigen::VectorXcd::Ones(n);
    for (size_t j = 0; j < cp_pairs_.size(); j++) {
        Complex phase = branch_mode_phase(structure.angles[j], 0);
        d0(cp_pairs_[j].first) *= phase;
        d0(cp_pairs_[j].second) *= phase;
    }
    left_ = structure.v2 * d0.asDiagonal();
    right_ = structure.v1;
    base_ = left_ * right_;
}

LucjCache::~LucjCache() = default;

LucjCache build_cache(const LucjStructure &structure) {
    return LucjCache(structure);
}

ModeMatrix LucjCache::correction(size_t mode) const {
    return left_.col(mode) * right_.row(mode);
}

void LucjCache::negated_modes(const Trajectory &x, NegatedModes &out) const {
    size_t n = num_modes();
    out.assign(words_for_bits(n), 0);
    auto words = x.words();
    for (size_t w = 0; w < words.size(); w++) {
        uint64_t bits = words[w];
        while (bits) {
            size_t j = w * 64 + std::countr_zero(bits);
            bits &= bits - 1;
            auto [qa, qb] = cp_pairs_[j];
            out[qa >> 6] ^= uint64_t{1} << (qa & 63);
            out[qb >> 6] ^= uint64_t{1} << (qb & 63);
        }
    }
}

NegatedModes LucjCache::negated_modes(const Trajectory &x) const {
    NegatedModes out;
    negated_modes(x, out);
    return out;
}

ModeMatrix LucjCache::trajectory_matrix(const Trajectory &x) const {
    ModeMatrix v = base_;
    NegatedModes negated = negated_modes(x);
    for (size_t i = 0; i < num_modes(); i++) {
        if ((negated[i >> 6] >> (i & 63)) & 1) {
            v -= 2.0 * correction(i);
        }
    }
    return v;
}

size_t LucjCache::PairHash::operator()(const std::pair<BasisState, BasisState> &key) const {
    return std::hash<BasisState>{}(key.first) * 31 + std::hash<BasisState>{}(key.second);
}

Complex LucjCache::fast_amplitude(const Trajectory &x, const BasisState &a, const BasisState &b) {
    LucjSession *session;
    {
        std::lock_guard lock(sessions_mutex_);
        auto &slot = sessions_[{a, b}];
        if (!slot) {
            slot = std::make_unique<LucjSession>(*this, a, b);
        }
        session = slot.get();
    }
    return session->amplitude(x);
}

MemoStats LucjCache::memo_stats() const {
    std::lock_guard lock(sessions_mutex_);
    MemoStats total;
    for (const auto &[key, session] : sessions_) {
        MemoStats s = session->stats();
        total.hits += s.hits;
        total.misses += s.misses;
        total.entries += s.entries;
    }
    return total;
}

void LucjCache::clear_memo() {
    std::lock_guard lock(sessions_mutex_);
    sessions_.clear();
}

LucjSession::LucjSession(const LucjCache &cache, const BasisState &a, const BasisState &b)
    : cache_(&cache), weight_mismatch_(a.hamming_weight() != b.hamming_weight()) {
    if (a.num_modes() != cache.num_modes() || b.num_modes() != cache.num_modes()) {
        throw input_error("fast amplitude: basis states do not match the circuit's " +
                          std::to_string(cache.num_modes()) + " modes");
    }
    rows_ = b.occupied_modes();
    cols_ = a.occupied_modes();
    if (weight_mismatch_) {
        return;
    }
    size_t n = cache.num_modes();
    size_t h = rows_.size();
    left_rows_.resize(h, n);
    right_rows_.resize(n, h);
    base_block_.resize(h, h);
    for (size_t r = 0; r < h; r++) {
        for (size_t i = 0; i < n; i++) {
            left_rows_(r, i) = cache.left()(rows_[r], i);
        }
        for (size_t c = 0; c < h; c++) {
            base_block_(r, c) = cache.base()(rows_[r], cols_[c]);
        }
    }
    for (size_t i = 0; i < n; i++) {
        for (size_t c = 0; c < h; c++) {
            right_rows_(i, c) = cache.right()(i, cols_[c]);
        }
    }
    // With B = base[rows, cols] invertible, det(B - 2 L_N R_N) equals
    // det(B) det(I - 2 Q[N, N]) for Q = R B^-1 L, an m x m problem per
    // trajectory. Ill-conditioned B keeps the direct h x h update.
    // The rcond estimate is unreliable at an exactly zero pivot, so the
    // pivot spread is checked as well.
    if (h == 0) {
        coupling_ = Eigen::MatrixXcd::Zero(n, n);
        use_coupling_ = true;
        return;
    }
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(base_block_);
    Eigen::VectorXd pivots = lu.matrixLU().diagonal().cwiseAbs();
    double rcond = lu.rcond();
    if (std::isfinite(rcond) && rcond > kCouplingMinRcond &&
        pivots.minCoeff() > kCouplingMinRcond * pivots.maxCoeff()) {
        base_determinant_ = lu.determinant();
        coupling_ = right_rows_ * lu.solve(left_rows_);
        use_coupling_ = coupling_.allFinite();
    }
}

Complex LucjSession::evaluate(const NegatedModes &negated, Workspace &workspace) const {
    size_t n = cache_->num_modes();
    size_t h = rows_.size();
    size_t count = 0;
    for (uint64_t w : negated) {
        count += std::popcount(w);
    }
    // base - 2 sum_{i in N} C_i equals -base + 2 sum_{i not in N} C_i, so
    // correct with whichever set is smaller.
    bool complement = 2 * count > n;
    auto &modes = workspace.modes;
    modes.clear();
    for (size_t i = 0; i < n; i++) {
        if ((((negated[i >> 6] >> (i & 63)) & 1) != 0) != complement) {
            modes.push_back(static_cast<Eigen::Index>(i));
        }
    }
    double sign = complement ? -1.0 : 1.0;
    if (use_coupling_) {
        // det(sign B - 2 sign L_M R_M) = sign^h det(B) det(I - 2 Q[M, M]).
        size_t m = modes.size();
        auto &buf = workspace.determinant.buffer(m);
        for (size_t c = 0; c < m; c++) {
            for (size_t r = 0; r < m; r++) {
                buf(r, c) = -2.0 * coupling_(modes[r], modes[c]);
            }
            buf(c, c) += 1.0;
        }
        Complex scale = (complement && h % 2 == 1) ? -base_determinant_ : base_determinant_;
        return scale * workspace.determinant.determinant();
    }
    auto &buf = workspace.determinant.buffer(h);
    buf = sign * base_block_;
    for (Eigen::Index i : modes) {
        auto left = left_rows_.col(i);
        for (Eigen::Index c = 0; c < buf.cols(); c++) {
            buf.col(c) -= (2.0 * sign * right_rows_(i, c)) * left;
        }
    }
    return workspace.determinant.determinant();
}

Complex LucjSession::amplitude(const Trajectory &x, Workspace &workspace) {
    if (x.length() != cache_->num_controlled_phases()) {
        throw input_error("trajectory length does not match the LUCJ structure");
    }
    if (weight_mismatch_) {
        return 0.0;
    }
    cache_->negated_modes(x, workspace.negated);
    if (auto hit = memo_.find(workspace.negated)) {
        hits_.fetch_add(1, std::memory_order_relaxed);
        return *hit;
    }
    misses_.fetch_add(1, std::memory_order_relaxed);
    Complex value = evaluate(workspace.negated, workspace);
    memo_.insert(workspace.negated, value);
    return value;
}

Complex LucjSession::amplitude(const Trajectory &x) {
    Workspace workspace;
    return amplitude(x, workspace);
}

MemoStats LucjSession::stats() const {
    return {hits_.load(), misses_.load(), memo_.size()};
}

void LucjSession::clear_memo() {
    memo_.clear();
}

}  // namespace extmatch
