#pragma once

#include "vb/core.hpp"

#include <array>
#include <optional>
#include <vector>

namespace vb::cb {

/// Level ℓ and sl_2 weights k_1..k_n (each k_i·ω_1), 0 <= k_i <= ℓ.
class SL2WeightVector {
public:
    SL2WeightVector(int level, std::vector<int> weights);

    // (k^count, tail...) convenience: r_ℓ(k^j, t) is repeated(ℓ, k, j, {t}).
    static SL2WeightVector repeated(int level, int k, int count, std::vector<int> tail = {});

    int level() const { return level_; }
    int n() const { return static_cast<int>(weights_.size()); }
    const std::vector<int>& weights() const { return weights_; }
    long long weight_sum() const { return weight_sum_; }

private:
    int level_;
    std::vector<int> weights_;
    long long weight_sum_;
};

/// Level-ℓ sl_2 fusion coefficient: 1 iff a+b+c is even, |a-b| <= c <= a+b
/// and a+b+c <= 2ℓ.
int fusion3(int a, int b, int c, int ell);

/// Number of fusion paths 0 → μ_1 → … → μ_n = 0 (left-to-right DP over μ).
BigInt rank(const SL2WeightVector& v);

/// Counts the same paths one by one by depth-first search. Exponential; used
/// only to cross-check `rank`.
BigInt enumerate_paths(const SL2WeightVector& v);

// r_ℓ(1^j, t); zero when t is outside [0, ℓ].
BigInt rank_ones(int ell, int j, int t);

/// r_ℓ(1^j, t) from the Pascal-type recurrence and the r_ℓ(1^j, j) seeds.
BigInt rank_recurrence(int ell, int j, int t);

// Rows j = 0..jmax of r_ℓ(1^j, t), t = 0..ℓ, from the recurrence.
std::vector<std::vector<BigInt>> rank_recurrence_table(int ell, int jmax);

/// rank(v) > 0 decided by the subset inequalities, via the minimizing subset.
bool nonzero_criterion(const SL2WeightVector& v);

// Same criterion by checking every subset I; n <= 20.
bool nonzero_criterion_bruteforce(const SL2WeightVector& v);

/// Whether r_ℓ(k^i, t) = 0, by parity and the three k-pattern cases. The
/// i = 0 row follows the rank (r_ℓ(t) = 1 iff t = 0).
bool zero_criterion_kpattern(int ell, int k, int i, int t);

int critical_level(const SL2WeightVector& v);
bool is_trivial(const SL2WeightVector& v);

/// D(sl_2, ℓ, ω_1^{2g+2})·F_i = r_ℓ(1^i, ℓ)·r_ℓ(1^{2g-i}, ℓ).
BigInt cb_intersect_omega1(int ell, int g, int i);

// (D·F_1, ..., D·F_g) for D(sl_2, ℓ, ω_1^{2g+2}).
IntersectionVector cb_vector_omega1(int ell, int g);

/// D(sl_2, ℓ, ℓω_1^n)·F_i = ℓ·r_ℓ(ℓ^{n-i-2}, ℓ)·r_ℓ(ℓ^i, ℓ).
BigInt cb_intersect_kequalsell(int ell, int n, int i);

/// Sufficient condition for a nonzero 4-point degree: Σw even,
/// 2ℓ < Σw < 2ℓ + 2 + 2·min(w).
bool deg4_nonzero_sufficient(const std::array<int, 4>& w, int ell);

// The three 4-point degrees quoted for the ℓω_1 family, in any order:
// (0,0,ℓ,ℓ) → 0, (0,ℓ,ℓ,ℓ) → 0, (ℓ,ℓ,ℓ,ℓ) → ℓ.
std::optional<int> quoted_deg4(const std::array<int, 4>& w, int ell);

/// D(sl_2, ℓ, kω_1^n)·F_{a,b,c,d} = 0 iff a+b+c <= (ℓ+1)/k, under
/// 1 < k < 3ℓ/4, n even, ℓ <= kn/2 - 1. Throws PreconditionError naming the
/// violated hypothesis otherwise.
bool fcurve_zero_criterion(int ell, int k, int n, std::array<int, 4> profile);

/// A weight tuple u with deg4_nonzero_sufficient(u) and r_ℓ(k^{n_i}, u_i) > 0
/// for every leg, certifying D(sl_2, ℓ, kω_1^n)·F ≠ 0. Lexicographically
/// first such u, if any.
std::optional<std::array<int, 4>> nonvanishing_witness(int ell, int k, std::array<int, 4> profile);

}  // namespace vb::cb
