#pragma once

#include "vb/core.hpp"

#include <array>
#include <vector>

namespace vb::veronese {

/// Linearization (d, γ, a_1..a_n) of a Veronese quotient. Construction
/// enforces 0 <= γ < 1, 0 < a_i < 1 and (d-1)γ + Σa_i = d+1 exactly.
class WeightData {
public:
    static WeightData make(int d, Rational gamma, std::vector<Rational> weights);

    int d() const { return d_; }
    int n() const { return static_cast<int>(weights_.size()); }
    const Rational& gamma() const { return gamma_; }
    const std::vector<Rational>& weights() const { return weights_; }
    const Rational& total() const { return total_; }

    Rational weight_of(const IndexSet& subset) const { return subset_weight(subset, weights_); }
    bool is_symmetric() const;

private:
    WeightData(int d, Rational gamma, std::vector<Rational> weights, Rational total)
        : d_(d), gamma_(std::move(gamma)), weights_(std::move(weights)), total_(std::move(total)) {}

    int d_;
    Rational gamma_;
    std::vector<Rational> weights_;
    Rational total_;
};

/// d = g+1-ℓ, γ = (ℓ-1)/(ℓ+1), a_i = 1/(ℓ+1) for 2g+2 points.
WeightData standard_weights(int ell, int g);

Rational phi(const IndexSet& subset, const WeightData& w);

// Degree assigned to the leg carrying `subset`. The two boundary weights
// a_J = 1 and a_J = a_[n] - 1 fall into the ⌈φ⌉ branch (φ = 0 and φ = d-1).
int sigma(const IndexSet& subset, const WeightData& w);

// True when φ(J) is an integer and a_J lies in the closed ⌈φ⌉ range, i.e.
// the degree of the leg is ambiguous between σ and σ+1.
bool on_wall(const IndexSet& subset, const WeightData& w);

struct LegDegrees {
    std::array<int, 4> sigma{};       // σ(A_1)..σ(A_4)
    std::array<int, 3> pair_sigma{};  // σ(A_i ∪ A_4), i = 1..3
    int b = 0;                        // d - Σσ(A_i)
    std::array<int, 3> c{};           // σ(A_i∪A_4) - σ(A_i) - σ(A_4)

    static LegDegrees from(std::array<int, 4> legs, std::array<int, 3> pairs, int d);
};

LegDegrees leg_degrees(const FCurve& curve, const WeightData& w);

bool veronese_contracts(const FCurve& curve, const WeightData& w);
bool hassett_contracts(const FCurve& curve, const WeightData& w);

/// F(A_1,A_2,A_3,A_4)·D_{γ,A} for d >= 2 and n >= 5.
Rational intersect(const FCurve& curve, const WeightData& w);

// Same formula evaluated with an explicit degree distribution.
Rational intersect_with(const FCurve& curve, const WeightData& w, const LegDegrees& degrees);

/// Alternative degree distributions on walls: each integer-φ leg or pair
/// raised by one, as long as the legs still total at most d.
struct WallVariant {
    enum class Kind { Leg, Pair } kind;
    int index;  // leg 0..3 or pair 0..2 (pair i is A_{i+1} ∪ A_4)
    LegDegrees degrees;
};
std::vector<WallVariant> wall_variants(const FCurve& curve, const WeightData& w);

Rational closed_form_value(int ell, int g, int i);

// Closed-form vector (D·F_1, ..., D·F_g) for the standard weights.
IntersectionVector closed_form_vector(int ell, int g);

// Same vector computed through `intersect` on F_{n-i-2,i,1,1}; needs d >= 2.
IntersectionVector theorem_vector(int ell, int g);

// (D·F_j)_j for any symmetric weight data, via `intersect`.
IntersectionVector symmetric_intersections(const WeightData& w);

/// Matrix T with b = T·a taking F-curve intersections to boundary-basis
/// coefficients (B_2..B_{g+1}). Even n halves the a_g column.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> class_transform(int n) {
    require(n >= 5, "class transform requires n >= 5");
    const int g = basis_rank(n);
    const bool even = (n % 2 == 0);
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> t(g, g);
    for (int r = 1; r <= g; ++r) {
        const Scalar scale = Scalar(r * (r + 1)) / Scalar(n - 1);
        for (int j = 1; j <= g; ++j) {
            if (j < r) {
                t(r - 1, j - 1) = scale - Scalar(r - j);
            } else if (even && j == g) {
                t(r - 1, j - 1) = Scalar(r * (r + 1)) / Scalar(2 * (n - 1));
            } else {
                t(r - 1, j - 1) = scale;
            }
        }
    }
    return t;
}

SymmetricDivisorClass symmetric_class(const IntersectionVector& a, int n);

SymmetricDivisorClass closed_form_class(int ell, int g);

}  // namespace vb::veronese
