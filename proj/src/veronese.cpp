#include "vb/veronese.hpp"

#include <algorithm>
#include <numeric>

namespace vb::veronese {

WeightData WeightData::make(int d, Rational gamma, std::vector<Rational> weights) {
    require(d >= 1, "degree d must be >= 1");
    require(gamma >= Rational(0) && gamma < Rational(1), "gamma must satisfy 0 <= gamma < 1");
    require(!weights.empty(), "at least one marked point is required");
    Rational total;
    for (const auto& a : weights) {
        require(a > Rational(0) && a < Rational(1), "weights must satisfy 0 < a_i < 1");
        total += a;
    }
    require(Rational(d - 1) * gamma + total == Rational(d + 1),
            "allowability (d-1)*gamma + sum(a_i) = d+1 violated");
    return WeightData(d, std::move(gamma), std::move(weights), std::move(total));
}

bool WeightData::is_symmetric() const {
    return std::all_of(weights_.begin(), weights_.end(), [&](const Rational& a) { return a == weights_.front(); });
}

WeightData standard_weights(int ell, int g) {
    require(g >= 1 && ell >= 1 && ell <= g, "standard weights require 1 <= ell <= g");
    return WeightData::make(g + 1 - ell, Rational(ell - 1, ell + 1),
                            std::vector<Rational>(2 * g + 2, Rational(1, ell + 1)));
}

Rational phi(const IndexSet& subset, const WeightData& w) {
    return (w.weight_of(subset) - Rational(1)) / (Rational(1) - w.gamma());
}

int sigma(const IndexSet& subset, const WeightData& w) {
    const Rational a = w.weight_of(subset);
    if (a < Rational(1)) return 0;
    if (a > w.total() - Rational(1)) return w.d();
    return ceil(phi(subset, w)).convert_to<int>();
}

bool on_wall(const IndexSet& subset, const WeightData& w) {
    const Rational a = w.weight_of(subset);
    if (a < Rational(1) || a > w.total() - Rational(1)) return false;
    return phi(subset, w).is_integer();
}

LegDegrees LegDegrees::from(std::array<int, 4> legs, std::array<int, 3> pairs, int d) {
    LegDegrees out;
    out.sigma = legs;
    out.pair_sigma = pairs;
    out.b = d - (legs[0] + legs[1] + legs[2] + legs[3]);
    for (int i = 0; i < 3; ++i) out.c[i] = pairs[i] - legs[i] - legs[3];
    return out;
}

LegDegrees leg_degrees(const FCurve& curve, const WeightData& w) {
    require(curve.n() == w.n(), "F-curve and weight data must have the same n");
    std::array<int, 4> legs{};
    std::array<int, 3> pairs{};
    for (int i = 0; i < 4; ++i) legs[i] = sigma(curve.part(i), w);
    for (int i = 0; i < 3; ++i) pairs[i] = sigma(set_union(curve.part(i), curve.part(3)), w);
    return LegDegrees::from(legs, pairs, w.d());
}

bool veronese_contracts(const FCurve& curve, const WeightData& w) {
    const LegDegrees deg = leg_degrees(curve, w);
    return deg.b == 0;
}

bool hassett_contracts(const FCurve& curve, const WeightData& w) {
    require(curve.n() == w.n(), "F-curve and weight data must have the same n");
    for (const auto& part : curve.parts()) {
        if (w.total() - w.weight_of(part) <= Rational(1)) return true;
    }
    return false;
}

Rational intersect_with(const FCurve& curve, const WeightData& w, const LegDegrees& deg) {
    require(curve.n() == w.n(), "F-curve and weight data must have the same n");
    require(curve.n() >= 5, "intersect requires n >= 5");
    if (w.d() == 1) throw OutOfScopeError("out of scope: d=1 case");

    const Rational d(w.d());
    const Rational& wt = w.total();
    std::array<Rational, 4> w_part;
    for (int i = 0; i < 4; ++i) w_part[i] = w.weight_of(curve.part(i));
    auto s = [&](int i) { return Rational(deg.sigma[i]); };
    auto sp = [&](int i) { return Rational(deg.pair_sigma[i]); };
    auto c = [&](int i) { return Rational(deg.c[i]); };
    const Rational b(deg.b);

    Rational c_squares;
    for (int i = 0; i < 3; ++i) c_squares += c(i) * c(i);
    const Rational first = c_squares * wt / (Rational(2) * d);

    const Rational second = (w_part[3] - wt / d * s(3)) * b;

    Rational third;
    for (int i = 0; i < 3; ++i) third += (wt / d * (s(i) + s(3)) - w_part[i] - w_part[3]) * c(i);

    Rational legs_term;
    for (int i = 0; i < 4; ++i) legs_term += s(i) * (d - s(i));
    Rational pairs_term;
    for (int i = 0; i < 3; ++i) pairs_term += sp(i) * (d - sp(i));
    const Rational fourth = (Rational(1) + w.gamma()) / (Rational(2) * d) * (legs_term - pairs_term);

    return first + second + third - fourth;
}

Rational intersect(const FCurve& curve, const WeightData& w) {
    if (w.d() == 1) throw OutOfScopeError("out of scope: d=1 case");
    require(curve.n() >= 5, "intersect requires n >= 5");
    return intersect_with(curve, w, leg_degrees(curve, w));
}

std::vector<WallVariant> wall_variants(const FCurve& curve, const WeightData& w) {
    const LegDegrees base = leg_degrees(curve, w);
    const int leg_total = base.sigma[0] + base.sigma[1] + base.sigma[2] + base.sigma[3];
    std::vector<WallVariant> out;
    for (int i = 0; i < 4; ++i) {
        if (!on_wall(curve.part(i), w) || leg_total + 1 > w.d()) continue;
        auto legs = base.sigma;
        legs[i] += 1;
        out.push_back({WallVariant::Kind::Leg, i, LegDegrees::from(legs, base.pair_sigma, w.d())});
    }
    for (int i = 0; i < 3; ++i) {
        if (!on_wall(set_union(curve.part(i), curve.part(3)), w) || base.pair_sigma[i] + 1 > w.d()) continue;
        auto pairs = base.pair_sigma;
        pairs[i] += 1;
        out.push_back({WallVariant::Kind::Pair, i, LegDegrees::from(base.sigma, pairs, w.d())});
    }
    return out;
}

Rational closed_form_value(int ell, int g, int i) {
    require(g >= 1 && ell >= 1 && ell <= g, "closed form requires 1 <= ell <= g");
    require(i >= 1 && i <= g, "closed form requires 1 <= i <= g");
    if (i % 2 == ell % 2 && i >= ell) return Rational(1, ell + 1);
    return Rational(0);
}

IntersectionVector closed_form_vector(int ell, int g) {
    RationalVector v(g);
    for (int i = 1; i <= g; ++i) v(i - 1) = closed_form_value(ell, g, i);
    return IntersectionVector(2 * g + 2, std::move(v));
}

IntersectionVector theorem_vector(int ell, int g) {
    const WeightData w = standard_weights(ell, g);
    RationalVector v(g);
    for (int i = 1; i <= g; ++i) v(i - 1) = intersect(FCurve::from_sizes({2 * g - i, i, 1, 1}), w);
    return IntersectionVector(2 * g + 2, std::move(v));
}

IntersectionVector symmetric_intersections(const WeightData& w) {
    require(w.is_symmetric(), "symmetric intersections require S_n-invariant weights");
    const auto basis = symmetric_basis(w.n());
    RationalVector v(static_cast<Eigen::Index>(basis.size()));
    for (std::size_t j = 0; j < basis.size(); ++j) v(j) = intersect(FCurve::from_symmetric(basis[j]), w);
    return IntersectionVector(w.n(), std::move(v));
}

SymmetricDivisorClass symmetric_class(const IntersectionVector& a, int n) {
    require(n >= 5, "symmetric class requires n >= 5");
    require(a.g() == basis_rank(n), "intersection vector length must be floor(n/2) - 1");
    RationalVector b = class_transform<Rational>(n) * a.values;
    return SymmetricDivisorClass(n, std::move(b));
}

SymmetricDivisorClass closed_form_class(int ell, int g) {
    require(g >= 1 && ell >= 1 && ell <= g, "closed-form class requires 1 <= ell <= g");
    const int n = 2 * g + 2;
    auto pos = [](BigInt x) { return x < 0 ? BigInt(0) : x; };
    RationalVector b(g);
    for (int r = 1; r <= g; ++r) {
        const Rational half(r - ell + 1, 2);
        const Rational correction(pos(ceil(half)) * pos(floor(half)));
        const Rational lead = Rational(r * (r + 1), n - 1) * Rational(g - ell + 1, 2);
        b(r - 1) = Rational(1, ell + 1) * (lead - correction);
    }
    return SymmetricDivisorClass(n, std::move(b));
}

}  // namespace vb::veronese
