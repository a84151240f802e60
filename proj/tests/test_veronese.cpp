#include "vb/veronese.hpp"

#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

using namespace vb;
using namespace vb::veronese;

namespace {

Rational closed_form_oracle(int ell, int i) {
    return (i >= ell && (i - ell) % 2 == 0) ? Rational(1, ell + 1) : Rational(0);
}

// b_r = (1/(ℓ+1))·(r(r+1)(g-ℓ+1) / (2(n-1)) - ⌈m/2⌉₊⌊m/2⌋₊), m = r-ℓ+1.
Rational class_oracle(int ell, int g, int r) {
    const int n = 2 * g + 2;
    const int m = std::max(0, r - ell + 1);
    const int correction = ((m + 1) / 2) * (m / 2);
    return Rational(1, ell + 1) * (Rational(r * (r + 1) * (g - ell + 1), 2 * (n - 1)) - Rational(correction));
}

IndexSet first(int k) {
    IndexSet s(k);
    std::iota(s.begin(), s.end(), 1);
    return s;
}

// Random allowable weights with no integer φ on any subset with 1 <= a_J <= w-1.
WeightData random_nonwall_weights(std::mt19937& rng) {
    std::uniform_int_distribution<int> dn(2, 4), nn(5, 8), gn(0, 5), raw(5, 40);
    while (true) {
        const int d = dn(rng);
        const int n = nn(rng);
        const Rational gamma(gn(rng), 7);
        const Rational total = Rational(d + 1) - Rational(d - 1) * gamma;
        std::vector<int> r(n);
        for (auto& x : r) x = raw(rng);
        const int s = std::accumulate(r.begin(), r.end(), 0);
        std::vector<Rational> a(n);
        bool ok = true;
        for (int i = 0; i < n; ++i) {
            a[i] = total * Rational(r[i], s);
            ok = ok && a[i] < Rational(1);
        }
        if (!ok) continue;
        const WeightData w = WeightData::make(d, gamma, a);
        for (unsigned mask = 1; mask < (1u << n) && ok; ++mask) {
            IndexSet j;
            for (int i = 0; i < n; ++i) {
                if (mask & (1u << i)) j.push_back(i + 1);
            }
            ok = !on_wall(j, w);
        }
        if (ok) return w;
    }
}

}  // namespace

TEST_CASE("standard weights are allowable") {
    const auto w23 = standard_weights(2, 3);
    CHECK(w23.d() == 2);
    CHECK(w23.gamma() == Rational(1, 3));
    CHECK(w23.n() == 8);
    CHECK(w23.weights().front() == Rational(1, 3));
    const auto w13 = standard_weights(1, 3);
    CHECK(w13.d() == 3);
    CHECK(w13.gamma() == Rational(0));
    const auto w33 = standard_weights(3, 3);
    CHECK(w33.d() == 1);
    CHECK(w33.gamma() == Rational(1, 2));
    CHECK_THROWS_AS(standard_weights(4, 3), PreconditionError);
}

TEST_CASE("weight data rejects non-allowable input") {
    std::vector<Rational> half(6, Rational(1, 2));
    CHECK_NOTHROW(WeightData::make(2, Rational(0), half));
    CHECK_THROWS_AS(WeightData::make(3, Rational(0), half), PreconditionError);
    CHECK_THROWS_AS(WeightData::make(2, Rational(1), half), PreconditionError);
    CHECK_THROWS_AS(WeightData::make(0, Rational(0), half), PreconditionError);
    std::vector<Rational> bad{Rational(1), Rational(1), Rational(1)};
    CHECK_THROWS_AS(WeightData::make(2, Rational(0), bad), PreconditionError);
}

TEST_CASE("phi and sigma on the standard weights") {
    for (int g = 1; g <= 8; ++g) {
        for (int ell = 1; ell <= g; ++ell) {
            const auto w = standard_weights(ell, g);
            for (int i = 1; i <= 2 * g + 2; ++i) {
                CHECK(phi(first(i), w) == Rational(i - ell - 1, 2));
            }
        }
    }
    const auto w = standard_weights(2, 3);
    CHECK(phi({}, w) == Rational(-3, 2));
    CHECK(phi(first(4), w) == Rational(1, 2));
    CHECK(sigma(first(2), w) == 0);
    CHECK(sigma(first(7), w) == 2);
    CHECK(sigma(first(4), w) == 1);
    // a_J = w - 1 exactly: the middle branch gives ⌈φ⌉ = d - 1.
    CHECK(sigma(first(5), w) == 1);
}

TEST_CASE("sigma is monotone and stays in [0, d]") {
    std::mt19937 rng(11);
    for (int trial = 0; trial < 40; ++trial) {
        const WeightData w = random_nonwall_weights(rng);
        const int n = w.n();
        for (unsigned mask = 0; mask < (1u << n); ++mask) {
            IndexSet j;
            for (int i = 0; i < n; ++i) {
                if (mask & (1u << i)) j.push_back(i + 1);
            }
            const int s = sigma(j, w);
            CHECK(s >= 0);
            CHECK(s <= w.d());
            for (int i = 1; i <= n; ++i) {
                if (std::binary_search(j.begin(), j.end(), i)) continue;
                CHECK(sigma(set_union(j, {i}), w) >= s);
            }
        }
    }
}

TEST_CASE("contraction predicates") {
    CHECK_FALSE(veronese_contracts(FCurve::from_sizes({2, 2, 2, 2}), standard_weights(1, 3)));
    CHECK_FALSE(veronese_contracts(FCurve::from_sizes({3, 3, 1, 1}), standard_weights(3, 3)));
    CHECK_FALSE(veronese_contracts(FCurve::from_sizes({1, 1, 1, 5}), standard_weights(2, 3)));
    CHECK(hassett_contracts(FCurve::from_sizes({5, 1, 1, 1}), standard_weights(2, 3)));
    CHECK_FALSE(hassett_contracts(FCurve::from_sizes({1, 1, 3, 3}), standard_weights(1, 3)));

    std::vector<Rational> light(4, Rational(1, 2));
    const auto w4 = WeightData::make(1, Rational(0), light);
    CHECK_FALSE(hassett_contracts(FCurve::from_sizes({1, 1, 1, 1}), w4));
    std::vector<Rational> heavy{Rational(9, 10), Rational(9, 10), Rational(1, 10), Rational(1, 10)};
    CHECK_FALSE(hassett_contracts(FCurve::from_sizes({1, 1, 1, 1}), WeightData::make(1, Rational(0), heavy)));
}

TEST_CASE("intersection numbers match the closed form") {
    CHECK(intersect(FCurve::from_sizes({1, 1, 1, 5}), standard_weights(1, 3)) == Rational(1, 2));
    CHECK(intersect(FCurve::from_sizes({1, 1, 2, 4}), standard_weights(1, 3)) == Rational(0));
    CHECK(intersect(FCurve::from_sizes({1, 1, 2, 6}), standard_weights(2, 4)) == Rational(1, 3));
    for (int g = 2; g <= 8; ++g) {
        for (int ell = 1; ell <= g - 1; ++ell) {
            const auto w = standard_weights(ell, g);
            const auto v = symmetric_intersections(w);
            for (int i = 1; i <= g; ++i) {
                CHECK(v(i) == closed_form_oracle(ell, i));
                CHECK(theorem_vector(ell, g)(i) == closed_form_oracle(ell, i));
            }
        }
    }
}

TEST_CASE("closed form values") {
    CHECK(closed_form_value(3, 3, 3) == Rational(1, 4));
    CHECK(closed_form_value(2, 5, 1) == Rational(0));
    CHECK(closed_form_value(4, 5, 2) == Rational(0));
    CHECK_THROWS_AS(closed_form_value(1, 3, 4), PreconditionError);
}

TEST_CASE("d = 1 is out of scope for the intersection formula") {
    CHECK_THROWS_AS(intersect(FCurve::from_sizes({3, 3, 1, 1}), standard_weights(3, 3)), OutOfScopeError);
    CHECK_THROWS_WITH(intersect(FCurve::from_sizes({3, 3, 1, 1}), standard_weights(3, 3)), "out of scope: d=1 case");
}

TEST_CASE("the intersection number does not depend on the labelling of the parts") {
    std::mt19937 rng(5);
    for (int trial = 0; trial < 60; ++trial) {
        const WeightData w = random_nonwall_weights(rng);
        const int n = w.n();
        std::uniform_int_distribution<int> block(0, 3);
        std::array<IndexSet, 4> parts;
        do {
            for (auto& p : parts) p.clear();
            for (int i = 1; i <= n; ++i) parts[block(rng)].push_back(i);
        } while (std::any_of(parts.begin(), parts.end(), [](const IndexSet& p) { return p.empty(); }));
        const FCurve f = FCurve::make(n, parts);
        const Rational base = intersect(f, w);
        std::array<int, 4> order{0, 1, 2, 3};
        do {
            CHECK(intersect(f.reordered(order), w) == base);
        } while (std::next_permutation(order.begin(), order.end()));
        CHECK(wall_variants(f, w).empty());
    }
}

TEST_CASE("wall variants exist on the standard weights with g = ell mod 2") {
    const auto w = standard_weights(2, 4);
    const FCurve f = FCurve::from_sizes({1, 1, 2, 6});
    const auto variants = wall_variants(f, w);
    CHECK_FALSE(variants.empty());
    for (const auto& v : variants) CHECK(intersect_with(f, w, v.degrees) == Rational(1, 3));
}

TEST_CASE("class pipeline reproduces the closed-form class") {
    const auto cls = symmetric_class(closed_form_vector(1, 3), 8);
    CHECK(cls(1) == Rational(3, 14));
    CHECK(cls(2) == Rational(1, 7));
    CHECK(cls(3) == Rational(2, 7));
    for (int g = 2; g <= 8; ++g) {
        for (int ell = 1; ell <= g; ++ell) {
            const auto c = symmetric_class(closed_form_vector(ell, g), 2 * g + 2);
            CHECK(c == closed_form_class(ell, g));
            for (int r = 1; r <= g; ++r) CHECK(c(r) == class_oracle(ell, g, r));
        }
    }
}

TEST_CASE("class transform edge cases") {
    CHECK(symmetric_class(IntersectionVector(8, RationalVector::Constant(3, Rational(0))), 8).coeffs.isZero());
    RationalVector e = RationalVector::Constant(3, Rational(0));
    e(2) = 1;
    const auto c = symmetric_class(IntersectionVector(9, e), 9);
    for (int r = 1; r <= 3; ++r) CHECK(c(r) == Rational(r * (r + 1), 8));
    const Eigen::MatrixXd approx = class_transform<double>(10);
    const auto exact = class_transform<Rational>(10);
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) CHECK(approx(i, j) == doctest::Approx(exact(i, j).to_double()));
    }
}
