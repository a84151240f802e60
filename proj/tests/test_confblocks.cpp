#include "vb/confblocks.hpp"

#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

using namespace vb;
using namespace vb::cb;

namespace {

// Counts μ_1..μ_{n-1} in [0, ℓ]^{n-1} with every consecutive triple
// (μ_{i-1}, k_i, μ_i), μ_0 = μ_n = 0, satisfying the level-ℓ fusion rules.
long long brute_rank(int ell, const std::vector<int>& k) {
    const int n = static_cast<int>(k.size());
    if (n == 0) return 1;
    auto ok = [&](int a, int b, int c) {
        return (a + b + c) % 2 == 0 && a <= b + c && b <= a + c && c <= a + b && a + b + c <= 2 * ell;
    };
    std::vector<int> mu(n + 1, 0);
    long long count = 0;
    long long total = 1;
    for (int i = 0; i < n - 1; ++i) total *= (ell + 1);
    for (long long code = 0; code < total; ++code) {
        long long c = code;
        for (int i = 1; i < n; ++i) {
            mu[i] = static_cast<int>(c % (ell + 1));
            c /= (ell + 1);
        }
        bool good = true;
        for (int i = 0; i < n && good; ++i) good = ok(mu[i], k[i], mu[i + 1]);
        if (good) ++count;
    }
    return count;
}

}  // namespace

TEST_CASE("fusion rule") {
    for (int ell = 1; ell <= 5; ++ell) {
        for (int t = 1; t <= ell; ++t) {
            CHECK(fusion3(1, t, t - 1, ell) == 1);
            CHECK(fusion3(1, t, t, ell) == 0);
        }
        for (int k = 0; k <= ell; ++k) CHECK(fusion3(k, k, 0, ell) == 1);
    }
    CHECK(fusion3(2, 2, 2, 3) == 1);
    CHECK(fusion3(2, 2, 2, 2) == 0);  // 6 > 2ℓ
    CHECK(fusion3(2, 2, 4, 4) == 1);
    CHECK(fusion3(3, 3, 2, 3) == 0);  // 8 > 2ℓ
    CHECK_THROWS_AS(fusion3(3, 0, 0, 2), PreconditionError);
}

TEST_CASE("rank examples") {
    CHECK(rank(SL2WeightVector(3, {1, 1, 1, 3})) == 1);
    CHECK(rank(SL2WeightVector(2, {1, 1, 1, 2})) == 0);
    CHECK(rank(SL2WeightVector(2, {1, 1, 1, 1})) == 2);
    CHECK(rank(SL2WeightVector(2, {2, 2, 1, 1})) == 1);
    CHECK(rank(SL2WeightVector(4, {})) == 1);
    CHECK_THROWS_AS(SL2WeightVector(2, {3}), PreconditionError);
    CHECK_THROWS_AS(SL2WeightVector(0, {}), PreconditionError);
}

TEST_CASE("rank agrees with brute force and path enumeration") {
    for (int ell = 1; ell <= 4; ++ell) {
        for (int n = 0; n <= 6; ++n) {
            std::vector<int> k(n, 0);
            while (true) {
                const SL2WeightVector v(ell, k);
                const BigInt r = rank(v);
                CHECK(r == brute_rank(ell, k));
                CHECK(r == enumerate_paths(v));
                int pos = 0;
                while (pos < n && k[pos] == ell) k[pos++] = 0;
                if (pos == n) break;
                ++k[pos];
            }
        }
    }
}

TEST_CASE("rank is invariant under reordering and vanishes on odd sums") {
    std::mt19937 rng(3);
    for (int trial = 0; trial < 300; ++trial) {
        const int ell = std::uniform_int_distribution<int>(1, 7)(rng);
        const int n = std::uniform_int_distribution<int>(0, 12)(rng);
        std::vector<int> k(n);
        for (auto& x : k) x = std::uniform_int_distribution<int>(0, ell)(rng);
        const BigInt r = rank(SL2WeightVector(ell, k));
        std::shuffle(k.begin(), k.end(), rng);
        CHECK(rank(SL2WeightVector(ell, k)) == r);
        if (std::accumulate(k.begin(), k.end(), 0) % 2 != 0) CHECK(r == 0);
    }
}

TEST_CASE("recurrence table matches the rank") {
    CHECK(rank_recurrence(2, 4, 0) == 2);
    CHECK(rank_recurrence(1, 5, 1) == 1);
    CHECK(rank_recurrence(3, 2, 2) == 1);
    for (int ell = 1; ell <= 6; ++ell) {
        const auto table = rank_recurrence_table(ell, 20);
        for (int j = 0; j <= 20; ++j) {
            for (int t = 0; t <= ell; ++t) CHECK(table[j][t] == rank_ones(ell, j, t));
        }
        for (int j = 1; j <= ell; ++j) CHECK(table[j][j] == 1);
    }
    CHECK(rank_ones(2, 3, 5) == 0);
    CHECK_THROWS_AS(rank_recurrence(2, 4, 3), PreconditionError);
}

TEST_CASE("nonzero criterion matches the rank") {
    CHECK_FALSE(nonzero_criterion(SL2WeightVector::repeated(3, 1, 4, {1})));
    for (int ell = 1; ell <= 5; ++ell) {
        for (int k = 0; k <= ell; ++k) CHECK(nonzero_criterion(SL2WeightVector(ell, {k, k})));
    }
    CHECK(nonzero_criterion(SL2WeightVector(2, {2, 2, 1, 1})));
    for (int ell = 1; ell <= 3; ++ell) {
        for (int n = 0; n <= 6; ++n) {
            std::vector<int> k(n, 0);
            while (true) {
                const SL2WeightVector v(ell, k);
                const bool nonzero = rank(v) > 0;
                CHECK(nonzero_criterion(v) == nonzero);
                CHECK(nonzero_criterion_bruteforce(v) == nonzero);
                int pos = 0;
                while (pos < n && k[pos] == ell) k[pos++] = 0;
                if (pos == n) break;
                ++k[pos];
            }
        }
    }
}

TEST_CASE("k-pattern criterion matches the rank") {
    CHECK(zero_criterion_kpattern(4, 3, 1, 2));  // odd
    CHECK_FALSE(zero_criterion_kpattern(4, 2, 0, 0));
    CHECK_FALSE(zero_criterion_kpattern(5, 2, 1, 2));
    for (int ell = 3; ell <= 7; ++ell) {
        for (int k = 2; k < ell; ++k) {
            for (int i = 0; i <= 10; ++i) {
                for (int t = 0; t <= ell; ++t) {
                    const bool zero = rank(SL2WeightVector::repeated(ell, k, i, {t})) == 0;
                    CHECK(zero_criterion_kpattern(ell, k, i, t) == zero);
                }
            }
        }
    }
    CHECK_THROWS_AS(zero_criterion_kpattern(4, 1, 1, 1), PreconditionError);
}

TEST_CASE("critical level") {
    for (int g = 1; g <= 6; ++g) CHECK(critical_level(SL2WeightVector::repeated(1, 1, 2 * g + 2)) == g);
    CHECK(critical_level(SL2WeightVector(2, {2, 2, 2, 2})) == 3);
    const auto v = SL2WeightVector::repeated(5, 1, 8);
    CHECK(critical_level(v) == 3);
    CHECK(is_trivial(v));
    CHECK_THROWS_AS(critical_level(SL2WeightVector(2, {1})), PreconditionError);
}

TEST_CASE("omega_1 intersections") {
    CHECK(cb_intersect_omega1(1, 3, 1) == 1);
    CHECK(cb_intersect_omega1(2, 3, 1) == 0);
    CHECK(cb_intersect_omega1(3, 3, 3) == 1);
    for (int g = 1; g <= 4; ++g) {
        for (int ell = 1; ell <= g; ++ell) {
            for (int i = 1; i <= g; ++i) {
                std::vector<int> left(i, 1), right(2 * g - i, 1);
                left.push_back(ell);
                right.push_back(ell);
                CHECK(cb_intersect_omega1(ell, g, i) == brute_rank(ell, left) * brute_rank(ell, right));
            }
        }
    }
}

TEST_CASE("k = level intersections") {
    CHECK(cb_intersect_kequalsell(2, 8, 1) == 2);
    CHECK(cb_intersect_kequalsell(3, 8, 2) == 0);
    CHECK(cb_intersect_kequalsell(1, 6, 1) == 1);
    CHECK_THROWS_AS(cb_intersect_kequalsell(2, 7, 1), PreconditionError);
}

TEST_CASE("four-point degrees") {
    for (int ell = 1; ell <= 6; ++ell) {
        CHECK(deg4_nonzero_sufficient({ell, ell, ell, ell}, ell));
        CHECK_FALSE(deg4_nonzero_sufficient({0, 0, ell, ell}, ell));
        CHECK_FALSE(deg4_nonzero_sufficient({0, ell, ell, ell}, ell));
        CHECK(quoted_deg4({ell, ell, ell, ell}, ell) == ell);
        CHECK(quoted_deg4({ell, 0, ell, 0}, ell) == 0);
        CHECK(quoted_deg4({ell, ell, 0, ell}, ell) == 0);
    }
    CHECK_FALSE(quoted_deg4({1, 1, 1, 1}, 3).has_value());
}

TEST_CASE("F-curve contraction criterion") {
    CHECK(fcurve_zero_criterion(7, 2, 10, {1, 1, 1, 7}));
    CHECK_FALSE(fcurve_zero_criterion(7, 2, 10, {2, 2, 3, 3}));
    CHECK_THROWS_WITH(fcurve_zero_criterion(4, 3, 8, {2, 2, 2, 2}), "hypothesis k < 3*ell/4 violated");
    CHECK_THROWS_WITH(fcurve_zero_criterion(7, 1, 10, {1, 1, 1, 7}), "hypothesis 1 < k violated");
    CHECK_THROWS_WITH(fcurve_zero_criterion(7, 2, 9, {1, 1, 1, 6}), "hypothesis n even violated");
    CHECK_THROWS_WITH(fcurve_zero_criterion(9, 2, 8, {1, 1, 1, 5}), "hypothesis ell <= k*n/2 - 1 violated");
    CHECK_FALSE(nonvanishing_witness(7, 2, {1, 1, 1, 7}).has_value());
    const auto w = nonvanishing_witness(7, 2, {2, 2, 3, 3});
    REQUIRE(w.has_value());
    CHECK(deg4_nonzero_sufficient(*w, 7));
}
