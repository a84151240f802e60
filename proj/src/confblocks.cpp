#include "vb/confblocks.hpp"

#include <algorithm>
#include <bit>
#include <limits>
#include <numeric>

namespace vb::cb {

SL2WeightVector::SL2WeightVector(int level, std::vector<int> weights)
    : level_(level), weights_(std::move(weights)), weight_sum_(0) {
    require(level_ >= 1, "level must be >= 1");
    for (int k : weights_) {
        require(k >= 0 && k <= level_, "sl2 weights must lie in [0, level]");
        weight_sum_ += k;
    }
}

SL2WeightVector SL2WeightVector::repeated(int level, int k, int count, std::vector<int> tail) {
    require(count >= 0, "repeat count must be >= 0");
    std::vector<int> weights(static_cast<std::size_t>(count), k);
    weights.insert(weights.end(), tail.begin(), tail.end());
    return SL2WeightVector(level, std::move(weights));
}

int fusion3(int a, int b, int c, int ell) {
    require(ell >= 1, "level must be >= 1");
    require(a >= 0 && a <= ell && b >= 0 && b <= ell && c >= 0 && c <= ell, "fusion weights must lie in [0, level]");
    const int sum = a + b + c;
    if (sum % 2 != 0) return 0;
    if (c < std::abs(a - b) || c > a + b) return 0;
    return sum <= 2 * ell ? 1 : 0;
}

BigInt rank(const SL2WeightVector& v) {
    const int ell = v.level();
    if (v.weight_sum() % 2 != 0) return 0;
    std::vector<BigInt> current(ell + 1, BigInt(0));
    std::vector<BigInt> next(ell + 1);
    current[0] = 1;
    for (int k : v.weights()) {
        std::fill(next.begin(), next.end(), BigInt(0));
        for (int mu = 0; mu <= ell; ++mu) {
            if (current[mu] == 0) continue;
            const int lo = std::abs(mu - k);
            const int hi = std::min(mu + k, ell);
            for (int nu = lo; nu <= hi; nu += 2) {
                if (fusion3(mu, k, nu, ell)) next[nu] += current[mu];
            }
        }
        std::swap(current, next);
    }
    return current[0];
}

namespace {

void count_paths(const std::vector<int>& weights, int ell, std::size_t pos, int mu, BigInt& count) {
    if (pos == weights.size()) {
        if (mu == 0) count += 1;
        return;
    }
    for (int nu = 0; nu <= ell; ++nu) {
        if (fusion3(mu, weights[pos], nu, ell)) count_paths(weights, ell, pos + 1, nu, count);
    }
}

}  // namespace

BigInt enumerate_paths(const SL2WeightVector& v) {
    BigInt count = 0;
    count_paths(v.weights(), v.level(), 0, 0, count);
    return count;
}

BigInt rank_ones(int ell, int j, int t) {
    if (t < 0 || t > ell) return 0;
    return rank(SL2WeightVector::repeated(ell, 1, j, {t}));
}

std::vector<std::vector<BigInt>> rank_recurrence_table(int ell, int jmax) {
    require(ell >= 1, "level must be >= 1");
    require(jmax >= 0, "jmax must be >= 0");
    std::vector<std::vector<BigInt>> rows(jmax + 1, std::vector<BigInt>(ell + 1, BigInt(0)));
    rows[0][0] = 1;  // r_ℓ(t) = 1 iff t = 0
    for (int j = 1; j <= jmax; ++j) {
        for (int t = 0; t <= ell; ++t) {
            if (t == j) {
                rows[j][t] = (j <= ell) ? 1 : 0;
                continue;
            }
            BigInt value = 0;
            if (t >= 1) value += rows[j - 1][t - 1];
            if (t + 1 <= ell) value += rows[j - 1][t + 1];  // r_ℓ(1^{j-1}, ℓ+1) = 0
            rows[j][t] = value;
        }
    }
    return rows;
}

BigInt rank_recurrence(int ell, int j, int t) {
    require(t >= 0 && t <= ell, "t must lie in [0, level]");
    require(j >= 0, "j must be >= 0");
    return rank_recurrence_table(ell, j)[j][t];
}

bool nonzero_criterion(const SL2WeightVector& v) {
    if (v.weight_sum() % 2 != 0) return false;
    const int n = v.n();
    const long long ell = v.level();
    const long long lhs = v.weight_sum() - static_cast<long long>(n - 1) * ell;

    // Minimize Σ_{i∈I}(2k_i - ℓ) over I with n - |I| odd: take every negative
    // term, then fix parity by the cheapest single insertion or removal.
    long long sum = 0;
    int size = 0;
    long long cheapest_add = std::numeric_limits<long long>::max();
    long long cheapest_drop = std::numeric_limits<long long>::max();
    for (int k : v.weights()) {
        const long long c = 2LL * k - ell;
        if (c < 0) {
            sum += c;
            ++size;
            cheapest_drop = std::min(cheapest_drop, -c);
        } else {
            cheapest_add = std::min(cheapest_add, c);
        }
    }
    if ((n - size) % 2 == 0) {
        const long long fix = std::min(cheapest_add, cheapest_drop);
        if (fix == std::numeric_limits<long long>::max()) return true;  // no admissible I
        sum += fix;
    }
    return lhs <= sum;
}

bool nonzero_criterion_bruteforce(const SL2WeightVector& v) {
    const int n = v.n();
    require(n <= 20, "brute-force criterion supports n <= 20");
    if (v.weight_sum() % 2 != 0) return false;
    const long long ell = v.level();
    const long long lhs = v.weight_sum() - static_cast<long long>(n - 1) * ell;
    const auto& k = v.weights();
    for (unsigned mask = 0; mask < (1u << n); ++mask) {
        const int size = std::popcount(mask);
        if ((n - size) % 2 == 0) continue;
        long long rhs = 0;
        for (int i = 0; i < n; ++i) {
            if (mask & (1u << i)) rhs += 2LL * k[i] - ell;
        }
        if (lhs > rhs) return false;
    }
    return true;
}

bool zero_criterion_kpattern(int ell, int k, int i, int t) {
    require(1 < k && k < ell, "k-pattern criterion requires 1 < k < level");
    require(t >= 0 && t <= ell, "t must lie in [0, level]");
    require(i >= 0, "i must be >= 0");
    if ((static_cast<long long>(k) * i + t) % 2 != 0) return true;
    if (i == 0) return t != 0;
    auto below_bound = [&](const Rational& x) { return Rational(i) < std::max(x, Rational(2) - x); };
    if (2 * k <= ell) return below_bound(Rational(t, k));
    if (i % 2 == 0) return below_bound(Rational(t, ell - k));
    return below_bound(Rational(ell - t, ell - k));
}

int critical_level(const SL2WeightVector& v) {
    require(v.weight_sum() % 2 == 0, "critical level requires an even weight sum");
    return static_cast<int>(v.weight_sum() / 2 - 1);
}

bool is_trivial(const SL2WeightVector& v) { return v.level() > critical_level(v); }

BigInt cb_intersect_omega1(int ell, int g, int i) {
    require(g >= 1 && ell >= 1 && ell <= g, "requires 1 <= ell <= g");
    require(i >= 1 && i <= g, "requires 1 <= i <= g");
    return rank_ones(ell, i, ell) * rank_ones(ell, 2 * g - i, ell);
}

IntersectionVector cb_vector_omega1(int ell, int g) {
    RationalVector v(g);
    for (int i = 1; i <= g; ++i) v(i - 1) = Rational(cb_intersect_omega1(ell, g, i));
    return IntersectionVector(2 * g + 2, std::move(v));
}

BigInt cb_intersect_kequalsell(int ell, int n, int i) {
    require(ell >= 1, "level must be >= 1");
    require(n % 2 == 0, "k = level family requires n even");
    require(n >= 4, "requires n >= 4");
    require(i >= 1 && i <= basis_rank(n), "requires 1 <= i <= floor(n/2) - 1");
    return BigInt(ell) * rank(SL2WeightVector::repeated(ell, ell, n - i - 2, {ell})) *
           rank(SL2WeightVector::repeated(ell, ell, i, {ell}));
}

bool deg4_nonzero_sufficient(const std::array<int, 4>& w, int ell) {
    require(ell >= 1, "level must be >= 1");
    for (int x : w) require(x >= 0 && x <= ell, "4-point weights must lie in [0, level]");
    const int sum = w[0] + w[1] + w[2] + w[3];
    const int lightest = *std::min_element(w.begin(), w.end());
    return sum % 2 == 0 && sum > 2 * ell && sum < 2 * ell + 2 + 2 * lightest;
}

std::optional<int> quoted_deg4(const std::array<int, 4>& w, int ell) {
    std::array<int, 4> s = w;
    std::sort(s.begin(), s.end());
    if (s == std::array<int, 4>{0, 0, ell, ell}) return 0;
    if (s == std::array<int, 4>{0, ell, ell, ell}) return 0;
    if (s == std::array<int, 4>{ell, ell, ell, ell}) return ell;
    return std::nullopt;
}

bool fcurve_zero_criterion(int ell, int k, int n, std::array<int, 4> profile) {
    require(k > 1, "hypothesis 1 < k violated");
    require(4 * k < 3 * ell, "hypothesis k < 3*ell/4 violated");
    require(n % 2 == 0, "hypothesis n even violated");
    require(2 * ell <= k * n - 2, "hypothesis ell <= k*n/2 - 1 violated");
    const SymmetricFCurve f = fcurve_from_profile(n, profile);
    const auto& p = f.profile();
    return k * (p[0] + p[1] + p[2]) <= ell + 1;
}

std::optional<std::array<int, 4>> nonvanishing_witness(int ell, int k, std::array<int, 4> profile) {
    require(ell >= 1 && k >= 0 && k <= ell, "requires 0 <= k <= level");
    std::array<std::vector<bool>, 4> leg_nonzero;
    for (int leg = 0; leg < 4; ++leg) {
        require(profile[leg] >= 1, "profile entries must be >= 1");
        leg_nonzero[leg].resize(ell + 1);
        for (int u = 0; u <= ell; ++u) {
            leg_nonzero[leg][u] = rank(SL2WeightVector::repeated(ell, k, profile[leg], {u})) > 0;
        }
    }
    std::array<int, 4> u{};
    for (u[0] = 0; u[0] <= ell; ++u[0]) {
        if (!leg_nonzero[0][u[0]]) continue;
        for (u[1] = 0; u[1] <= ell; ++u[1]) {
            if (!leg_nonzero[1][u[1]]) continue;
            for (u[2] = 0; u[2] <= ell; ++u[2]) {
                if (!leg_nonzero[2][u[2]]) continue;
                for (u[3] = 0; u[3] <= ell; ++u[3]) {
                    if (leg_nonzero[3][u[3]] && deg4_nonzero_sufficient(u, ell)) return u;
                }
            }
        }
    }
    return std::nullopt;
}

}  // namespace vb::cb
