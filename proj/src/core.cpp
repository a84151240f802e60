#include "vb/core.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace vb {

IndexSet make_index_set(std::vector<int> elements, int n) {
    std::sort(elements.begin(), elements.end());
    require(std::adjacent_find(elements.begin(), elements.end()) == elements.end(),
            "index set has repeated elements");
    for (int e : elements) require(e >= 1 && e <= n, "index " + std::to_string(e) + " outside [1," + std::to_string(n) + "]");
    return elements;
}

IndexSet set_union(const IndexSet& a, const IndexSet& b) {
    IndexSet out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

IndexSet set_complement(const IndexSet& a, int n) {
    IndexSet out;
    out.reserve(n - a.size());
    auto it = a.begin();
    for (int i = 1; i <= n; ++i) {
        if (it != a.end() && *it == i) {
            ++it;
        } else {
            out.push_back(i);
        }
    }
    return out;
}

Rational subset_weight(const IndexSet& subset, const std::vector<Rational>& weights) {
    Rational sum;
    for (int j : subset) sum += weights.at(j - 1);
    return sum;
}

SymmetricFCurve fcurve_from_profile(int n, std::array<int, 4> profile) {
    for (int p : profile) require(p >= 1, "F-curve profile entries must be >= 1");
    require(std::accumulate(profile.begin(), profile.end(), 0) == n, "F-curve profile must sum to n");
    std::sort(profile.begin(), profile.end());
    return SymmetricFCurve(n, profile);
}

std::string SymmetricFCurve::str() const {
    std::ostringstream os;
    os << "F_{" << profile_[0] << ',' << profile_[1] << ',' << profile_[2] << ',' << profile_[3] << '}';
    return os.str();
}

std::vector<SymmetricFCurve> symmetric_basis(int n) {
    require(n >= 4, "symmetric basis requires n >= 4");
    const int g = basis_rank(n);
    std::vector<SymmetricFCurve> basis;
    basis.reserve(g);
    for (int j = 1; j <= g; ++j) basis.push_back(fcurve_from_profile(n, {1, 1, j, n - j - 2}));
    return basis;
}

FCurve FCurve::make(int n, std::array<IndexSet, 4> parts) {
    require(n >= 4, "F-curve requires n >= 4");
    std::vector<int> seen(n + 1, 0);
    for (auto& part : parts) {
        require(!part.empty(), "F-curve parts must be nonempty");
        part = make_index_set(part, n);
        for (int e : part) {
            require(seen[e] == 0, "F-curve parts must be disjoint");
            seen[e] = 1;
        }
    }
    require(std::count(seen.begin() + 1, seen.end(), 1) == n, "F-curve parts must cover [n]");
    return FCurve(n, std::move(parts));
}

FCurve FCurve::from_sizes(std::array<int, 4> sizes) {
    std::array<IndexSet, 4> parts;
    int next = 1;
    for (int i = 0; i < 4; ++i) {
        require(sizes[i] >= 1, "F-curve parts must be nonempty");
        for (int k = 0; k < sizes[i]; ++k) parts[i].push_back(next++);
    }
    return make(next - 1, std::move(parts));
}

std::array<int, 4> FCurve::sizes() const {
    return {static_cast<int>(parts_[0].size()), static_cast<int>(parts_[1].size()),
            static_cast<int>(parts_[2].size()), static_cast<int>(parts_[3].size())};
}

FCurve FCurve::reordered(const std::array<int, 4>& order) const {
    std::array<IndexSet, 4> parts;
    for (int i = 0; i < 4; ++i) parts[i] = parts_.at(order[i]);
    return make(n_, std::move(parts));
}

SymmetricFCurve FCurve::symmetric() const { return fcurve_from_profile(n_, sizes()); }

std::string FCurve::str() const {
    std::ostringstream os;
    os << "F(";
    for (int i = 0; i < 4; ++i) {
        if (i) os << " | ";
        for (std::size_t k = 0; k < parts_[i].size(); ++k) os << (k ? "," : "") << parts_[i][k];
    }
    os << ')';
    return os.str();
}

IntersectionVector::IntersectionVector(int n_points, RationalVector v) : n(n_points), values(std::move(v)) {
    require(values.size() == basis_rank(n), "intersection vector must have g = floor(n/2) - 1 entries");
}

SymmetricDivisorClass::SymmetricDivisorClass(int n_points, RationalVector c) : n(n_points), coeffs(std::move(c)) {
    require(coeffs.size() == basis_rank(n), "divisor class must have g = floor(n/2) - 1 coefficients");
}

std::string join(const RationalVector& v, const char* sep) {
    std::string out;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (i) out += sep;
        out += v(i).str();
    }
    return out;
}

}  // namespace vb
