#pragma once

#include "vb/rational.hpp"

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

namespace vb {

/// Raised when an operation's documented precondition is violated. `what()`
/// names the precondition so the CLI can surface it verbatim.
class PreconditionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Raised for inputs that are well-formed but deliberately unsupported.
class OutOfScopeError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline void require(bool condition, const std::string& what) {
    if (!condition) throw PreconditionError(what);
}

// Sorted, 1-based subset of [n] = {1..n}.
using IndexSet = std::vector<int>;

IndexSet make_index_set(std::vector<int> elements, int n);
IndexSet set_union(const IndexSet& a, const IndexSet& b);
IndexSet set_complement(const IndexSet& a, int n);

// Σ_{j∈J} weights[j-1]
Rational subset_weight(const IndexSet& subset, const std::vector<Rational>& weights);

/// Symmetric F-curve class F_{n1,n2,n3,n4}; the profile is kept in
/// nondecreasing order since the class only depends on the multiset.
class SymmetricFCurve {
public:
    int n() const { return n_; }
    const std::array<int, 4>& profile() const { return profile_; }

    friend bool operator==(const SymmetricFCurve&, const SymmetricFCurve&) = default;

    std::string str() const;

private:
    friend SymmetricFCurve fcurve_from_profile(int n, std::array<int, 4> profile);
    SymmetricFCurve(int n, std::array<int, 4> profile) : n_(n), profile_(profile) {}

    int n_;
    std::array<int, 4> profile_;
};

SymmetricFCurve fcurve_from_profile(int n, std::array<int, 4> profile);

/// F_1..F_g with F_j = F_{1,1,j,n-j-2} and g = ⌊n/2⌋ - 1.
std::vector<SymmetricFCurve> symmetric_basis(int n);

inline int basis_rank(int n) { return n / 2 - 1; }

/// Concrete F-curve F(A1,A2,A3,A4): an ordered partition of [n] into four
/// nonempty parts. The order matters to formulas that single out A4.
class FCurve {
public:
    static FCurve make(int n, std::array<IndexSet, 4> parts);

    // Parts get consecutive labels in the given order: sizes (2,1,1,4) gives
    // A1={1,2}, A2={3}, A3={4}, A4={5..8}.
    static FCurve from_sizes(std::array<int, 4> sizes);
    static FCurve from_symmetric(const SymmetricFCurve& f) { return from_sizes(f.profile()); }

    int n() const { return n_; }
    const IndexSet& part(int i) const { return parts_.at(i); }
    const std::array<IndexSet, 4>& parts() const { return parts_; }
    std::array<int, 4> sizes() const;

    // Returns the curve with parts reordered: new part i = old part order[i].
    FCurve reordered(const std::array<int, 4>& order) const;

    SymmetricFCurve symmetric() const;

    std::string str() const;

private:
    FCurve(int n, std::array<IndexSet, 4> parts) : n_(n), parts_(std::move(parts)) {}

    int n_;
    std::array<IndexSet, 4> parts_;
};

/// Values D·F_j for j = 1..g against the symmetric F-curve basis.
struct IntersectionVector {
    int n = 0;
    RationalVector values;

    IntersectionVector() = default;
    IntersectionVector(int n_points, RationalVector v);

    int g() const { return static_cast<int>(values.size()); }
    const Rational& operator()(int j) const { return values(j - 1); }
    Rational& operator()(int j) { return values(j - 1); }

    friend bool operator==(const IntersectionVector& a, const IntersectionVector& b) {
        return a.n == b.n && a.values.size() == b.values.size() && a.values == b.values;
    }
};

/// Coefficients b_r of B_{r+1}, r = 1..g, in the boundary basis B_2..B_{g+1}.
struct SymmetricDivisorClass {
    int n = 0;
    RationalVector coeffs;

    SymmetricDivisorClass() = default;
    SymmetricDivisorClass(int n_points, RationalVector c);

    int g() const { return static_cast<int>(coeffs.size()); }
    const Rational& operator()(int r) const { return coeffs(r - 1); }

    friend bool operator==(const SymmetricDivisorClass& a, const SymmetricDivisorClass& b) {
        return a.n == b.n && a.coeffs.size() == b.coeffs.size() && a.coeffs == b.coeffs;
    }
};

std::string join(const RationalVector& v, const char* sep = ", ");

}  // namespace vb
