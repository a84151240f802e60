#pragma once

#include "vb/core.hpp"
#include "vb/veronese.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace vb::verify {

/// A claim checked by this module turned out false. Carries the witness.
class FalsificationError : public std::runtime_error {
public:
    FalsificationError(const std::string& claim, std::string witness)
        : std::runtime_error(claim + ": " + witness), claim_(claim), witness_(std::move(witness)) {}

    const std::string& claim() const { return claim_; }
    const std::string& witness() const { return witness_; }

private:
    std::string claim_;
    std::string witness_;
};

/// Outcome of a check: pass/fail, a witness on failure, and ordered
/// key/value facts gathered along the way.
struct CheckReport {
    explicit CheckReport(std::string name) : check(std::move(name)) {}

    std::string check;
    bool pass = true;
    bool applicable = true;  // false when the inputs fall outside the claim's hypotheses
    std::string witness;
    std::vector<std::pair<std::string, std::string>> facts;

    void fail(std::string w) {
        if (pass) witness = std::move(w);
        pass = false;
    }
    void note(std::string key, std::string value) { facts.emplace_back(std::move(key), std::move(value)); }
};

/// D(sl_2, ℓ, ω_1^{2g+2}) written as Σ c_{ℓ'} D_{(ℓ'-1)/(ℓ'+1), (1/(ℓ'+1))^{2g+2}}
/// over ℓ' ≡ ℓ (mod 2), ℓ <= ℓ' <= g.
struct DecompositionResult {
    int ell = 0;
    int g = 0;
    std::map<int, Rational> coefficients;
    IntersectionVector target;
    IntersectionVector residual;
};

/// Exact triangular solve on the coordinates j ≡ ℓ (mod 2). Throws
/// FalsificationError on nonzero residual, a negative coefficient, or a
/// nonpositive coefficient at ℓ' = ℓ.
DecompositionResult poscomb_decompose(int ell, int g);

CheckReport check_poscomb(int ell, int g);

// r with a = r·b and r > 0, if it exists (vectors of equal length).
std::optional<Rational> proportionality_ratio(const RationalVector& a, const RationalVector& b);

CheckReport check_increasing(int ell, int g);

CheckReport check_determinant_lemma(int ell, int imax);

/// Same zero set on F_1..F_g for the conformal block vector and the Veronese
/// vector (through the intersection formula), plus a successful decomposition.
CheckReport check_same_face(int ell, int g);

CheckReport check_kequalsell(int ell, int n);

// r_ℓ(ℓ^t, ℓ) = r_ℓ(1^t, 1) for t = 0..tmax.
CheckReport check_level_shadow(int ell, int tmax);

/// Every wall variant of every F-curve gives the same intersection number,
/// and so does every choice of which part plays A_4. Symmetric weights are
/// scanned by profile; otherwise set partitions are enumerated up to
/// `max_curves`.
CheckReport check_wall_independence(const veronese::WeightData& w, int max_curves);

/// For every profile: the contraction criterion says "nonzero" exactly when a
/// nonvanishing witness exists.
CheckReport check_fcurve_criterion(int ell, int k, int n);

/// Single-curve report. Inputs outside the criterion's hypotheses yield an
/// "excluded" report naming the hypothesis; the one out-of-hypothesis case
/// with a recorded value (ℓ=4, k=3, n=8, F_{2,2,2,2}) carries that value.
CheckReport fcurve_criterion_report(int ell, int k, int n, std::array<int, 4> profile);

// All unordered partitions of [n] into four nonempty blocks, up to `limit`.
std::vector<FCurve> enumerate_fcurves(int n, std::size_t limit);

// All sorted profiles a <= b <= c <= d summing to n.
std::vector<std::array<int, 4>> enumerate_profiles(int n);

}  // namespace vb::verify
