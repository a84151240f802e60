#include "vb/verify.hpp"

#include "vb/confblocks.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <functional>

namespace vb::verify {

namespace {

std::string vec_str(const RationalVector& v) { return "(" + join(v) + ")"; }

std::vector<int> zero_set(const RationalVector& v) {
    std::vector<int> out;
    for (Eigen::Index j = 0; j < v.size(); ++j) {
        if (v(j).is_zero()) out.push_back(static_cast<int>(j + 1));
    }
    return out;
}

std::string list_str(const std::vector<int>& xs) {
    std::string out = "{";
    for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? "," : "") + std::to_string(xs[i]);
    return out + "}";
}

}  // namespace

DecompositionResult poscomb_decompose(int ell, int g) {
    require(g >= 1 && ell >= 1 && ell <= g, "poscomb requires 1 <= ell <= g");
    const std::string claim = "nonnegative decomposition (ell=" + std::to_string(ell) + ", g=" + std::to_string(g) + ")";

    DecompositionResult out;
    out.ell = ell;
    out.g = g;
    out.target = cb::cb_vector_omega1(ell, g);

    for (int j = 1; j <= g; ++j) {
        if (j % 2 != ell % 2 && !out.target(j).is_zero()) {
            throw FalsificationError(claim, "off-parity target entry t_" + std::to_string(j) + " = " + out.target(j).str());
        }
    }

    std::vector<int> levels;  // ℓ' = ℓ, ℓ+2, ...; also the active coordinates j
    for (int l = ell; l <= g; l += 2) levels.push_back(l);
    const auto m = static_cast<Eigen::Index>(levels.size());

    RationalMatrix candidates(g, m);
    for (int j = 1; j <= g; ++j) {
        for (Eigen::Index c = 0; c < m; ++c) candidates(j - 1, c) = veronese::closed_form_value(levels[c], g, j);
    }

    RationalMatrix system(m, m);
    RationalVector rhs(m);
    for (Eigen::Index r = 0; r < m; ++r) {
        system.row(r) = candidates.row(levels[r] - 1);
        rhs(r) = out.target(levels[r]);
        for (Eigen::Index c = r + 1; c < m; ++c) {
            if (!system(r, c).is_zero()) throw FalsificationError(claim, "candidate system is not triangular");
        }
        if (system(r, r).is_zero()) throw FalsificationError(claim, "zero pivot at level " + std::to_string(levels[r]));
    }

    const RationalVector coeffs = system.triangularView<Eigen::Lower>().solve(rhs);
    for (Eigen::Index c = 0; c < m; ++c) out.coefficients.emplace(levels[c], coeffs(c));

    out.residual = IntersectionVector(2 * g + 2, out.target.values - candidates * coeffs);
    for (int j = 1; j <= g; ++j) {
        if (!out.residual(j).is_zero()) {
            throw FalsificationError(claim, "nonzero residual at F_" + std::to_string(j) + ": " + out.residual(j).str());
        }
    }
    for (const auto& [level, c] : out.coefficients) {
        if (c.sign() < 0) throw FalsificationError(claim, "negative coefficient " + c.str() + " at level " + std::to_string(level));
    }
    if (out.coefficients.at(ell).sign() <= 0) {
        throw FalsificationError(claim, "leading coefficient " + out.coefficients.at(ell).str() + " is not positive");
    }
    return out;
}

CheckReport check_poscomb(int ell, int g) {
    CheckReport report{"poscomb"};
    try {
        const auto result = poscomb_decompose(ell, g);
        report.note("target", vec_str(result.target.values));
        for (const auto& [level, c] : result.coefficients) report.note("c[" + std::to_string(level) + "]", c.str());
        report.note("residual", vec_str(result.residual.values));
    } catch (const FalsificationError& e) {
        report.fail(e.witness());
    }
    return report;
}

std::optional<Rational> proportionality_ratio(const RationalVector& a, const RationalVector& b) {
    if (a.size() != b.size()) return std::nullopt;
    std::optional<Rational> ratio;
    for (Eigen::Index j = 0; j < a.size(); ++j) {
        if (a(j).is_zero() != b(j).is_zero()) return std::nullopt;
        if (b(j).is_zero()) continue;
        const Rational r = a(j) / b(j);
        if (ratio && *ratio != r) return std::nullopt;
        ratio = r;
    }
    if (!ratio || ratio->sign() <= 0) return std::nullopt;
    return ratio;
}

CheckReport check_increasing(int ell, int g) {
    require(g >= 1 && ell >= 1 && ell <= g, "increasing check requires 1 <= ell <= g");
    CheckReport report{"increasing"};
    const auto v = cb::cb_vector_omega1(ell, g);
    report.note("cb_vector", vec_str(v.values));
    int comparisons = 0;
    for (int i = 1; i <= g; ++i) {
        if (i % 2 != ell % 2 && !v(i).is_zero()) report.fail("D.F_" + std::to_string(i) + " = " + v(i).str() + " off parity");
    }
    for (int i = ell; i <= g - 2; i += 2) {
        ++comparisons;
        if (v(i) > v(i + 2)) {
            report.fail("D.F_" + std::to_string(i) + " = " + v(i).str() + " > D.F_" + std::to_string(i + 2) + " = " + v(i + 2).str());
        }
    }
    report.note("comparisons", std::to_string(comparisons));
    return report;
}

CheckReport check_determinant_lemma(int ell, int imax) {
    require(ell >= 1, "determinant lemma requires ell >= 1");
    require(imax >= 2, "determinant lemma requires imax >= 2");
    CheckReport report{"determinant"};
    std::vector<std::vector<BigInt>> r(imax + 1, std::vector<BigInt>(ell + 1));
    for (int i = 0; i <= imax; ++i) {
        for (int j = 0; j <= ell; ++j) r[i][j] = cb::rank_ones(ell, i, j);
    }
    long long quadruples = 0;
    for (int i1 = 0; i1 <= imax; ++i1) {
        for (int i2 = i1 + 2; i2 <= imax; i2 += 2) {
            for (int j1 = i1 % 2; j1 <= ell; j1 += 2) {
                for (int j2 = j1 + 2; j2 <= ell; j2 += 2) {
                    ++quadruples;
                    const BigInt det = r[i1][j1] * r[i2][j2] - r[i1][j2] * r[i2][j1];
                    if (det < 0) {
                        report.fail("(i1,i2,j1,j2) = (" + std::to_string(i1) + "," + std::to_string(i2) + "," +
                                    std::to_string(j1) + "," + std::to_string(j2) + "), determinant " + det.str());
                    }
                }
            }
        }
    }
    report.note("quadruples", std::to_string(quadruples));
    return report;
}

CheckReport check_same_face(int ell, int g) {
    require(g >= 1 && ell >= 1 && ell <= g, "same-face check requires 1 <= ell <= g");
    require(g + 1 - ell >= 2, "same-face check requires d = g+1-ell >= 2");
    CheckReport report{"same-face"};
    const auto conformal = cb::cb_vector_omega1(ell, g);
    const auto veronese_vec = veronese::theorem_vector(ell, g);
    const auto closed_form = veronese::closed_form_vector(ell, g);
    report.note("cb_vector", vec_str(conformal.values));
    report.note("veronese_vector", vec_str(veronese_vec.values));
    if (!(veronese_vec == closed_form)) {
        report.fail("intersection formula " + vec_str(veronese_vec.values) + " != closed form " + vec_str(closed_form.values));
    }
    const auto z_cb = zero_set(conformal.values);
    const auto z_ver = zero_set(veronese_vec.values);
    report.note("zero_set", list_str(z_cb));
    if (z_cb != z_ver) report.fail("zero sets differ: " + list_str(z_cb) + " vs " + list_str(z_ver));

    const auto decomposition = check_poscomb(ell, g);
    if (!decomposition.pass) report.fail(decomposition.witness);

    const auto ratio = proportionality_ratio(conformal.values, veronese_vec.values);
    report.note("proportional", ratio ? "true" : "false");
    if (ratio) report.note("ratio", ratio->str());
    return report;
}

CheckReport check_kequalsell(int ell, int n) {
    require(ell >= 1, "k = level check requires ell >= 1");
    require(n % 2 == 0 && n >= 6, "k = level check requires even n >= 6");
    CheckReport report{"kequalsell"};
    const int g = basis_rank(n);

    // The reduction step: r_ℓ(ℓ^j, t) = 0 for 0 < t < ℓ.
    for (int j = 0; j <= n; ++j) {
        for (int t = 1; t < ell; ++t) {
            if (cb::rank(cb::SL2WeightVector::repeated(ell, ell, j, {t})) != 0) {
                report.fail("r(" + std::to_string(ell) + "^" + std::to_string(j) + ", " + std::to_string(t) + ") != 0");
            }
        }
    }

    RationalVector lhs(g);
    for (int i = 1; i <= g; ++i) {
        const BigInt direct = cb::cb_intersect_kequalsell(ell, n, i);
        const BigInt level_one = BigInt(ell) * cb::cb_intersect_omega1(1, g, i);
        lhs(i - 1) = Rational(direct);

        // Σ over u_1, u_2 of deg(u_1, u_2, ℓ, ℓ)·r(ℓ^{n-i-2}, u_1)·r(ℓ^i, u_2).
        BigInt summed = 0;
        for (int u1 = 0; u1 <= ell; ++u1) {
            const BigInt r1 = cb::rank(cb::SL2WeightVector::repeated(ell, ell, n - i - 2, {u1}));
            if (r1 == 0) continue;
            for (int u2 = 0; u2 <= ell; ++u2) {
                const BigInt r2 = cb::rank(cb::SL2WeightVector::repeated(ell, ell, i, {u2}));
                if (r2 == 0) continue;
                const auto deg = cb::quoted_deg4({u1, u2, ell, ell}, ell);
                if (!deg) {
                    report.fail("needs an unquoted 4-point degree at (" + std::to_string(u1) + "," + std::to_string(u2) + ")");
                    continue;
                }
                summed += BigInt(*deg) * r1 * r2;
            }
        }
        if (direct != level_one || direct != summed) {
            report.fail("F_" + std::to_string(i) + ": " + direct.str() + " vs level-1 " + level_one.str() + " vs summed " + summed.str());
        }
    }
    report.note("cb_vector", vec_str(lhs));
    return report;
}

CheckReport check_level_shadow(int ell, int tmax) {
    require(ell >= 1 && tmax >= 0, "level shadow check requires ell >= 1, tmax >= 0");
    CheckReport report{"level-shadow"};
    for (int t = 0; t <= tmax; ++t) {
        const BigInt high = cb::rank(cb::SL2WeightVector::repeated(ell, ell, t, {ell}));
        const BigInt low = cb::rank_ones(1, t, 1);
        if (high != low) report.fail("t=" + std::to_string(t) + ": " + high.str() + " != " + low.str());
    }
    report.note("tmax", std::to_string(tmax));
    return report;
}

std::vector<std::array<int, 4>> enumerate_profiles(int n) {
    std::vector<std::array<int, 4>> out;
    for (int a = 1; 4 * a <= n; ++a) {
        for (int b = a; a + 3 * b <= n; ++b) {
            for (int c = b; a + b + 2 * c <= n; ++c) out.push_back({a, b, c, n - a - b - c});
        }
    }
    return out;
}

std::vector<FCurve> enumerate_fcurves(int n, std::size_t limit) {
    require(n >= 4, "F-curves require n >= 4");
    std::vector<FCurve> out;
    std::vector<int> block(n, 0);
    // Restricted growth strings with exactly four blocks.
    std::function<void(int, int)> extend = [&](int pos, int used) {
        if (out.size() >= limit) return;
        if (n - pos < 4 - used) return;
        if (pos == n) {
            std::array<IndexSet, 4> parts;
            for (int i = 0; i < n; ++i) parts[block[i]].push_back(i + 1);
            out.push_back(FCurve::make(n, std::move(parts)));
            return;
        }
        for (int b = 0; b <= std::min(used, 3); ++b) {
            block[pos] = b;
            extend(pos + 1, std::max(used, b + 1));
        }
    };
    extend(0, 0);
    return out;
}

CheckReport check_wall_independence(const veronese::WeightData& w, int max_curves) {
    require(w.d() >= 2, "wall independence requires d >= 2");
    require(w.n() >= 5, "wall independence requires n >= 5");
    require(max_curves >= 1, "max_curves must be >= 1");
    CheckReport report{"wall-independence"};

    std::vector<FCurve> curves;
    if (w.is_symmetric()) {
        for (const auto& p : enumerate_profiles(w.n())) {
            if (curves.size() >= static_cast<std::size_t>(max_curves)) break;
            curves.push_back(FCurve::from_sizes(p));
        }
    } else {
        curves = enumerate_fcurves(w.n(), static_cast<std::size_t>(max_curves));
    }

    long long variants = 0;
    long long curves_on_walls = 0;
    static constexpr std::array<std::array<int, 4>, 4> rotations{{{0, 1, 2, 3}, {1, 2, 3, 0}, {2, 3, 0, 1}, {3, 0, 1, 2}}};
    for (const auto& curve : curves) {
        const Rational base = veronese::intersect(curve, w);
        bool touched = false;
        for (const auto& order : rotations) {
            const FCurve rotated = curve.reordered(order);
            const Rational value = veronese::intersect(rotated, w);
            if (value != base) report.fail(rotated.str() + ": " + value.str() + " != " + base.str() + " (choice of A4)");
            for (const auto& variant : veronese::wall_variants(rotated, w)) {
                touched = true;
                ++variants;
                const Rational bumped = veronese::intersect_with(rotated, w, variant.degrees);
                if (bumped != base) {
                    report.fail(rotated.str() + ": " + (variant.kind == veronese::WallVariant::Kind::Leg ? "leg " : "pair ") +
                                std::to_string(variant.index + 1) + " bumped gives " + bumped.str() + " != " + base.str());
                }
            }
        }
        if (touched) ++curves_on_walls;
    }
    report.note("curves", std::to_string(curves.size()));
    report.note("curves_on_walls", std::to_string(curves_on_walls));
    report.note("variants", std::to_string(variants));
    return report;
}

CheckReport check_fcurve_criterion(int ell, int k, int n) {
    CheckReport report{"fcurve-criterion"};
    int contracted = 0;
    for (const auto& p : enumerate_profiles(n)) {
        const bool zero = cb::fcurve_zero_criterion(ell, k, n, p);
        const auto witness = cb::nonvanishing_witness(ell, k, p);
        const std::string name = fcurve_from_profile(n, p).str();
        if (zero) ++contracted;
        if (zero && witness) report.fail(name + " predicted zero but has a nonvanishing witness");
        if (!zero && !witness) report.fail(name + " predicted nonzero but no witness found");
    }
    report.note("contracted_profiles", std::to_string(contracted));
    return report;
}

CheckReport fcurve_criterion_report(int ell, int k, int n, std::array<int, 4> profile) {
    CheckReport report{"fcurve-criterion"};
    const SymmetricFCurve f = fcurve_from_profile(n, profile);
    report.note("fcurve", f.str());
    bool zero = false;
    try {
        zero = cb::fcurve_zero_criterion(ell, k, n, profile);
    } catch (const PreconditionError& e) {
        report.applicable = false;
        report.note("status", "excluded");
        report.note("reason", e.what());
        if (ell == 4 && k == 3 && n == 8) {
            report.note("recorded_fact",
                        f.profile() == std::array<int, 4>{2, 2, 2, 2}
                            ? "D(sl2,4,3w1^8).F(2,2,2,2) = 0; positive on every other F-curve"
                            : "D(sl2,4,3w1^8) is positive on every F-curve except F(2,2,2,2)");
        }
        return report;
    }
    report.note("status", "applicable");
    report.note("contracted", zero ? "true" : "false");
    const auto witness = cb::nonvanishing_witness(ell, k, f.profile());
    if (witness) {
        const auto& u = *witness;
        report.note("witness_weights", "(" + std::to_string(u[0]) + "," + std::to_string(u[1]) + "," +
                                           std::to_string(u[2]) + "," + std::to_string(u[3]) + ")");
    }
    if (zero && witness) report.fail(f.str() + " predicted zero but has a nonvanishing witness");
    if (!zero && !witness) report.fail(f.str() + " predicted nonzero but no witness found");
    return report;
}

}  // namespace vb::verify
