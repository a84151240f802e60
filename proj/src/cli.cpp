#include "vb/cli.hpp"

#include "vb/confblocks.hpp"
#include "vb/veronese.hpp"
#include "vb/verify.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <thread>

namespace vb::cli {

using nlohmann::json;

namespace {

const std::map<std::string, std::vector<std::string>>& command_keys() {
    static const std::map<std::string, std::vector<std::string>> keys{
        {"sigma", {"ell", "g", "d", "gamma", "weights", "subset", "size"}},
        {"intersect", {"ell", "g", "d", "gamma", "weights", "profile", "parts"}},
        {"class", {"ell", "g", "n", "values"}},
        {"rank", {"ell", "weights"}},
        {"cb-intersect", {"family", "ell", "g", "n", "i"}},
        {"verify", {"ell", "g", "gmax", "n", "imax", "tmax", "k", "profile", "d", "gamma", "weights", "max-curves", "limit"}},
        {"table", {"ell", "g", "jmax", "limit"}},
    };
    return keys;
}

const std::set<std::string> kVerifyTargets{"poscomb",    "increasing", "determinant", "same-face",
                                           "kequalsell", "level-shadow", "wall",      "fcurve"};
const std::set<std::string> kTableTargets{"closed-form", "ranks", "classes", "cb-vectors"};

constexpr int kDefaultLimit = 12;

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, sep)) out.push_back(trim(item));
    if (!s.empty() && s.back() == sep) out.emplace_back();
    return out;
}

Format parse_format(const std::string& s) {
    if (s == "plain") return Format::Plain;
    if (s == "json") return Format::Json;
    if (s == "csv") return Format::Csv;
    throw UsageError("unknown format '" + s + "' (expected plain, json or csv)");
}

bool parse_bool(const std::string& key, const std::string& s) {
    if (s == "true" || s == "1" || s == "yes") return true;
    if (s == "false" || s == "0" || s == "no") return false;
    throw UsageError(key + ": expected true or false, got '" + s + "'");
}

int env_threads() {
    const char* raw = std::getenv("VERONESE_BLOCKS_THREADS");
    if (!raw || !*raw) return 1;
    int v = 0;
    const std::string_view s(raw);
    const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size() || v < 1) {
        throw UsageError("VERONESE_BLOCKS_THREADS must be a positive integer");
    }
    return v;
}

// Results land by index, so completion order never shows in the output.
// The first exception by index is rethrown.
template <class T>
std::vector<T> parallel_map(std::size_t count, int threads, const std::function<T(std::size_t)>& f) {
    std::vector<std::optional<T>> slots(count);
    std::vector<std::exception_ptr> errors(count);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < count; i = next++) {
            try {
                slots[i] = f(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const auto n = static_cast<std::size_t>(std::max(1, threads));
    std::vector<std::thread> pool;
    for (std::size_t t = 1; t < std::min(n, count); ++t) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    std::vector<T> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) {
        if (errors[i]) std::rethrow_exception(errors[i]);
        out.push_back(std::move(*slots[i]));
    }
    return out;
}

class Params {
public:
    explicit Params(const std::map<std::string, std::string>& raw) : raw_(raw) {}

    bool has(const std::string& key) const { return raw_.count(key) > 0; }

    const std::string& str(const std::string& key) const {
        auto it = raw_.find(key);
        if (it == raw_.end()) throw UsageError("missing required parameter --" + key);
        return it->second;
    }

    int integer(const std::string& key) const { return to_int(key, str(key)); }
    int integer_or(const std::string& key, int fallback) const { return has(key) ? integer(key) : fallback; }

    std::vector<int> int_list(const std::string& key) const {
        std::vector<int> out;
        for (const auto& item : split(str(key), ',')) out.push_back(to_int(key, item));
        return out;
    }

    Rational rational(const std::string& key) const { return to_rational(key, str(key)); }

    std::vector<Rational> rational_list(const std::string& key) const {
        std::vector<Rational> out;
        for (const auto& item : split(str(key), ',')) out.push_back(to_rational(key, item));
        return out;
    }

    std::array<int, 4> four(const std::string& key) const {
        const auto v = int_list(key);
        if (v.size() != 4) throw UsageError("--" + key + " expects four comma-separated sizes");
        return {v[0], v[1], v[2], v[3]};
    }

private:
    static int to_int(const std::string& key, const std::string& s) {
        int v = 0;
        const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (s.empty() || ec != std::errc{} || p != s.data() + s.size()) {
            throw UsageError("--" + key + ": expected an integer, got '" + s + "'");
        }
        return v;
    }

    static Rational to_rational(const std::string& key, const std::string& s) {
        try {
            return parse_rational(s);
        } catch (const std::exception&) {
            throw UsageError("--" + key + ": expected a rational p/q, got '" + s + "'");
        }
    }

    const std::map<std::string, std::string>& raw_;
};

json rational_array(const RationalVector& v) {
    json out = json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i).str());
    return out;
}

veronese::WeightData weight_data(const Params& p) {
    const bool explicit_weights = p.has("d") || p.has("gamma") || p.has("weights");
    if (explicit_weights) {
        if (p.has("ell") || p.has("g")) throw UsageError("give either --ell/--g or --d/--gamma/--weights, not both");
        return veronese::WeightData::make(p.integer("d"), p.has("gamma") ? p.rational("gamma") : Rational(0),
                                          p.rational_list("weights"));
    }
    return veronese::standard_weights(p.integer("ell"), p.integer("g"));
}

FCurve curve_from(const Params& p, int n) {
    if (p.has("profile") == p.has("parts")) throw UsageError("give exactly one of --profile or --parts");
    if (p.has("profile")) {
        const auto sizes = p.four("profile");
        require(sizes[0] + sizes[1] + sizes[2] + sizes[3] == n, "profile must sum to n");
        for (int s : sizes) require(s >= 1, "profile entries must be >= 1");
        return FCurve::from_sizes(sizes);
    }
    const auto blocks = split(p.str("parts"), '/');
    if (blocks.size() != 4) throw UsageError("--parts expects four '/'-separated blocks, e.g. 1,2/3/4/5,6");
    std::array<IndexSet, 4> parts;
    for (int i = 0; i < 4; ++i) {
        Params block({{"parts", blocks[i]}});
        parts[i] = make_index_set(block.int_list("parts"), n);
    }
    return FCurve::make(n, std::move(parts));
}

// Oracle reruns; each mismatch is recorded as a witness.
struct Oracle {
    bool enabled = false;
    long long checks = 0;
    std::vector<std::string> mismatches;

    void rank(const cb::SL2WeightVector& v, const BigInt& value) {
        if (!enabled || v.n() > 12) return;
        ++checks;
        const BigInt paths = cb::enumerate_paths(v);
        if (paths != value) {
            std::string w;
            for (int k : v.weights()) w += (w.empty() ? "" : ",") + std::to_string(k);
            mismatches.push_back("rank(level " + std::to_string(v.level()) + "; " + w + ") = " + value.str() +
                                 " but path enumeration gives " + paths.str());
        }
    }

    void ones(int ell, int j, int t, const BigInt& value) {
        if (t < 0 || t > ell) return;
        rank(cb::SL2WeightVector::repeated(ell, 1, j, {t}), value);
    }

    void cb_vector(int ell, int g, const IntersectionVector& v) {
        if (!enabled) return;
        for (int i = 1; i <= g; ++i) {
            const BigInt a = cb::rank_ones(ell, i, ell);
            const BigInt b = cb::rank_ones(ell, 2 * g - i, ell);
            ones(ell, i, ell, a);
            ones(ell, 2 * g - i, ell, b);
            if (Rational(a * b) != v(i)) mismatches.push_back("cb vector entry " + std::to_string(i) + " inconsistent");
        }
    }

    void closed_form(int ell, int g, const IntersectionVector& v) {
        if (!enabled || g + 1 - ell < 2) return;
        const auto w = veronese::standard_weights(ell, g);
        for (int i = 1; i <= g; ++i) {
            ++checks;
            const Rational full = veronese::intersect(FCurve::from_sizes({2 * g - i, i, 1, 1}), w);
            if (full != v(i)) {
                mismatches.push_back("closed-form value (ell=" + std::to_string(ell) + ", g=" + std::to_string(g) +
                                     ", i=" + std::to_string(i) + ") = " + v(i).str() + " but the full formula gives " +
                                     full.str());
            }
        }
    }

    void finish(Report& r) const {
        if (!enabled) return;
        r.outputs["oracle_checks"] = checks;
        r.outputs["oracle_agrees"] = mismatches.empty();
        if (!mismatches.empty()) {
            r.pass = false;
            if (!r.witness) r.witness = "oracle: " + mismatches.front();
        }
    }
};

void check_limit(const std::string& what, int value, int limit, long long cells, long long evals) {
    if (value <= limit) return;
    throw PreconditionError(what + " = " + std::to_string(value) + " exceeds the desk-scale limit " +
                            std::to_string(limit) + " (estimated cost: " + std::to_string(cells) + " cells, about " +
                            std::to_string(evals) + " exact evaluations); pass --limit to override");
}

json facts_json(const verify::CheckReport& c) {
    json out = json::object();
    for (const auto& [k, v] : c.facts) out[k] = v;
    return out;
}

void absorb(Report& r, const verify::CheckReport& c) {
    for (const auto& [k, v] : c.facts) r.outputs[k] = v;
    r.outputs["check"] = c.check;
    if (!c.applicable) {
        r.status = "excluded";
        return;
    }
    r.pass = c.pass;
    if (!c.pass) r.witness = c.witness;
}

Report cmd_sigma(const Params& p) {
    Report r;
    const auto w = weight_data(p);
    IndexSet subset;
    if (p.has("subset") == p.has("size")) throw UsageError("give exactly one of --subset or --size");
    if (p.has("subset")) {
        subset = make_index_set(p.int_list("subset"), w.n());
    } else {
        const int size = p.integer("size");
        require(size >= 1 && size <= w.n(), "size must lie in [1, n]");
        for (int i = 1; i <= size; ++i) subset.push_back(i);
    }
    r.outputs["n"] = w.n();
    r.outputs["d"] = w.d();
    r.outputs["weight"] = w.weight_of(subset).str();
    r.outputs["phi"] = veronese::phi(subset, w).str();
    r.outputs["sigma"] = veronese::sigma(subset, w);
    r.outputs["on_wall"] = veronese::on_wall(subset, w);
    return r;
}

Report cmd_intersect(const Params& p, Oracle& oracle) {
    Report r;
    const auto w = weight_data(p);
    const FCurve curve = curve_from(p, w.n());
    const auto deg = veronese::leg_degrees(curve, w);
    const Rational value = veronese::intersect(curve, w);
    r.outputs["curve"] = curve.str();
    r.outputs["value"] = value.str();
    r.outputs["sigma"] = deg.sigma;
    r.outputs["pair_sigma"] = deg.pair_sigma;
    r.outputs["b"] = deg.b;
    r.outputs["veronese_contracts"] = veronese::veronese_contracts(curve, w);
    r.outputs["hassett_contracts"] = veronese::hassett_contracts(curve, w);
    if (oracle.enabled && !p.has("d")) {
        const int ell = p.integer("ell");
        const int g = p.integer("g");
        const auto prof = curve.symmetric().profile();
        if (prof[0] == 1 && prof[1] == 1) {
            const int i = std::min(prof[2], prof[3]);
            ++oracle.checks;
            const Rational closed = veronese::closed_form_value(ell, g, i);
            if (closed != value) oracle.mismatches.push_back("closed form gives " + closed.str());
        }
    }
    return r;
}

Report cmd_class(const Params& p, Oracle& oracle) {
    Report r;
    if (p.has("values")) {
        if (p.has("ell") || p.has("g")) throw UsageError("give either --ell/--g or --n/--values, not both");
        const int n = p.integer("n");
        const auto list = p.rational_list("values");
        RationalVector v(static_cast<Eigen::Index>(list.size()));
        for (std::size_t i = 0; i < list.size(); ++i) v(i) = list[i];
        require(n >= 5, "class requires n >= 5");
        require(v.size() == basis_rank(n), "--values must have floor(n/2) - 1 entries");
        const auto cls = veronese::symmetric_class(IntersectionVector(n, v), n);
        r.outputs["n"] = n;
        r.outputs["coefficients"] = rational_array(cls.coeffs);
        return r;
    }
    const int ell = p.integer("ell");
    const int g = p.integer("g");
    require(g >= 2, "class requires g >= 2 (n >= 5)");
    const auto jv = veronese::closed_form_vector(ell, g);
    oracle.closed_form(ell, g, jv);
    const auto cls = veronese::symmetric_class(jv, 2 * g + 2);
    const auto closed = veronese::closed_form_class(ell, g);
    r.outputs["n"] = 2 * g + 2;
    r.outputs["intersections"] = rational_array(jv.values);
    r.outputs["coefficients"] = rational_array(cls.coeffs);
    r.outputs["matches_closed_form"] = (cls == closed);
    return r;
}

Report cmd_rank(const Params& p, Oracle& oracle) {
    Report r;
    const cb::SL2WeightVector v(p.integer("ell"), p.int_list("weights"));
    const BigInt value = cb::rank(v);
    oracle.rank(v, value);
    r.outputs["rank"] = value.str();
    r.outputs["nonzero_criterion"] = cb::nonzero_criterion(v);
    if (v.weight_sum() % 2 == 0) {
        r.outputs["critical_level"] = cb::critical_level(v);
        r.outputs["trivial"] = cb::is_trivial(v);
    }
    return r;
}

Report cmd_cb_intersect(const Params& p, Oracle& oracle) {
    Report r;
    const std::string family = p.has("family") ? p.str("family") : "omega1";
    const int ell = p.integer("ell");
    r.outputs["family"] = family;
    if (family == "omega1") {
        const int g = p.integer("g");
        const auto v = cb::cb_vector_omega1(ell, g);
        oracle.cb_vector(ell, g, v);
        if (p.has("i")) {
            const int i = p.integer("i");
            require(i >= 1 && i <= g, "requires 1 <= i <= g");
            r.outputs["value"] = v(i).str();
        } else {
            r.outputs["values"] = rational_array(v.values);
        }
        return r;
    }
    if (family == "kequalsell") {
        const int n = p.integer("n");
        require(n % 2 == 0 && n >= 4, "k = level family requires even n >= 4");
        const int g = basis_rank(n);
        json values = json::array();
        for (int i = 1; i <= g; ++i) {
            if (p.has("i") && p.integer("i") != i) continue;
            const BigInt value = cb::cb_intersect_kequalsell(ell, n, i);
            if (oracle.enabled) {
                const auto a = cb::SL2WeightVector::repeated(ell, ell, n - i - 2, {ell});
                const auto b = cb::SL2WeightVector::repeated(ell, ell, i, {ell});
                oracle.rank(a, cb::rank(a));
                oracle.rank(b, cb::rank(b));
            }
            values.push_back(value.str());
        }
        if (p.has("i")) {
            require(!values.empty(), "requires 1 <= i <= floor(n/2) - 1");
            r.outputs["value"] = values.front();
        } else {
            r.outputs["values"] = values;
        }
        return r;
    }
    throw UsageError("unknown family '" + family + "' (expected omega1 or kequalsell)");
}

using CaseCheck = std::function<verify::CheckReport(int, int)>;

void sweep(Report& r, const Params& p, int threads, bool need_d2, const CaseCheck& check) {
    const int gmax = p.integer("gmax");
    const int limit = p.integer_or("limit", kDefaultLimit);
    check_limit("gmax", gmax, limit, static_cast<long long>(gmax) * (gmax + 1) / 2,
                static_cast<long long>(gmax) * gmax * (gmax + 1) / 2);
    require(gmax >= 1, "gmax must be >= 1");
    std::vector<std::pair<int, int>> cases;
    for (int g = 1; g <= gmax; ++g) {
        for (int ell = 1; ell <= g; ++ell) {
            if (need_d2 && g + 1 - ell < 2) continue;
            cases.emplace_back(ell, g);
        }
    }
    const auto reports = parallel_map<verify::CheckReport>(
        cases.size(), threads, [&](std::size_t i) { return check(cases[i].first, cases[i].second); });
    json list = json::array();
    bool all = true;
    for (std::size_t i = 0; i < cases.size(); ++i) {
        const auto& c = reports[i];
        json row{{"ell", cases[i].first}, {"g", cases[i].second}, {"pass", c.pass}, {"facts", facts_json(c)}};
        if (!c.pass) {
            row["witness"] = c.witness;
            if (all) {
                r.witness = "ell=" + std::to_string(cases[i].first) + ", g=" + std::to_string(cases[i].second) + ": " +
                            c.witness;
            }
            all = false;
        }
        list.push_back(std::move(row));
    }
    r.outputs["cases"] = std::move(list);
    r.outputs["case_count"] = cases.size();
    r.pass = all;
}

Report cmd_verify(const std::string& target, const Params& p, int threads, Oracle& oracle) {
    Report r;
    auto single_or_sweep = [&](bool need_d2, const CaseCheck& check, bool cb_oracle, bool closed_form_oracle) {
        if (p.has("gmax")) {
            if (p.has("ell") || p.has("g")) throw UsageError("give either --gmax or --ell/--g, not both");
            sweep(r, p, threads, need_d2, check);
            return;
        }
        const int ell = p.integer("ell");
        const int g = p.integer("g");
        absorb(r, check(ell, g));
        if (cb_oracle && oracle.enabled && ell >= 1 && ell <= g) oracle.cb_vector(ell, g, cb::cb_vector_omega1(ell, g));
        if (closed_form_oracle && oracle.enabled && ell >= 1 && ell <= g) oracle.closed_form(ell, g, veronese::closed_form_vector(ell, g));
    };

    if (target == "poscomb") {
        single_or_sweep(false, verify::check_poscomb, true, true);
    } else if (target == "increasing") {
        single_or_sweep(false, verify::check_increasing, true, false);
    } else if (target == "same-face") {
        single_or_sweep(true, verify::check_same_face, true, true);
    } else if (target == "determinant") {
        absorb(r, verify::check_determinant_lemma(p.integer("ell"), p.integer("imax")));
    } else if (target == "kequalsell") {
        absorb(r, verify::check_kequalsell(p.integer("ell"), p.integer("n")));
    } else if (target == "level-shadow") {
        absorb(r, verify::check_level_shadow(p.integer("ell"), p.integer("tmax")));
    } else if (target == "wall") {
        absorb(r, verify::check_wall_independence(weight_data(p), p.integer_or("max-curves", 5000)));
    } else if (target == "fcurve") {
        const int ell = p.integer("ell");
        const int k = p.integer("k");
        const int n = p.integer("n");
        if (p.has("profile")) {
            absorb(r, verify::fcurve_criterion_report(ell, k, n, p.four("profile")));
        } else {
            absorb(r, verify::check_fcurve_criterion(ell, k, n));
        }
    }
    return r;
}

Report cmd_table(const std::string& target, const Params& p, int threads, Oracle& oracle) {
    Report r;
    const int limit = p.integer_or("limit", kDefaultLimit);

    if (target == "ranks") {
        const int ell = p.integer("ell");
        const int jmax = p.integer("jmax");
        require(ell >= 1, "level must be >= 1");
        require(jmax >= 0, "jmax must be >= 0");
        check_limit("jmax", jmax, 2 * limit, static_cast<long long>(jmax + 1) * (ell + 1),
                    static_cast<long long>(jmax + 1) * (ell + 1));
        const auto table = cb::rank_recurrence_table(ell, jmax);
        r.columns.push_back("j");
        for (int t = 0; t <= ell; ++t) r.columns.push_back("t=" + std::to_string(t));
        for (int j = 0; j <= jmax; ++j) {
            std::vector<std::string> row{std::to_string(j)};
            for (int t = 0; t <= ell; ++t) {
                oracle.ones(ell, j, t, table[j][t]);
                row.push_back(table[j][t].str());
            }
            r.rows.push_back(std::move(row));
        }
        return r;
    }

    const int g = p.integer("g");
    require(g >= 1, "g must be >= 1");
    check_limit("g", g, limit, static_cast<long long>(g) * g, static_cast<long long>(g) * g * g);

    std::vector<int> levels;
    for (int ell = 1; ell <= g; ++ell) levels.push_back(ell);
    if (p.has("ell")) {
        const int ell = p.integer("ell");
        require(ell >= 1 && ell <= g, "requires 1 <= ell <= g");
        levels = {ell};
    }

    r.columns.push_back("ell");
    if (target == "closed-form" || target == "cb-vectors") {
        for (int i = 1; i <= g; ++i) r.columns.push_back("F_" + std::to_string(i));
    } else {
        require(g >= 2, "class table requires g >= 2 (n >= 5)");
        for (int j = 2; j <= g + 1; ++j) r.columns.push_back("B_" + std::to_string(j));
    }

    const auto vectors = parallel_map<RationalVector>(levels.size(), threads, [&](std::size_t idx) {
        const int ell = levels[idx];
        if (target == "closed-form") return veronese::closed_form_vector(ell, g).values;
        if (target == "cb-vectors") return cb::cb_vector_omega1(ell, g).values;
        return veronese::closed_form_class(ell, g).coeffs;
    });

    for (std::size_t idx = 0; idx < levels.size(); ++idx) {
        const int ell = levels[idx];
        if (target == "closed-form") oracle.closed_form(ell, g, IntersectionVector(2 * g + 2, vectors[idx]));
        if (target == "cb-vectors") oracle.cb_vector(ell, g, IntersectionVector(2 * g + 2, vectors[idx]));
        if (target == "classes" && oracle.enabled && g + 1 - ell >= 2) {
            ++oracle.checks;
            const auto via_formula = veronese::symmetric_class(veronese::theorem_vector(ell, g), 2 * g + 2);
            if (via_formula.coeffs != vectors[idx]) {
                oracle.mismatches.push_back("class row ell=" + std::to_string(ell) + " disagrees with the full formula");
            }
        }
        std::vector<std::string> row{std::to_string(ell)};
        for (Eigen::Index j = 0; j < vectors[idx].size(); ++j) row.push_back(vectors[idx](j).str());
        r.rows.push_back(std::move(row));
    }
    return r;
}

void validate_keys(const JobConfig& c) {
    const auto it = command_keys().find(c.command);
    if (it == command_keys().end()) throw UsageError("unknown command '" + c.command + "'");
    for (const auto& [key, value] : c.params) {
        if (std::find(it->second.begin(), it->second.end(), key) == it->second.end()) {
            throw UsageError("parameter --" + key + " does not apply to " + c.command);
        }
    }
    if (c.command == "verify" && !kVerifyTargets.count(c.target)) {
        throw UsageError("verify needs a target: poscomb, increasing, determinant, same-face, kequalsell, level-shadow, wall, fcurve");
    }
    if (c.command == "table" && !kTableTargets.count(c.target)) {
        throw UsageError("table needs a kind: closed-form, ranks, classes, cb-vectors");
    }
    if (c.command != "verify" && c.command != "table" && !c.target.empty()) {
        throw UsageError(c.command + " takes no positional target");
    }
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '"') out += '"';
        out += ch;
    }
    return out + "\"";
}

std::string scalar_text(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_array()) {
        std::string out;
        for (const auto& x : v) out += (out.empty() ? "" : ", ") + scalar_text(x);
        return "(" + out + ")";
    }
    return v.dump();
}

void flatten(const json& v, const std::string& prefix, std::vector<std::pair<std::string, std::string>>& out) {
    if (v.is_object()) {
        for (const auto& [k, x] : v.items()) flatten(x, prefix.empty() ? k : prefix + "." + k, out);
    } else if (v.is_array() && !v.empty() && v.front().is_object()) {
        for (std::size_t i = 0; i < v.size(); ++i) flatten(v[i], prefix + "[" + std::to_string(i) + "]", out);
    } else {
        out.emplace_back(prefix, scalar_text(v));
    }
}

}  // namespace

std::map<std::string, std::string> parse_config_text(const std::string& text) {
    std::map<std::string, std::string> out;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const std::string t = trim(line);
        if (t.empty()) continue;
        const auto eq = t.find('=');
        if (eq == std::string::npos) throw UsageError("config line " + std::to_string(lineno) + ": expected key = value");
        std::string key = trim(t.substr(0, eq));
        if (key.rfind("--", 0) == 0) key.erase(0, 2);
        if (key.empty()) throw UsageError("config line " + std::to_string(lineno) + ": empty key");
        out[key] = trim(t.substr(eq + 1));
    }
    return out;
}

std::string usage() {
    return "usage: veronese-blocks <command> [target] [--key value ...] [--format plain|json|csv] [--out PATH]\n"
           "                       [--config FILE] [--check-oracle]\n"
           "commands:\n"
           "  sigma        --ell L --g G | --d D --gamma Q --weights a,b,...   with --subset i,j,... | --size k\n"
           "  intersect    --ell L --g G | --d D --gamma Q --weights ...       with --profile a,b,c,d | --parts 1,2/3/4/5,6\n"
           "  class        --ell L --g G | --n N --values v1,...,vg\n"
           "  rank         --ell L --weights k1,...,kn\n"
           "  cb-intersect [--family omega1|kequalsell] --ell L (--g G | --n N) [--i I]\n"
           "  verify       poscomb|increasing|same-face (--ell L --g G | --gmax G)\n"
           "               determinant --ell L --imax I;  kequalsell --ell L --n N;  level-shadow --ell L --tmax T\n"
           "               wall (weights as for intersect) [--max-curves M];  fcurve --ell L --k K --n N [--profile a,b,c,d]\n"
           "  table        closed-form|classes|cb-vectors --g G [--ell L];  ranks --ell L --jmax J   [--limit G]\n"
           "exit status: 0 success, 1 usage or precondition error, 2 a checked claim failed\n"
           "environment: VERONESE_BLOCKS_THREADS bounds internal parallelism\n";
}

JobConfig parse_args(const std::vector<std::string>& args) {
    CLI::App app{"Veronese quotient and sl2 conformal block divisors on M_0,n", "veronese-blocks"};
    app.set_help_flag();
    app.require_subcommand(0, 1);
    app.fallthrough();

    std::string format;
    std::string out_path;
    std::string config_path;
    bool check_oracle = false;
    app.add_option("--format", format);
    app.add_option("--out", out_path);
    app.add_option("--config", config_path);
    app.add_flag("--check-oracle", check_oracle);

    std::map<std::string, std::map<std::string, std::string>> values;
    std::map<std::string, std::string> targets;
    for (const auto& [command, keys] : command_keys()) {
        CLI::App* sub = app.add_subcommand(command);
        for (const auto& key : keys) sub->add_option("--" + key, values[command][key]);
        if (command == "verify" || command == "table") sub->add_option("target", targets[command]);
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }

    std::map<std::string, std::string> file;
    if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) throw UsageError("cannot read config file " + config_path);
        std::stringstream buf;
        buf << in.rdbuf();
        file = parse_config_text(buf.str());
    }

    JobConfig c;
    const auto subs = app.get_subcommands();
    if (!subs.empty()) {
        c.command = subs.front()->get_name();
    } else if (file.count("command")) {
        c.command = file["command"];
    } else {
        throw UsageError("no command given");
    }
    if (!command_keys().count(c.command)) throw UsageError("unknown command '" + c.command + "'");

    for (const auto& [key, value] : file) {
        if (key == "command") continue;
        if (key == "target") {
            c.target = value;
        } else if (key == "format") {
            c.format = parse_format(value);
        } else if (key == "out") {
            c.output_path = value;
        } else if (key == "check-oracle") {
            c.check_oracle = parse_bool(key, value);
        } else {
            c.params[key] = value;
        }
    }

    if (!subs.empty()) {
        CLI::App* sub = subs.front();
        for (const auto& key : command_keys().at(c.command)) {
            if (sub->count("--" + key) > 0) c.params[key] = values[c.command][key];
        }
        if ((c.command == "verify" || c.command == "table") && sub->count("target") > 0) c.target = targets[c.command];
    }
    if (!format.empty()) c.format = parse_format(format);
    if (!out_path.empty()) c.output_path = out_path;
    if (check_oracle) c.check_oracle = true;
    c.threads = env_threads();
    validate_keys(c);
    return c;
}

Report execute(const JobConfig& config) {
    validate_keys(config);
    const Params p(config.params);
    Oracle oracle;
    oracle.enabled = config.check_oracle;

    Report r;
    if (config.command == "sigma") {
        r = cmd_sigma(p);
    } else if (config.command == "intersect") {
        r = cmd_intersect(p, oracle);
    } else if (config.command == "class") {
        r = cmd_class(p, oracle);
    } else if (config.command == "rank") {
        r = cmd_rank(p, oracle);
    } else if (config.command == "cb-intersect") {
        r = cmd_cb_intersect(p, oracle);
    } else if (config.command == "verify") {
        r = cmd_verify(config.target, p, config.threads, oracle);
    } else {
        r = cmd_table(config.target, p, config.threads, oracle);
    }

    r.command = config.command;
    for (const auto& [key, value] : config.params) r.inputs[key] = value;
    if (!config.target.empty()) r.inputs["target"] = config.target;
    if (config.check_oracle) r.inputs["check-oracle"] = true;
    oracle.finish(r);
    return r;
}

json to_json(const Report& report) {
    json out;
    out["schema"] = kSchema;
    out["command"] = report.command;
    out["inputs"] = report.inputs;
    json outputs = report.outputs;
    if (!report.columns.empty()) {
        outputs["columns"] = report.columns;
        outputs["rows"] = report.rows;
    }
    out["outputs"] = std::move(outputs);
    if (report.pass) out["pass"] = *report.pass;
    if (report.witness) out["witness"] = *report.witness;
    if (report.status) out["status"] = *report.status;
    return out;
}

std::string render(const Report& report, Format format) {
    if (format == Format::Json) return to_json(report).dump(2) + "\n";

    std::ostringstream out;
    if (format == Format::Csv) {
        if (!report.columns.empty()) {
            for (std::size_t i = 0; i < report.columns.size(); ++i) out << (i ? "," : "") << csv_field(report.columns[i]);
            out << "\n";
            for (const auto& row : report.rows) {
                for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_field(row[i]);
                out << "\n";
            }
            return out.str();
        }
        std::vector<std::pair<std::string, std::string>> flat;
        flatten(report.outputs, "", flat);
        if (report.pass) flat.emplace_back("pass", *report.pass ? "true" : "false");
        if (report.witness) flat.emplace_back("witness", *report.witness);
        if (report.status) flat.emplace_back("status", *report.status);
        out << "key,value\n";
        for (const auto& [k, v] : flat) out << csv_field(k) << "," << csv_field(v) << "\n";
        return out.str();
    }

    std::string title = report.command;
    if (report.inputs.contains("target")) title += " " + report.inputs["target"].get<std::string>();
    out << title;
    for (const auto& [k, v] : report.inputs.items()) {
        if (k != "target") out << " --" << k << " " << scalar_text(v);
    }
    out << "\n";
    if (report.status) out << "status: " << *report.status << "\n";
    if (report.pass) out << "result: " << (*report.pass ? "PASS" : "FAIL") << "\n";
    if (report.witness) out << "witness: " << *report.witness << "\n";
    std::vector<std::pair<std::string, std::string>> flat;
    flatten(report.outputs, "", flat);
    for (const auto& [k, v] : flat) out << k << ": " << v << "\n";
    if (!report.columns.empty()) {
        std::vector<std::size_t> width(report.columns.size());
        for (std::size_t i = 0; i < width.size(); ++i) width[i] = report.columns[i].size();
        for (const auto& row : report.rows) {
            for (std::size_t i = 0; i < row.size() && i < width.size(); ++i) width[i] = std::max(width[i], row[i].size());
        }
        auto line = [&](const std::vector<std::string>& cells) {
            for (std::size_t i = 0; i < cells.size(); ++i) {
                out << (i ? "  " : "") << std::string(width[i] - cells[i].size(), ' ') << cells[i];
            }
            out << "\n";
        };
        line(report.columns);
        for (const auto& row : report.rows) line(row);
    }
    return out.str();
}

int exit_status_for(const Report& report) {
    if (report.status) return 1;
    return (report.pass && !*report.pass) ? 2 : 0;
}

RunResult run(const JobConfig& config) {
    RunResult result;
    try {
        const Report report = execute(config);
        result.output = render(report, config.format);
        result.exit_status = exit_status_for(report);
        if (report.status) result.error = "inputs excluded by the claim's hypotheses";
    } catch (const UsageError& e) {
        result.exit_status = 1;
        result.error = std::string("usage error: ") + e.what() + "\n" + usage();
    } catch (const OutOfScopeError& e) {
        result.exit_status = 1;
        result.error = e.what();
    } catch (const PreconditionError& e) {
        result.exit_status = 1;
        result.error = std::string("precondition violated: ") + e.what();
    } catch (const verify::FalsificationError& e) {
        result.exit_status = 2;
        result.error = e.what();
    }
    return result;
}

int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    if (args.empty() || args.front() == "--help" || args.front() == "-h" || args.front() == "help") {
        (args.empty() ? err : out) << usage();
        return args.empty() ? 1 : 0;
    }
    JobConfig config;
    try {
        config = parse_args(args);
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n" << usage();
        return 1;
    }
    const RunResult result = run(config);
    if (!result.output.empty()) {
        if (config.output_path) {
            std::ofstream file(*config.output_path, std::ios::binary);
            if (!file) {
                err << "cannot write " << *config.output_path << "\n";
                return 1;
            }
            file << result.output;
        } else {
            out << result.output;
        }
    }
    if (!result.error.empty()) err << result.error << (result.error.back() == '\n' ? "" : "\n");
    return result.exit_status;
}

}  // namespace vb::cli
