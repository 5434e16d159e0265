// The soliton equation L_X g + ricci = lambda g: residual, verifier,
// classification, ansatz-based exact solver and the gradient criterion.
//
// The solver replaces hand integration of the PDE system by coefficient
// matching: substituting the ansatz into the residual and collecting the
// coefficient of every (mono, freq) key in every tensor slot yields one
// linear equation per key per slot, exactly because distinct keys are
// linearly independent functions. The full affine solution set comes back
// from one exact elimination.
#pragma once

#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "solitonforge/geometry.hpp"
#include "solitonforge/linsolve.hpp"

namespace solitonforge {

inline SymTensor residual(const SpaceModel& m, const VectorField& X, const ParamScalar& lambda) {
    SymTensor lie = lie_derivative_metric(m, X);
    SymTensor rho = ricci(m);
    ExpMatrix out(m.ctx(), m.dim());
    for (int i = 0; i < m.dim(); ++i)
        for (int j = i; j < m.dim(); ++j) {
            ExpPoly v = lie.at(i, j) + rho.at(i, j) - m.metric().at(i, j).scale(lambda);
            out.at(i, j) = v;
            out.at(j, i) = v;
        }
    return SymTensor(std::move(out));
}

struct VerifyResult {
    bool ok;
    SymTensor defect;
};

inline VerifyResult verify(const SpaceModel& m, const VectorField& X, const ParamScalar& lambda) {
    SymTensor r = residual(m, X, lambda);
    return {r.is_zero(), std::move(r)};
}

enum class SolitonClass { shrinking, steady, expanding };

inline const char* to_string(SolitonClass c) {
    switch (c) {
        case SolitonClass::shrinking: return "shrinking";
        case SolitonClass::steady: return "steady";
        case SolitonClass::expanding: return "expanding";
    }
    return "?";
}

// sign of lambda under an exact parameter assignment; parameters the value
// does not depend on may stay unassigned
inline SolitonClass classify(const ParamScalar& lambda,
                             const std::vector<std::pair<std::string, Rat>>& assignment) {
    const CtxPtr& ctx = lambda.ctx();
    std::vector<Rat> values(ctx->nparams(), Rat(0));
    std::vector<bool> assigned(ctx->nparams(), false);
    for (const auto& [name, value] : assignment) {
        auto idx = ctx->find_param(name);
        if (!idx) throw InputError("unknown parameter: " + name);
        if (ctx->param_kind(*idx) == ParamKind::pm1 && value != 1 && value != -1)
            throw InputError("parameter " + name + " is declared pm1; only +1/-1 allowed");
        if (ctx->param_kind(*idx) == ParamKind::nonzero && value.is_zero())
            throw InputError("parameter " + name + " is declared nonzero");
        values[*idx] = value;
        assigned[*idx] = true;
    }
    for (int p = 0; p < ctx->nparams(); ++p)
        if (!assigned[p] && (lambda.num().depends_on(p) || lambda.den().depends_on(p)))
            throw InputError("classification needs a value for parameter " +
                             ctx->param_name(p));
    Rat v = lambda.eval_exact(values);
    if (v > 0) return SolitonClass::shrinking;
    if (v < 0) return SolitonClass::expanding;
    return SolitonClass::steady;
}

// ---- ansatz ----

struct Ansatz {
    CtxPtr ctx;
    std::vector<std::vector<ExpKey>> shapes;  // per component, key-sorted, unique
    std::optional<ParamScalar> pinned_lambda; // lambda is an unknown when unset

    int unknown_count() const {
        int n = 0;
        for (const auto& s : shapes) n += static_cast<int>(s.size());
        return n;
    }
    int columns() const { return unknown_count() + (pinned_lambda ? 0 : 1); }
    int lambda_column() const { return pinned_lambda ? -1 : unknown_count(); }

    void check() const {
        if (static_cast<int>(shapes.size()) != ctx->dim())
            throw InputError("ansatz must list shapes per component");
        if (unknown_count() == 0) throw InputError("ansatz is empty");
        for (const auto& comp : shapes)
            for (size_t k = 0; k + 1 < comp.size(); ++k)
                if (!key_less(comp[k], comp[k + 1]))
                    throw InputError("ansatz shapes must be sorted with distinct keys");
    }

    // (component, shape index) of a column; lambda column maps to (-1, -1)
    std::pair<int, int> column_shape(int col) const {
        for (int i = 0; i < static_cast<int>(shapes.size()); ++i) {
            if (col < static_cast<int>(shapes[i].size())) return {i, col};
            col -= static_cast<int>(shapes[i].size());
        }
        return {-1, -1};
    }

    // field with the given coefficient per column (lambda column excluded)
    VectorField field_from(const std::vector<ParamScalar>& coeffs) const {
        std::vector<ExpPoly> comp(ctx->dim(), ExpPoly::zero(ctx));
        int col = 0;
        for (int i = 0; i < ctx->dim(); ++i) {
            std::vector<ExpTerm> terms;
            for (const auto& key : shapes[i]) {
                if (!coeffs[col].is_zero()) terms.push_back({key, coeffs[col]});
                ++col;
            }
            comp[i] = ExpPoly::from_terms(ctx, std::move(terms));
        }
        return VectorField(ctx, std::move(comp));
    }
};

// All monomials of total degree <= degree times exp(f), where f runs over
// sums of at most freq_depth elements of {0} u {+-frequencies of g}. The
// default (2, 2) always contains the catalog solution shapes.
inline Ansatz default_ansatz(const SpaceModel& m, int degree = 2, int freq_depth = 2) {
    if (degree < 0 || freq_depth < 0) throw InputError("ansatz degree/freq-depth must be >= 0");
    int n = m.dim();

    struct FreqLess {
        bool operator()(const std::vector<Rat>& a, const std::vector<Rat>& b) const {
            for (size_t i = 0; i < a.size(); ++i) {
                int c = rat_cmp(a[i], b[i]);
                if (c != 0) return c < 0;
            }
            return false;
        }
    };

    std::set<std::vector<Rat>, FreqLess> seeds;
    seeds.insert(std::vector<Rat>(n, Rat(0)));
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            for (const auto& t : m.metric().at(i, j).terms()) {
                if (t.key.freq_is_zero()) continue;
                std::vector<Rat> f = t.key.freq, nf = t.key.freq;
                for (auto& q : nf) q = -q;
                seeds.insert(std::move(f));
                seeds.insert(std::move(nf));
            }

    std::set<std::vector<Rat>, FreqLess> freqs;
    freqs.insert(std::vector<Rat>(n, Rat(0)));
    for (int d = 0; d < freq_depth; ++d) {
        std::set<std::vector<Rat>, FreqLess> next = freqs;
        for (const auto& f : freqs)
            for (const auto& s : seeds) {
                std::vector<Rat> sum = f;
                for (int i = 0; i < n; ++i) sum[i] += s[i];
                next.insert(std::move(sum));
            }
        freqs = std::move(next);
    }

    std::vector<Mono> monos;
    Mono cur(n, 0);
    // enumerate multi-indices of total degree <= degree
    auto rec = [&](auto&& self, int pos, int remaining) -> void {
        if (pos == n) {
            monos.push_back(cur);
            return;
        }
        for (int e = 0; e <= remaining; ++e) {
            cur[pos] = static_cast<uint32_t>(e);
            self(self, pos + 1, remaining - e);
        }
        cur[pos] = 0;
    };
    rec(rec, 0, degree);

    std::vector<ExpKey> keys;
    keys.reserve(freqs.size() * monos.size());
    for (const auto& f : freqs)
        for (const auto& mo : monos) keys.push_back({f, mo});
    std::sort(keys.begin(), keys.end(), key_less);

    Ansatz a;
    a.ctx = m.ctx();
    a.shapes.assign(n, keys);
    a.check();
    return a;
}

// ---- assembly ----

struct RowTag {
    int slot_i, slot_j; // tensor slot, i <= j
    ExpKey key;         // collected (freq, mono) key
};

struct AssembledSystem {
    LinearSystem sys;
    Ansatz ansatz;
    std::vector<RowTag> tags; // per row of sys
};

inline AssembledSystem assemble_system(const SpaceModel& m, const Ansatz& ansatz) {
    require_same_context(m.ctx(), ansatz.ctx, "assemble_system");
    ansatz.check();
    const CtxPtr& ctx = m.ctx();
    int n = m.dim();
    int ncols = ansatz.columns();

    SymTensor rho = ricci(m);
    // constant tensor: ricci - pinned_lambda * g (zero lambda when unknown)
    ExpMatrix constant(ctx, n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            ExpPoly v = rho.at(i, j);
            if (ansatz.pinned_lambda) v = v - m.metric().at(i, j).scale(*ansatz.pinned_lambda);
            constant.at(i, j) = v;
        }

    struct KeyLess {
        bool operator()(const ExpKey& a, const ExpKey& b) const { return key_less(a, b); }
    };
    // per slot: key -> sparse coefficient list
    int nslots = n * (n + 1) / 2;
    std::vector<std::map<ExpKey, LinearRow, KeyLess>> slots(nslots);
    auto slot_index = [n](int i, int j) {
        // row-major upper triangle
        return i * n - i * (i - 1) / 2 + (j - i);
    };

    auto add_entry = [&](int si, const ExpKey& key, int col, const ParamScalar& c) {
        if (c.is_zero()) return;
        LinearRow& row = slots[si][key];
        // columns arrive in increasing order per slot; keep sorted by merging
        auto it = std::lower_bound(row.coeffs.begin(), row.coeffs.end(), col,
                                   [](const auto& p, int cc) { return p.first < cc; });
        if (it != row.coeffs.end() && it->first == col) {
            it->second = it->second + c;
            if (it->second.is_zero()) row.coeffs.erase(it);
        } else {
            row.coeffs.insert(it, {col, c});
        }
    };

    // unknown coefficients of X enter through the Lie derivative, linearly
    int col = 0;
    for (int compi = 0; compi < n; ++compi) {
        for (const auto& shape : ansatz.shapes[compi]) {
            VectorField basis = VectorField::zero(ctx);
            basis.comp[compi] = ExpPoly::term(shape, ParamScalar::one(ctx));
            SymTensor lie = lie_derivative_metric(m, basis);
            for (int i = 0; i < n; ++i)
                for (int j = i; j < n; ++j)
                    for (const auto& t : lie.at(i, j).terms())
                        add_entry(slot_index(i, j), t.key, col, t.coeff);
            ++col;
        }
    }
    // lambda enters as -lambda * g
    if (!ansatz.pinned_lambda) {
        int lcol = ansatz.lambda_column();
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j)
                for (const auto& t : m.metric().at(i, j).terms())
                    add_entry(slot_index(i, j), t.key, lcol, -t.coeff);
    }
    // constants move to the right-hand side
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            for (const auto& t : constant.at(i, j).terms()) {
                LinearRow& row = slots[slot_index(i, j)][t.key];
                row.rhs = ParamScalar::zero(ctx) - t.coeff;
            }

    AssembledSystem out;
    out.ansatz = ansatz;
    out.sys.ctx = ctx;
    out.sys.ncols = ncols;
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j)
            for (auto& [key, row] : slots[slot_index(i, j)]) {
                if (row.coeffs.empty() && row.rhs.is_zero()) continue;
                if (row.rhs.ctx() == nullptr) row.rhs = ParamScalar::zero(ctx);
                row.tag = static_cast<int>(out.tags.size());
                out.tags.push_back({i, j, key});
                out.sys.rows.push_back(std::move(row));
            }
    return out;
}

// ---- solution sets ----

struct SolitonSolution {
    struct Direction {
        VectorField X;
        ParamScalar lambda; // usually zero; nonzero for homothety directions
    };

    VectorField particular;
    ParamScalar lambda;
    std::vector<Direction> homogeneous;
    std::vector<Poly> pivot_denominators;

    // lambda identical across the whole solution set
    bool lambda_forced() const {
        for (const auto& d : homogeneous)
            if (!d.lambda.is_zero()) return false;
        return true;
    }
};

struct Infeasible {
    ParamScalar certificate; // reduced row reads 0 = certificate (nonzero)
    RowTag tag;              // provenance of one contributing equation
};

using SolveOutcome = std::variant<SolitonSolution, Infeasible>;

inline SolveOutcome solve(const AssembledSystem& system) {
    LinearOutcome out = solve_linear(system.sys);
    const CtxPtr& ctx = system.sys.ctx;
    if (std::holds_alternative<InfeasibleRow>(out)) {
        const auto& bad = std::get<InfeasibleRow>(out);
        RowTag tag = bad.tag >= 0 ? system.tags.at(bad.tag) : RowTag{-1, -1, {}};
        return Infeasible{bad.certificate, tag};
    }
    const auto& aff = std::get<AffineSolution>(out);
    const Ansatz& ansatz = system.ansatz;
    int lcol = ansatz.lambda_column();

    SolitonSolution sol;
    sol.particular = ansatz.field_from(aff.particular);
    sol.lambda = ansatz.pinned_lambda ? *ansatz.pinned_lambda : aff.particular.at(lcol);
    sol.pivot_denominators = aff.pivot_denominators;
    for (const auto& v : aff.basis) {
        SolitonSolution::Direction d;
        d.X = ansatz.field_from(v);
        d.lambda = lcol >= 0 ? v.at(lcol) : ParamScalar::zero(ctx);
        sol.homogeneous.push_back(std::move(d));
    }
    return sol;
}

inline SolveOutcome solve(const SpaceModel& m, const Ansatz& ansatz) {
    return solve(assemble_system(m, ansatz));
}

// Membership of (Y, lamY) in the affine solution set, decided exactly by a
// small elimination in the mixing coefficients.
inline bool solution_set_contains(const SolitonSolution& sol, const VectorField& Y,
                                  const ParamScalar& lamY) {
    const CtxPtr& ctx = Y.ctx;
    int nh = static_cast<int>(sol.homogeneous.size());
    LinearSystem sys;
    sys.ctx = ctx;
    sys.ncols = nh;
    struct KeyLess {
        bool operator()(const ExpKey& a, const ExpKey& b) const { return key_less(a, b); }
    };
    for (int compi = 0; compi < ctx->dim(); ++compi) {
        // sum_k t_k H_k[compi] = Y[compi] - particular[compi], matched per key
        std::map<ExpKey, LinearRow, KeyLess> rows;
        ExpPoly diff = Y.comp[compi] - sol.particular.comp[compi];
        for (int k = 0; k < nh; ++k)
            for (const auto& t : sol.homogeneous[k].X.comp[compi].terms())
                rows[t.key].coeffs.emplace_back(k, t.coeff);
        for (const auto& t : diff.terms()) rows[t.key].rhs = t.coeff;
        for (auto& [key, row] : rows) {
            if (row.rhs.ctx() == nullptr) row.rhs = ParamScalar::zero(ctx);
            sys.rows.push_back(std::move(row));
        }
    }
    LinearRow lrow;
    for (int k = 0; k < nh; ++k)
        if (!sol.homogeneous[k].lambda.is_zero()) lrow.coeffs.emplace_back(k, sol.homogeneous[k].lambda);
    lrow.rhs = lamY - sol.lambda;
    sys.rows.push_back(std::move(lrow));
    return std::holds_alternative<AffineSolution>(solve_linear(sys));
}

// Equality of two affine solution sets by mutual containment of generators.
inline bool solution_sets_equal(const SolitonSolution& a, const SolitonSolution& b) {
    auto contains_all = [](const SolitonSolution& s, const SolitonSolution& o) {
        if (!solution_set_contains(s, o.particular, o.lambda)) return false;
        for (const auto& d : o.homogeneous) {
            VectorField shifted = o.particular + d.X;
            ParamScalar lam = o.lambda + d.lambda;
            if (!solution_set_contains(s, shifted, lam)) return false;
        }
        return true;
    };
    return contains_all(a, b) && contains_all(b, a);
}

// ---- gradient criterion ----

// On R^n a field is a gradient exactly when its lowered 1-form is closed.
// Free constants stay symbolic: NotGradient means no potential works
// identically in them.
struct GradientVerdict {
    bool gradient;
    int witness_i = -1, witness_j = -1;
    ExpPoly witness; // nonzero entry of d(X flat) when not a gradient
};

inline GradientVerdict gradient_check(const SpaceModel& m, const VectorField& X) {
    TwoForm d_omega = exterior_derivative(lower(m, X));
    for (int i = 0; i < m.dim(); ++i)
        for (int j = i + 1; j < m.dim(); ++j)
            if (!d_omega.at(i, j).is_zero())
                return {false, i, j, d_omega.at(i, j)};
    return {true, -1, -1, ExpPoly::zero(m.ctx())};
}

} // namespace solitonforge
