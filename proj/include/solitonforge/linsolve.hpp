// Exact solver for sparse linear systems A u = b over the parameter field.
//
// Fraction-free forward elimination: a pivot row is combined into others by
// cross-multiplication (pivot * row - entry * pivot_row), never by division,
// and every row is stripped to its primitive form afterwards so entries stay
// small polynomials. Divisions happen only when the finished pivot rows are
// normalized, and only by invertible pivots; the numerator of every pivot
// that involves a non-pm1 parameter is recorded so callers know for which
// special parameter values the generic solution may degenerate.
//
// Columns are processed strictly left to right, which makes the reported
// pivot/free split and the nullspace basis deterministic.
#pragma once

#include <algorithm>
#include <map>
#include <variant>
#include <vector>

#include "solitonforge/param_scalar.hpp"

namespace solitonforge {

struct LinearRow {
    std::vector<std::pair<int, ParamScalar>> coeffs; // sorted by column, nonzero
    ParamScalar rhs;
    int tag = -1; // caller-side provenance index
};

struct LinearSystem {
    CtxPtr ctx;
    int ncols = 0;
    std::vector<LinearRow> rows;
};

struct AffineSolution {
    std::vector<ParamScalar> particular;         // size ncols
    std::vector<std::vector<ParamScalar>> basis; // nullspace, each size ncols
    std::vector<int> pivot_cols;
    std::vector<int> free_cols;
    std::vector<Poly> pivot_denominators; // non-constant pivot numerators, deduped
};

struct InfeasibleRow {
    ParamScalar certificate; // the reduced row reads 0 = certificate, certificate != 0
    int tag = -1;            // provenance of one contributing row
};

using LinearOutcome = std::variant<AffineSolution, InfeasibleRow>;

namespace detail {

// divide out gcd/content so structurally different scalings collapse
inline void normalize_row(const CtxPtr& ctx, LinearRow& row) {
    // clear denominators
    Poly common = Poly::one(ctx);
    auto fold_den = [&](const ParamScalar& s) {
        if (s.is_zero()) return;
        const Poly& d = s.den();
        if (d == Poly::one(ctx)) return;
        Poly g = poly_gcd(common, d);
        common = exact_div(common * d, g);
    };
    for (const auto& [c, v] : row.coeffs) fold_den(v);
    fold_den(row.rhs);
    if (!(common == Poly::one(ctx))) {
        ParamScalar mult = ParamScalar::from_poly(common);
        for (auto& [c, v] : row.coeffs) v = v * mult;
        row.rhs = row.rhs * mult;
    }
    // strip polynomial content (through pm1 components) and rational scale
    Poly g = Poly::zero(ctx);
    Rat rc(0);
    auto fold_content = [&](const ParamScalar& s) {
        if (s.is_zero()) return;
        for (const auto& [pattern, comp] : s.num().pm1_components()) g = poly_gcd(g, comp);
        rc = rat_gcd(rc, s.num().rational_content());
    };
    for (const auto& [c, v] : row.coeffs) fold_content(v);
    fold_content(row.rhs);
    if (rc.is_zero()) return; // all-zero row
    bool have_g = !g.is_zero() && !(g == Poly::one(ctx));
    // sign: make the first nonzero coefficient's leading rational positive
    const ParamScalar& lead = row.coeffs.empty() ? row.rhs : row.coeffs.front().second;
    if (lead.num().leading().coeff < 0) rc = -rc;
    ParamScalar scale =
        have_g ? ParamScalar::from_poly(g * rc).inverse()
               : ParamScalar::from_rat(ctx, Rat(1) / rc);
    for (auto& [c, v] : row.coeffs) v = v * scale;
    row.rhs = row.rhs * scale;
}

inline const ParamScalar* coeff_at(const LinearRow& row, int col) {
    auto it = std::lower_bound(row.coeffs.begin(), row.coeffs.end(), col,
                               [](const auto& p, int c) { return p.first < c; });
    if (it == row.coeffs.end() || it->first != col) return nullptr;
    return &it->second;
}

// r <- a*r - b*p (sparse merge); result rows stay sorted
inline LinearRow combine(const CtxPtr& ctx, const LinearRow& r, const ParamScalar& a,
                         const LinearRow& p, const ParamScalar& b) {
    LinearRow out;
    out.tag = r.tag;
    out.coeffs.reserve(r.coeffs.size() + p.coeffs.size());
    size_t i = 0, j = 0;
    while (i < r.coeffs.size() && j < p.coeffs.size()) {
        if (r.coeffs[i].first < p.coeffs[j].first) {
            out.coeffs.emplace_back(r.coeffs[i].first, r.coeffs[i].second * a);
            ++i;
        } else if (r.coeffs[i].first > p.coeffs[j].first) {
            out.coeffs.emplace_back(p.coeffs[j].first, -(p.coeffs[j].second * b));
            ++j;
        } else {
            ParamScalar v = r.coeffs[i].second * a - p.coeffs[j].second * b;
            if (!v.is_zero()) out.coeffs.emplace_back(r.coeffs[i].first, std::move(v));
            ++i, ++j;
        }
    }
    for (; i < r.coeffs.size(); ++i)
        out.coeffs.emplace_back(r.coeffs[i].first, r.coeffs[i].second * a);
    for (; j < p.coeffs.size(); ++j)
        out.coeffs.emplace_back(p.coeffs[j].first, -(p.coeffs[j].second * b));
    out.rhs = r.rhs * a - p.rhs * b;
    return out;
}

} // namespace detail

inline LinearOutcome solve_linear(const LinearSystem& sys) {
    const CtxPtr& ctx = sys.ctx;

    // rows bucketed by leading column
    std::map<int, std::vector<LinearRow>> buckets;
    auto place = [&](LinearRow row) -> const LinearRow* {
        detail::normalize_row(ctx, row);
        if (row.coeffs.empty()) {
            if (!row.rhs.is_zero()) {
                static thread_local LinearRow bad;
                bad = std::move(row);
                return &bad;
            }
            return nullptr; // trivial 0 = 0
        }
        buckets[row.coeffs.front().first].push_back(std::move(row));
        return nullptr;
    };
    for (const auto& r : sys.rows)
        if (const LinearRow* bad = place(r))
            return InfeasibleRow{bad->rhs, bad->tag};

    std::map<int, LinearRow> pivot_rows; // pivot column -> row
    std::vector<Poly> pivot_dens;

    for (int col = 0; col < sys.ncols; ++col) {
        auto it = buckets.find(col);
        if (it == buckets.end() || it->second.empty()) continue;
        std::vector<LinearRow> rows = std::move(it->second);
        buckets.erase(it);

        // pivot choice: invertible entry, preferring numerators free of
        // non-pm1 parameters, then shorter rows, then arrival order
        int best = -1;
        int best_rank = 0;
        for (size_t k = 0; k < rows.size(); ++k) {
            const ParamScalar& v = rows[k].coeffs.front().second;
            if (!v.is_invertible()) continue;
            int rank = v.numerator_param_free() ? 2 : 1;
            if (best < 0 || rank > best_rank ||
                (rank == best_rank && rows[k].coeffs.size() < rows[best].coeffs.size())) {
                best = static_cast<int>(k);
                best_rank = rank;
            }
        }
        if (best < 0)
            throw InternalError("elimination stuck: column " + std::to_string(col) +
                                " offers only zero-divisor pivots");

        LinearRow pivot = std::move(rows[best]);
        const ParamScalar pv = pivot.coeffs.front().second;
        if (!pv.numerator_param_free()) {
            // remember which parameter polynomial was inverted; for a pivot
            // with mixed pm1 content the pm1-free norm carries the signal
            auto comps = pv.num().pm1_components();
            Poly rec = comps.size() == 1 ? comps[0].second.primitive_normalized()
                                         : pv.numerator_pm1_norm().primitive_normalized();
            bool seen = false;
            for (const auto& p : pivot_dens) seen = seen || p == rec;
            if (!seen && !rec.is_constant()) pivot_dens.push_back(rec);
        }

        for (size_t k = 0; k < rows.size(); ++k) {
            if (static_cast<int>(k) == best) continue;
            LinearRow combined = detail::combine(ctx, rows[k], pv,
                                                 pivot, rows[k].coeffs.front().second);
            if (const LinearRow* bad = place(std::move(combined)))
                return InfeasibleRow{bad->rhs, bad->tag};
        }
        pivot_rows.emplace(col, std::move(pivot));
    }

    // normalize pivots to 1 and clear pivot columns upwards
    for (auto& [col, row] : pivot_rows) {
        ParamScalar inv = row.coeffs.front().second.inverse();
        for (auto& [c, v] : row.coeffs) v = v * inv;
        row.rhs = row.rhs * inv;
    }
    for (auto it = pivot_rows.rbegin(); it != pivot_rows.rend(); ++it) {
        const int col = it->first;
        const LinearRow& prow = it->second;
        for (auto jt = pivot_rows.begin(); jt->first != col; ++jt) {
            const ParamScalar* e = detail::coeff_at(jt->second, col);
            if (!e) continue;
            jt->second =
                detail::combine(ctx, jt->second, ParamScalar::one(ctx), prow, *e);
        }
    }

    AffineSolution sol;
    sol.particular.assign(sys.ncols, ParamScalar::zero(ctx));
    sol.pivot_denominators = std::move(pivot_dens);
    for (int col = 0; col < sys.ncols; ++col) {
        if (pivot_rows.count(col))
            sol.pivot_cols.push_back(col);
        else
            sol.free_cols.push_back(col);
    }
    for (const auto& [col, row] : pivot_rows) sol.particular[col] = row.rhs;
    for (int f : sol.free_cols) {
        std::vector<ParamScalar> v(sys.ncols, ParamScalar::zero(ctx));
        v[f] = ParamScalar::one(ctx);
        for (const auto& [col, row] : pivot_rows) {
            const ParamScalar* e = detail::coeff_at(row, f);
            if (e) v[col] = -*e;
        }
        sol.basis.push_back(std::move(v));
    }
    return sol;
}

} // namespace solitonforge
