// Sparse multivariate polynomials over Q in the parameter symbols of a
// Context.
//
// Terms are kept sorted (graded-lex, leading term first) with no zero
// coefficients, so structural equality is mathematical equality. Parameters
// declared pm1 square to one: their exponents are reduced mod 2 during
// monomial arithmetic, which turns Q[eps]/(eps^2-1) into ordinary term
// bookkeeping. gcd is only defined over the pm1-free part of the ring (the
// quotient by eps^2-1 is not an integral domain); callers split by pm1
// pattern first, see pm1_components().
#pragma once

#include <cstdint>
#include <map>
#include <sstream>
#include <vector>

#include "solitonforge/context.hpp"
#include "solitonforge/rational.hpp"

namespace solitonforge {

using Mono = std::vector<uint32_t>;

inline uint64_t mono_total_degree(const Mono& m) {
    uint64_t d = 0;
    for (auto e : m) d += e;
    return d;
}

// graded-lex, returns <0, 0, >0 like memcmp
inline int mono_cmp(const Mono& a, const Mono& b) {
    uint64_t da = mono_total_degree(a), db = mono_total_degree(b);
    if (da != db) return da < db ? -1 : 1;
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
    return 0;
}

class Poly {
  public:
    struct Term {
        Mono mono;
        Rat coeff;
    };

    Poly() = default;
    explicit Poly(CtxPtr ctx) : ctx_(std::move(ctx)) {}

    static Poly zero(CtxPtr ctx) { return Poly(std::move(ctx)); }

    static Poly constant(CtxPtr ctx, const Rat& c) {
        Poly p(std::move(ctx));
        if (!c.is_zero()) p.terms_.push_back({Mono(p.ctx_->nparams(), 0), c});
        return p;
    }

    static Poly one(CtxPtr ctx) { return constant(std::move(ctx), Rat(1)); }

    static Poly param(CtxPtr ctx, int index) {
        Poly p(std::move(ctx));
        Mono m(p.ctx_->nparams(), 0);
        m.at(index) = 1;
        p.terms_.push_back({std::move(m), Rat(1)});
        return p;
    }

    // terms need not be sorted or combined
    static Poly from_terms(CtxPtr ctx, std::vector<Term> terms) {
        Poly p(std::move(ctx));
        std::map<Mono, Rat, MonoLess> acc;
        for (auto& t : terms) {
            p.reduce_pm1(t.mono);
            acc[t.mono] += t.coeff;
        }
        for (auto it = acc.rbegin(); it != acc.rend(); ++it)
            if (!it->second.is_zero()) p.terms_.push_back({it->first, it->second});
        return p;
    }

    const CtxPtr& ctx() const { return ctx_; }
    const std::vector<Term>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && mono_total_degree(terms_[0].mono) == 0);
    }
    Rat constant_value() const {
        if (terms_.empty()) return Rat(0);
        if (!is_constant()) throw InternalError("constant_value on non-constant polynomial");
        return terms_[0].coeff;
    }

    const Term& leading() const {
        if (terms_.empty()) throw InternalError("leading term of zero polynomial");
        return terms_[0];
    }

    bool operator==(const Poly& o) const {
        if (terms_.size() != o.terms_.size()) return false;
        for (size_t i = 0; i < terms_.size(); ++i)
            if (terms_[i].mono != o.terms_[i].mono || terms_[i].coeff != o.terms_[i].coeff)
                return false;
        return true;
    }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    Poly operator-() const {
        Poly r(*this);
        for (auto& t : r.terms_) t.coeff = -t.coeff;
        return r;
    }

    Poly operator+(const Poly& o) const {
        require_same_context(ctx_, o.ctx_, "polynomial +");
        Poly r(ctx_);
        r.terms_.reserve(terms_.size() + o.terms_.size());
        size_t i = 0, j = 0;
        while (i < terms_.size() && j < o.terms_.size()) {
            int c = mono_cmp(terms_[i].mono, o.terms_[j].mono);
            if (c > 0) {
                r.terms_.push_back(terms_[i++]);
            } else if (c < 0) {
                r.terms_.push_back(o.terms_[j++]);
            } else {
                Rat s = terms_[i].coeff + o.terms_[j].coeff;
                if (!s.is_zero()) r.terms_.push_back({terms_[i].mono, std::move(s)});
                ++i, ++j;
            }
        }
        for (; i < terms_.size(); ++i) r.terms_.push_back(terms_[i]);
        for (; j < o.terms_.size(); ++j) r.terms_.push_back(o.terms_[j]);
        return r;
    }

    Poly operator-(const Poly& o) const { return *this + (-o); }

    Poly operator*(const Poly& o) const {
        require_same_context(ctx_, o.ctx_, "polynomial *");
        std::vector<Term> prod;
        prod.reserve(terms_.size() * o.terms_.size());
        for (const auto& a : terms_)
            for (const auto& b : o.terms_) {
                Mono m = a.mono;
                for (size_t k = 0; k < m.size(); ++k) m[k] += b.mono[k];
                prod.push_back({std::move(m), a.coeff * b.coeff});
            }
        return from_terms(ctx_, std::move(prod));
    }

    Poly operator*(const Rat& c) const {
        if (c.is_zero()) return Poly(ctx_);
        Poly r(*this);
        for (auto& t : r.terms_) t.coeff *= c;
        return r;
    }

    Poly pow(int e) const {
        if (e < 0) throw InternalError("negative polynomial power");
        Poly r = one(ctx_);
        Poly b = *this;
        while (e > 0) {
            if (e & 1) r = r * b;
            b = b * b;
            e >>= 1;
        }
        return r;
    }

    int degree_in(int var) const {
        int d = 0;
        for (const auto& t : terms_) d = maxat(d, t.mono[var]);
        return d;
    }

    bool depends_on(int var) const {
        for (const auto& t : terms_)
            if (t.mono[var] > 0) return true;
        return false;
    }

    // true if the polynomial involves no parameter at all
    bool is_param_free() const { return is_constant(); }

    // true if every occurring parameter is pm1 (such elements may still be units)
    bool depends_only_on_pm1() const {
        for (const auto& t : terms_)
            for (size_t v = 0; v < t.mono.size(); ++v)
                if (t.mono[v] > 0 && !ctx_->param_is_pm1(static_cast<int>(v))) return false;
        return true;
    }

    double eval(const std::vector<double>& param_values) const {
        double acc = 0;
        for (const auto& t : terms_) {
            double v = to_double(t.coeff);
            for (size_t k = 0; k < t.mono.size(); ++k)
                for (uint32_t e = 0; e < t.mono[k]; ++e) v *= param_values.at(k);
            acc += v;
        }
        return acc;
    }

    // exact substitution of one parameter by a rational value
    Poly subst(int var, const Rat& value) const {
        std::vector<Term> out;
        out.reserve(terms_.size());
        for (const auto& t : terms_) {
            Rat c = t.coeff;
            for (uint32_t e = 0; e < t.mono[var]; ++e) c *= value;
            Mono m = t.mono;
            m[var] = 0;
            out.push_back({std::move(m), std::move(c)});
        }
        return from_terms(ctx_, std::move(out));
    }

    // remap parameter indices into a different context (old index -> new index)
    Poly remap(CtxPtr new_ctx, const std::vector<int>& index_map) const {
        std::vector<Term> out;
        out.reserve(terms_.size());
        int nnew = new_ctx->nparams();
        for (const auto& t : terms_) {
            Mono m(nnew, 0);
            for (size_t v = 0; v < t.mono.size(); ++v)
                if (t.mono[v] > 0) m.at(index_map.at(v)) = t.mono[v];
            out.push_back({std::move(m), t.coeff});
        }
        return from_terms(std::move(new_ctx), std::move(out));
    }

    // gcd of all rational coefficients (positive), 0 for the zero polynomial
    Rat rational_content() const {
        Rat g(0);
        for (const auto& t : terms_) g = rat_gcd(g, t.coeff);
        return g;
    }

    // divide by rational content and fix the sign of the leading coefficient:
    // the canonical associate with coprime integer coefficients
    Poly primitive_normalized() const {
        if (is_zero()) return *this;
        Rat c = rational_content();
        if (terms_[0].coeff < 0) c = -c;
        Poly r(*this);
        for (auto& t : r.terms_) t.coeff /= c;
        return r;
    }

    // split by pattern of pm1-parameter exponents; each component has those
    // exponents stripped. Union of pattern*component reassembles the value.
    std::vector<std::pair<Mono, Poly>> pm1_components() const {
        std::map<Mono, std::vector<Term>> buckets;
        int np = ctx_->nparams();
        for (const auto& t : terms_) {
            Mono pattern(np, 0), rest = t.mono;
            for (int v = 0; v < np; ++v)
                if (ctx_->param_is_pm1(v)) {
                    pattern[v] = t.mono[v];
                    rest[v] = 0;
                }
            buckets[pattern].push_back({std::move(rest), t.coeff});
        }
        std::vector<std::pair<Mono, Poly>> out;
        out.reserve(buckets.size());
        for (auto& [pattern, terms] : buckets)
            out.emplace_back(pattern, from_terms(ctx_, std::move(terms)));
        return out;
    }

    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& t : terms_) {
            Rat c = t.coeff;
            if (first) {
                if (c < 0) {
                    os << "-";
                    c = -c;
                }
            } else {
                os << (c < 0 ? " - " : " + ");
                if (c < 0) c = -c;
            }
            first = false;
            bool has_vars = mono_total_degree(t.mono) > 0;
            bool coeff_shown = !has_vars || c != 1;
            if (coeff_shown) os << c.str();
            bool need_star = coeff_shown;
            for (size_t v = 0; v < t.mono.size(); ++v) {
                if (t.mono[v] == 0) continue;
                if (need_star) os << "*";
                os << ctx_->param_name(static_cast<int>(v));
                if (t.mono[v] > 1) os << "^" << t.mono[v];
                need_star = true;
            }
        }
        return os.str();
    }

  private:
    struct MonoLess {
        bool operator()(const Mono& a, const Mono& b) const { return mono_cmp(a, b) < 0; }
    };

    static int maxat(int a, uint32_t b) { return a >= static_cast<int>(b) ? a : static_cast<int>(b); }

    void reduce_pm1(Mono& m) const {
        for (size_t v = 0; v < m.size(); ++v)
            if (ctx_->param_is_pm1(static_cast<int>(v))) m[v] &= 1u;
    }

    CtxPtr ctx_;
    std::vector<Term> terms_;
};

inline Poly operator*(const Rat& c, const Poly& p) { return p * c; }

// ---- exact division and gcd (pm1-free inputs for gcd) ----

// Exact division a / b; throws InternalError if not exact. b must be nonzero
// and pm1-free (so the leading-term reduction below is a proper division
// algorithm); a may contain pm1 symbols.
inline Poly exact_div(const Poly& a, const Poly& b) {
    require_same_context(a.ctx(), b.ctx(), "polynomial exact_div");
    if (b.is_zero()) throw DivisionByZero("polynomial division by zero");
    for (const auto& t : b.terms())
        for (size_t v = 0; v < t.mono.size(); ++v)
            if (t.mono[v] > 0 && b.ctx()->param_is_pm1(static_cast<int>(v)))
                throw InternalError("exact_div: divisor must be pm1-free");
    Poly r = a;
    std::vector<Poly::Term> q;
    const auto& lb = b.leading();
    while (!r.is_zero()) {
        const auto& lr = r.leading();
        Mono m = lr.mono;
        for (size_t v = 0; v < m.size(); ++v) {
            if (lr.mono[v] < lb.mono[v]) throw InternalError("exact_div: not divisible");
            m[v] = lr.mono[v] - lb.mono[v];
        }
        Rat c = lr.coeff / lb.coeff;
        Poly t = Poly::from_terms(a.ctx(), {{m, c}});
        q.push_back({std::move(m), std::move(c)});
        r = r - t * b;
    }
    return Poly::from_terms(a.ctx(), std::move(q));
}

namespace detail {

// view of p as a univariate polynomial in `var` with Poly coefficients
inline std::vector<Poly> coeffs_in_var(const Poly& p, int var) {
    int d = p.degree_in(var);
    std::vector<std::vector<Poly::Term>> buckets(d + 1);
    for (const auto& t : p.terms()) {
        Mono m = t.mono;
        uint32_t e = m[var];
        m[var] = 0;
        buckets[e].push_back({std::move(m), t.coeff});
    }
    std::vector<Poly> out;
    out.reserve(buckets.size());
    for (auto& b : buckets) out.push_back(Poly::from_terms(p.ctx(), std::move(b)));
    return out;
}

inline Poly from_coeffs_in_var(const CtxPtr& ctx, int var, const std::vector<Poly>& coeffs) {
    std::vector<Poly::Term> terms;
    for (size_t e = 0; e < coeffs.size(); ++e)
        for (const auto& t : coeffs[e].terms()) {
            Mono m = t.mono;
            m[var] += static_cast<uint32_t>(e);
            terms.push_back({std::move(m), t.coeff});
        }
    return Poly::from_terms(ctx, std::move(terms));
}

inline Poly shift_var(const Poly& p, int var, uint32_t e) {
    std::vector<Poly::Term> terms;
    for (const auto& t : p.terms()) {
        Mono m = t.mono;
        m[var] += e;
        terms.push_back({std::move(m), t.coeff});
    }
    return Poly::from_terms(p.ctx(), std::move(terms));
}

// pseudo-remainder of a by b in variable var (deg_var b >= 1)
inline Poly prem(Poly a, const Poly& b, int var) {
    int db = b.degree_in(var);
    Poly lb = coeffs_in_var(b, var).back();
    while (!a.is_zero()) {
        int da = a.degree_in(var);
        if (da < db) break;
        Poly la = coeffs_in_var(a, var).back();
        a = lb * a - shift_var(la, var, static_cast<uint32_t>(da - db)) * b;
    }
    return a;
}

} // namespace detail

// gcd over Q[params], valid only for pm1-free operands; the result is
// primitive with positive leading coefficient (gcd of constants is 1).
inline Poly poly_gcd(const Poly& a, const Poly& b) {
    require_same_context(a.ctx(), b.ctx(), "polynomial gcd");
    if (a.is_zero()) return b.primitive_normalized();
    if (b.is_zero()) return a.primitive_normalized();
    if (a.is_constant() || b.is_constant()) return Poly::one(a.ctx());
    int var = -1;
    for (int v = 0; v < a.ctx()->nparams() && var < 0; ++v)
        if (a.depends_on(v) || b.depends_on(v)) var = v;
    if (var < 0) return Poly::one(a.ctx());

    auto content_in = [&](const Poly& p) {
        auto coeffs = detail::coeffs_in_var(p, var);
        Poly g = Poly::zero(p.ctx());
        for (const auto& c : coeffs) g = poly_gcd(g, c);
        return g;
    };

    if (!a.depends_on(var)) return poly_gcd(a, content_in(b));
    if (!b.depends_on(var)) return poly_gcd(content_in(a), b);

    Poly ca = content_in(a), cb = content_in(b);
    Poly ppa = exact_div(a, ca), ppb = exact_div(b, cb);
    Poly cont = poly_gcd(ca, cb);

    Poly f = ppa, g = ppb;
    if (f.degree_in(var) < g.degree_in(var)) std::swap(f, g);
    while (true) {
        Poly r = detail::prem(f, g, var);
        if (r.is_zero()) break;
        if (r.degree_in(var) == 0) return cont.primitive_normalized();
        f = g;
        g = exact_div(r, content_in(r)).primitive_normalized();
    }
    return (cont * g.primitive_normalized()).primitive_normalized();
}

} // namespace solitonforge
