// Canonical exp-polynomials: finite sums
//     coeff * x^mono * exp(<freq, x>)
// with coeff in the parameter field, mono a multi-index over the coordinates
// and freq a vector of exact rationals. Distinct (freq, mono) keys are
// linearly independent functions, so the empty sum is the zero function and
// structural equality decides mathematical equality.
//
// Term order: lexicographic on freq, then graded-lex on mono, ascending.
// All values are immutable after construction.
#pragma once

#include <cmath>
#include <map>
#include <sstream>
#include <vector>

#include "solitonforge/param_scalar.hpp"

namespace solitonforge {

struct ExpKey {
    std::vector<Rat> freq;      // exponential linear form, one entry per coordinate
    Mono mono;                  // coordinate exponents

    static ExpKey unit(int dim) { return {std::vector<Rat>(dim, Rat(0)), Mono(dim, 0)}; }

    bool is_unit() const {
        for (const auto& q : freq)
            if (!q.is_zero()) return false;
        return mono_total_degree(mono) == 0;
    }

    bool freq_is_zero() const {
        for (const auto& q : freq)
            if (!q.is_zero()) return false;
        return true;
    }

    ExpKey operator+(const ExpKey& o) const {
        ExpKey r = *this;
        for (size_t i = 0; i < freq.size(); ++i) r.freq[i] += o.freq[i];
        for (size_t i = 0; i < mono.size(); ++i) r.mono[i] += o.mono[i];
        return r;
    }

    bool operator==(const ExpKey& o) const { return freq == o.freq && mono == o.mono; }
};

inline int key_cmp(const ExpKey& a, const ExpKey& b) {
    for (size_t i = 0; i < a.freq.size(); ++i) {
        int c = rat_cmp(a.freq[i], b.freq[i]);
        if (c != 0) return c;
    }
    return mono_cmp(a.mono, b.mono);
}

inline bool key_less(const ExpKey& a, const ExpKey& b) { return key_cmp(a, b) < 0; }

struct ExpTerm {
    ExpKey key;
    ParamScalar coeff;
};

class ExpPoly {
  public:
    ExpPoly() = default;
    explicit ExpPoly(CtxPtr ctx) : ctx_(std::move(ctx)) {}

    static ExpPoly zero(CtxPtr ctx) { return ExpPoly(std::move(ctx)); }

    static ExpPoly constant(ParamScalar c) {
        ExpPoly p(c.ctx());
        if (!c.is_zero()) p.terms_.push_back({ExpKey::unit(p.ctx_->dim()), std::move(c)});
        return p;
    }

    static ExpPoly from_rat(CtxPtr ctx, const Rat& q) {
        return constant(ParamScalar::from_rat(ctx, q));
    }

    static ExpPoly one(CtxPtr ctx) { return from_rat(std::move(ctx), Rat(1)); }

    static ExpPoly coord(CtxPtr ctx, int i) {
        ExpPoly p(ctx);
        ExpKey k = ExpKey::unit(p.ctx_->dim());
        k.mono.at(i) = 1;
        p.terms_.push_back({std::move(k), ParamScalar::one(ctx)});
        return p;
    }

    static ExpPoly param(CtxPtr ctx, int i) {
        return constant(ParamScalar::param(ctx, i));
    }

    // exp(<freq, x>)
    static ExpPoly exp_linear(CtxPtr ctx, std::vector<Rat> freq) {
        ExpPoly p(ctx);
        if (static_cast<int>(freq.size()) != p.ctx_->dim())
            throw InternalError("exp_linear: frequency size != dimension");
        ExpKey k{std::move(freq), Mono(p.ctx_->dim(), 0)};
        p.terms_.push_back({std::move(k), ParamScalar::one(ctx)});
        return p;
    }

    // coeff * x^mono * exp(<freq, x>)
    static ExpPoly term(ExpKey key, ParamScalar coeff) {
        ExpPoly p(coeff.ctx());
        if (!coeff.is_zero()) p.terms_.push_back({std::move(key), std::move(coeff)});
        return p;
    }

    static ExpPoly from_terms(CtxPtr ctx, std::vector<ExpTerm> terms) {
        ExpPoly p(ctx);
        std::map<ExpKey, ParamScalar, KeyLess> acc;
        for (auto& t : terms) {
            auto it = acc.find(t.key);
            if (it == acc.end())
                acc.emplace(std::move(t.key), std::move(t.coeff));
            else
                it->second = it->second + t.coeff;
        }
        for (auto& [k, c] : acc)
            if (!c.is_zero()) p.terms_.push_back({k, std::move(c)});
        return p;
    }

    const CtxPtr& ctx() const { return ctx_; }
    int dim() const { return ctx_->dim(); }
    const std::vector<ExpTerm>& terms() const { return terms_; }

    bool is_zero() const { return terms_.empty(); }

    ParamScalar coeff_of(const ExpKey& key) const {
        for (const auto& t : terms_)
            if (t.key == key) return t.coeff;
        return ParamScalar::zero(ctx_);
    }

    bool operator==(const ExpPoly& o) const {
        if (terms_.size() != o.terms_.size()) return false;
        for (size_t i = 0; i < terms_.size(); ++i)
            if (!(terms_[i].key == o.terms_[i].key) || terms_[i].coeff != o.terms_[i].coeff)
                return false;
        return true;
    }
    bool operator!=(const ExpPoly& o) const { return !(*this == o); }

    ExpPoly operator-() const {
        ExpPoly r(*this);
        for (auto& t : r.terms_) t.coeff = -t.coeff;
        return r;
    }

    ExpPoly operator+(const ExpPoly& o) const {
        require_same_context(ctx_, o.ctx_, "expression +");
        ExpPoly r(ctx_);
        r.terms_.reserve(terms_.size() + o.terms_.size());
        size_t i = 0, j = 0;
        while (i < terms_.size() && j < o.terms_.size()) {
            int c = key_cmp(terms_[i].key, o.terms_[j].key);
            if (c < 0) {
                r.terms_.push_back(terms_[i++]);
            } else if (c > 0) {
                r.terms_.push_back(o.terms_[j++]);
            } else {
                ParamScalar s = terms_[i].coeff + o.terms_[j].coeff;
                if (!s.is_zero()) r.terms_.push_back({terms_[i].key, std::move(s)});
                ++i, ++j;
            }
        }
        for (; i < terms_.size(); ++i) r.terms_.push_back(terms_[i]);
        for (; j < o.terms_.size(); ++j) r.terms_.push_back(o.terms_[j]);
        return r;
    }

    ExpPoly operator-(const ExpPoly& o) const { return *this + (-o); }

    ExpPoly operator*(const ExpPoly& o) const {
        require_same_context(ctx_, o.ctx_, "expression *");
        std::vector<ExpTerm> prod;
        prod.reserve(terms_.size() * o.terms_.size());
        for (const auto& a : terms_)
            for (const auto& b : o.terms_)
                prod.push_back({a.key + b.key, a.coeff * b.coeff});
        return from_terms(ctx_, std::move(prod));
    }

    ExpPoly scale(const ParamScalar& s) const {
        if (s.is_zero()) return zero(ctx_);
        ExpPoly r(*this);
        for (auto& t : r.terms_) t.coeff = t.coeff * s;
        return r;
    }

    // single term with empty monomial and invertible coefficient: a unit of
    // the ring (its inverse flips the frequency)
    bool is_unit() const {
        return terms_.size() == 1 && mono_total_degree(terms_[0].key.mono) == 0 &&
               terms_[0].coeff.is_invertible();
    }

    ExpPoly unit_inverse() const {
        if (!is_unit()) throw DivisionByZero("expression is not a unit: " + to_string());
        ExpKey k = terms_[0].key;
        for (auto& q : k.freq) q = -q;
        return term(std::move(k), terms_[0].coeff.inverse());
    }

    ExpPoly operator/(const ExpPoly& o) const { return *this * o.unit_inverse(); }

    ExpPoly pow(int e) const {
        if (e < 0) return unit_inverse().pow(-e);
        ExpPoly r = one(ctx_);
        ExpPoly b = *this;
        while (e > 0) {
            if (e & 1) r = r * b;
            b = b * b;
            e >>= 1;
        }
        return r;
    }

    // exact partial derivative with respect to coordinate i:
    // d/dx_i (x^m e^{<f,x>}) = m_i x^{m-e_i} e^{<f,x>} + f_i x^m e^{<f,x>}
    ExpPoly diff(int i) const {
        if (i < 0 || i >= dim()) throw InternalError("diff: coordinate index out of range");
        std::vector<ExpTerm> out;
        out.reserve(2 * terms_.size());
        for (const auto& t : terms_) {
            if (t.key.mono[i] > 0) {
                ExpKey k = t.key;
                k.mono[i] -= 1;
                out.push_back({std::move(k),
                               t.coeff * ParamScalar::from_rat(ctx_, Rat(t.key.mono[i]))});
            }
            if (!t.key.freq[i].is_zero()) {
                out.push_back({t.key, t.coeff * ParamScalar::from_rat(ctx_, t.key.freq[i])});
            }
        }
        return from_terms(ctx_, std::move(out));
    }

    double eval(const std::vector<double>& point, const std::vector<double>& params) const {
        if (static_cast<int>(point.size()) != dim())
            throw InputError("eval: point size != dimension");
        double acc = 0;
        for (const auto& t : terms_) {
            double v = t.coeff.eval(params);
            for (int i = 0; i < dim(); ++i) {
                for (uint32_t e = 0; e < t.key.mono[i]; ++e) v *= point[i];
                if (!t.key.freq[i].is_zero()) v *= std::exp(to_double(t.key.freq[i]) * point[i]);
            }
            acc += v;
        }
        return acc;
    }

    ExpPoly subst_param(int var, const Rat& value) const {
        std::vector<ExpTerm> out;
        out.reserve(terms_.size());
        for (const auto& t : terms_) out.push_back({t.key, t.coeff.subst(var, value)});
        return from_terms(ctx_, std::move(out));
    }

    // move to a context with the same coordinates; parameters matched by name
    ExpPoly transplant(const CtxPtr& new_ctx) const {
        if (new_ctx->coords() != ctx_->coords())
            throw ContextError("transplant requires identical coordinates");
        std::vector<int> index_map(ctx_->nparams());
        for (int v = 0; v < ctx_->nparams(); ++v) {
            auto idx = new_ctx->find_param(ctx_->param_name(v));
            if (!idx) throw ContextError("transplant: parameter missing in target context: " +
                                         ctx_->param_name(v));
            index_map[v] = *idx;
        }
        ExpPoly r(new_ctx);
        for (const auto& t : terms_)
            r.terms_.push_back({t.key, t.coeff.remap(new_ctx, index_map)});
        return r;
    }

    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::string out;
        bool first = true;
        for (const auto& t : terms_) {
            std::string s = term_string(t);
            if (first) {
                out = s;
            } else if (!s.empty() && s[0] == '-') {
                out += " - " + s.substr(1);
            } else {
                out += " + " + s;
            }
            first = false;
        }
        return out;
    }

  private:
    struct KeyLess {
        bool operator()(const ExpKey& a, const ExpKey& b) const { return key_less(a, b); }
    };

    std::string term_string(const ExpTerm& t) const {
        std::vector<std::string> factors;
        for (int i = 0; i < dim(); ++i) {
            if (t.key.mono[i] == 0) continue;
            std::string f = ctx_->coord_name(i);
            if (t.key.mono[i] > 1) f += "^" + std::to_string(t.key.mono[i]);
            factors.push_back(std::move(f));
        }
        if (!t.key.freq_is_zero()) factors.push_back("exp(" + freq_string(t.key.freq) + ")");

        std::string cs;
        if (factors.empty()) {
            cs = coeff_factor_string(t.coeff, /*allow_bare=*/true);
        } else if (t.coeff.is_one()) {
            cs = "";
        } else if (t.coeff == -ParamScalar::one(ctx_)) {
            cs = "-";
        } else {
            cs = coeff_factor_string(t.coeff, /*allow_bare=*/false) + "*";
        }
        std::string out = cs;
        for (size_t i = 0; i < factors.size(); ++i) {
            if (i > 0) out += "*";
            out += factors[i];
        }
        return out;
    }

    // string usable as a multiplicand; parenthesized when needed
    std::string coeff_factor_string(const ParamScalar& c, bool allow_bare) const {
        if (c.is_rational()) return to_string_rat(c.as_rational());
        if (allow_bare || c.is_simple_factor()) return c.to_string();
        return "(" + c.to_string() + ")";
    }

    static std::string to_string_rat(const Rat& q) {
        return q.str();
    }

    std::string freq_string(const std::vector<Rat>& freq) const {
        std::string out;
        bool first = true;
        for (int i = 0; i < dim(); ++i) {
            if (freq[i].is_zero()) continue;
            Rat q = freq[i];
            if (first) {
                if (q < 0) {
                    out += "-";
                    q = -q;
                }
            } else {
                out += q < 0 ? " - " : " + ";
                if (q < 0) q = -q;
            }
            first = false;
            if (q != 1) out += q.str() + "*";
            out += ctx_->coord_name(i);
        }
        return out;
    }

    CtxPtr ctx_;
    std::vector<ExpTerm> terms_;
};

inline ExpPoly operator*(const ParamScalar& s, const ExpPoly& p) { return p.scale(s); }

} // namespace solitonforge
