// Exact coefficient scalars: rational functions over Q in the parameter
// symbols, with pm1 symbols (eps^2 = 1) adjoined in the numerator.
//
// Canonical form:
//   - denominator is pm1-free, nonzero, has coprime integer coefficients and
//     positive leading coefficient;
//   - no common pm1-free factor between numerator and denominator;
//   - zero is (0, 1).
// Structural equality is therefore mathematical equality.
//
// The quotient by eps^2-1 is not a field: elements whose pm1-norm vanishes
// (such as 1+eps) are zero divisors, and inverting one throws DivisionByZero.
#pragma once

#include <string>
#include <vector>

#include "solitonforge/polynomial.hpp"

namespace solitonforge {

class ParamScalar {
  public:
    ParamScalar() = default;
    explicit ParamScalar(CtxPtr ctx)
        : ctx_(std::move(ctx)), num_(Poly::zero(ctx_)), den_(Poly::one(ctx_)) {}

    static ParamScalar zero(CtxPtr ctx) { return ParamScalar(std::move(ctx)); }

    static ParamScalar from_rat(CtxPtr ctx, const Rat& q) {
        ParamScalar s(ctx);
        s.num_ = Poly::constant(ctx, q);
        return s;
    }

    static ParamScalar one(CtxPtr ctx) { return from_rat(std::move(ctx), Rat(1)); }

    static ParamScalar param(CtxPtr ctx, int index) {
        ParamScalar s(ctx);
        s.num_ = Poly::param(ctx, index);
        return s;
    }

    static ParamScalar from_poly(Poly p) {
        ParamScalar s(p.ctx());
        s.num_ = std::move(p);
        s.normalize();
        return s;
    }

    static ParamScalar fraction(Poly num, Poly den) {
        ParamScalar s(num.ctx());
        require_same_context(num.ctx(), den.ctx(), "scalar fraction");
        s.num_ = std::move(num);
        s.den_ = std::move(den);
        s.rationalize_den();
        s.normalize();
        return s;
    }

    const CtxPtr& ctx() const { return ctx_; }
    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_ == den_; }

    bool is_rational() const { return num_.is_constant() && den_.is_constant(); }
    Rat as_rational() const {
        if (!is_rational()) throw InternalError("as_rational on symbolic scalar");
        return num_.constant_value() / den_.constant_value();
    }

    // numerator free of every non-pm1 parameter (a "constant" pivot for the
    // elimination's purposes: inverting it never constrains mu)
    bool numerator_param_free() const { return num_.depends_only_on_pm1(); }

    bool operator==(const ParamScalar& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const ParamScalar& o) const { return !(*this == o); }

    ParamScalar operator-() const {
        ParamScalar r(*this);
        r.num_ = -r.num_;
        return r;
    }

    ParamScalar operator+(const ParamScalar& o) const {
        require_same_context(ctx_, o.ctx_, "scalar +");
        ParamScalar r(ctx_);
        if (den_ == o.den_) {
            r.num_ = num_ + o.num_;
            r.den_ = den_;
        } else {
            r.num_ = num_ * o.den_ + o.num_ * den_;
            r.den_ = den_ * o.den_;
        }
        r.normalize();
        return r;
    }

    ParamScalar operator-(const ParamScalar& o) const { return *this + (-o); }

    ParamScalar operator*(const ParamScalar& o) const {
        require_same_context(ctx_, o.ctx_, "scalar *");
        ParamScalar r(ctx_);
        r.num_ = num_ * o.num_;
        r.den_ = den_ * o.den_;
        r.normalize();
        return r;
    }

    ParamScalar inverse() const {
        if (num_.is_zero()) throw DivisionByZero("scalar division by zero");
        // rationalize pm1 symbols out of the (future) denominator
        Poly n = num_;
        Poly conj = Poly::one(ctx_);
        for (int v = 0; v < ctx_->nparams(); ++v) {
            if (!ctx_->param_is_pm1(v) || !n.depends_on(v)) continue;
            auto parts = split_pm1(n, v);
            conj = conj * (parts.first - Poly::param(ctx_, v) * parts.second);
            n = parts.first * parts.first - parts.second * parts.second;
        }
        if (n.is_zero())
            throw DivisionByZero("scalar inverse of a zero divisor: " + num_.to_string());
        ParamScalar r(ctx_);
        r.num_ = den_ * conj;
        r.den_ = std::move(n);
        r.normalize();
        return r;
    }

    bool is_invertible() const {
        if (num_.is_zero()) return false;
        return !numerator_pm1_norm().is_zero();
    }

    // pm1-free norm of the numerator: num * conj(num) over every pm1 symbol.
    // Zero exactly when num is a zero divisor.
    Poly numerator_pm1_norm() const {
        Poly n = num_;
        for (int v = 0; v < ctx_->nparams(); ++v) {
            if (!ctx_->param_is_pm1(v) || !n.depends_on(v)) continue;
            auto parts = split_pm1(n, v);
            n = parts.first * parts.first - parts.second * parts.second;
        }
        return n;
    }

    ParamScalar operator/(const ParamScalar& o) const { return *this * o.inverse(); }

    double eval(const std::vector<double>& param_values) const {
        double d = den_.eval(param_values);
        if (d == 0.0) throw DivisionByZero("denominator vanishes at parameter assignment: " +
                                           den_.to_string());
        return num_.eval(param_values) / d;
    }

    ParamScalar subst(int var, const Rat& value) const {
        Poly d = den_.subst(var, value);
        if (d.is_zero())
            throw DivisionByZero("denominator " + den_.to_string() + " vanishes at " +
                                 ctx_->param_name(var) + " = " + value.str());
        ParamScalar r(ctx_);
        r.num_ = num_.subst(var, value);
        r.den_ = std::move(d);
        r.normalize();
        return r;
    }

    // exact rational value under a full rational parameter assignment
    Rat eval_exact(const std::vector<Rat>& values) const {
        Poly n = num_, d = den_;
        for (int v = 0; v < ctx_->nparams(); ++v) {
            n = n.subst(v, values.at(v));
            d = d.subst(v, values.at(v));
        }
        if (d.is_zero() || !d.is_constant() || !n.is_constant())
            throw DivisionByZero("scalar does not evaluate to a rational at the assignment");
        return n.constant_value() / d.constant_value();
    }

    ParamScalar remap(CtxPtr new_ctx, const std::vector<int>& index_map) const {
        ParamScalar r(new_ctx);
        r.num_ = num_.remap(new_ctx, index_map);
        r.den_ = den_.remap(new_ctx, index_map);
        r.normalize();
        return r;
    }

    std::string to_string() const {
        if (den_ == Poly::one(ctx_)) return num_.to_string();
        // numerator needs parentheses unless it is a single term; the
        // denominator must stay a single *factor* (one symbol, exponent 1)
        // for f/d*g not to be misread
        std::string ns = num_.terms().size() == 1 ? num_.to_string()
                                                  : "(" + num_.to_string() + ")";
        std::string ds = "(" + den_.to_string() + ")";
        if (den_.terms().size() == 1) {
            const auto& t = den_.terms()[0];
            if (t.coeff == 1 && mono_total_degree(t.mono) == 1) ds = den_.to_string();
        }
        return ns + "/" + ds;
    }

    // single positive term like 3*mu or eps; safe to print as a bare factor
    bool is_simple_factor() const {
        return den_ == Poly::one(ctx_) && num_.terms().size() == 1 && num_.terms()[0].coeff > 0;
    }

  private:
    // p = A + v*B with A, B free of pm1 symbol v
    static std::pair<Poly, Poly> split_pm1(const Poly& p, int v) {
        std::vector<Poly::Term> a, b;
        for (const auto& t : p.terms()) {
            if (t.mono[v] == 0) {
                a.push_back(t);
            } else {
                Mono m = t.mono;
                m[v] = 0;
                b.push_back({std::move(m), t.coeff});
            }
        }
        return {Poly::from_terms(p.ctx(), std::move(a)), Poly::from_terms(p.ctx(), std::move(b))};
    }

    // den must already be pm1-free; reduce and fix canonical scaling
    void normalize() {
        if (num_.is_zero()) {
            den_ = Poly::one(ctx_);
            return;
        }
        Poly g = den_;
        for (const auto& [pattern, comp] : num_.pm1_components()) g = poly_gcd(g, comp);
        if (!(g == Poly::one(ctx_))) {
            num_ = exact_div(num_, g);
            den_ = exact_div(den_, g);
        }
        Rat c = den_.rational_content();
        if (den_.leading().coeff < 0) c = -c;
        if (c != 1) {
            Rat inv = Rat(1) / c;
            num_ = num_ * inv;
            den_ = den_ * inv;
        }
    }

    // clear pm1 symbols from the denominator by conjugation
    void rationalize_den() {
        if (den_.is_zero()) throw DivisionByZero("scalar with zero denominator");
        for (int v = 0; v < ctx_->nparams(); ++v) {
            if (!ctx_->param_is_pm1(v) || !den_.depends_on(v)) continue;
            auto parts = split_pm1(den_, v);
            Poly conj = parts.first - Poly::param(ctx_, v) * parts.second;
            num_ = num_ * conj;
            den_ = parts.first * parts.first - parts.second * parts.second;
            if (den_.is_zero())
                throw DivisionByZero("scalar denominator is a zero divisor");
        }
    }

    CtxPtr ctx_;
    Poly num_, den_;
};

inline ParamScalar operator*(const Rat& c, const ParamScalar& s) {
    return ParamScalar::from_rat(s.ctx(), c) * s;
}

} // namespace solitonforge
