// Small dense tensors of exp-polynomials with variance tags.
#pragma once

#include <vector>

#include "solitonforge/exp_poly.hpp"

namespace solitonforge {

// dim x dim matrix of expressions, row-major
class ExpMatrix {
  public:
    ExpMatrix() = default;
    ExpMatrix(CtxPtr ctx, int n)
        : ctx_(std::move(ctx)), n_(n), m_(static_cast<size_t>(n) * n, ExpPoly::zero(ctx_)) {}

    const CtxPtr& ctx() const { return ctx_; }
    int size() const { return n_; }

    ExpPoly& at(int i, int j) { return m_.at(static_cast<size_t>(i) * n_ + j); }
    const ExpPoly& at(int i, int j) const { return m_.at(static_cast<size_t>(i) * n_ + j); }

    bool operator==(const ExpMatrix& o) const { return n_ == o.n_ && m_ == o.m_; }
    bool operator!=(const ExpMatrix& o) const { return !(*this == o); }

    bool is_zero() const {
        for (const auto& e : m_)
            if (!e.is_zero()) return false;
        return true;
    }

    bool is_symmetric() const {
        for (int i = 0; i < n_; ++i)
            for (int j = i + 1; j < n_; ++j)
                if (at(i, j) != at(j, i)) return false;
        return true;
    }

    bool is_antisymmetric() const {
        for (int i = 0; i < n_; ++i) {
            if (!at(i, i).is_zero()) return false;
            for (int j = i + 1; j < n_; ++j)
                if (at(i, j) != -at(j, i)) return false;
        }
        return true;
    }

    ExpMatrix operator+(const ExpMatrix& o) const {
        ExpMatrix r(ctx_, n_);
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) r.at(i, j) = at(i, j) + o.at(i, j);
        return r;
    }

    ExpMatrix operator-(const ExpMatrix& o) const {
        ExpMatrix r(ctx_, n_);
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) r.at(i, j) = at(i, j) - o.at(i, j);
        return r;
    }

    ExpMatrix operator-() const {
        ExpMatrix r(ctx_, n_);
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) r.at(i, j) = -at(i, j);
        return r;
    }

    ExpMatrix operator*(const ExpMatrix& o) const {
        ExpMatrix r(ctx_, n_);
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) {
                ExpPoly s = ExpPoly::zero(ctx_);
                for (int k = 0; k < n_; ++k) s = s + at(i, k) * o.at(k, j);
                r.at(i, j) = s;
            }
        return r;
    }

    ExpMatrix scale(const ExpPoly& f) const {
        ExpMatrix r(ctx_, n_);
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) r.at(i, j) = at(i, j) * f;
        return r;
    }

    static ExpMatrix identity(CtxPtr ctx, int n) {
        ExpMatrix r(ctx, n);
        for (int i = 0; i < n; ++i) r.at(i, i) = ExpPoly::one(ctx);
        return r;
    }

    // exact determinant by cofactor expansion (n <= 4 in practice)
    ExpPoly det() const {
        if (n_ == 0) return ExpPoly::one(ctx_);
        if (n_ == 1) return at(0, 0);
        ExpPoly d = ExpPoly::zero(ctx_);
        for (int j = 0; j < n_; ++j) {
            if (at(0, j).is_zero()) continue;
            ExpPoly term = at(0, j) * minor_of(0, j).det();
            d = (j % 2 == 0) ? d + term : d - term;
        }
        return d;
    }

    ExpMatrix minor_of(int row, int col) const {
        ExpMatrix r(ctx_, n_ - 1);
        int ri = 0;
        for (int i = 0; i < n_; ++i) {
            if (i == row) continue;
            int rj = 0;
            for (int j = 0; j < n_; ++j) {
                if (j == col) continue;
                r.at(ri, rj) = at(i, j);
                ++rj;
            }
            ++ri;
        }
        return r;
    }

    ExpMatrix adjugate() const {
        ExpMatrix r(ctx_, n_);
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) {
                ExpPoly c = minor_of(j, i).det();
                r.at(i, j) = ((i + j) % 2 == 0) ? c : -c;
            }
        return r;
    }

  private:
    CtxPtr ctx_;
    int n_ = 0;
    std::vector<ExpPoly> m_;
};

// contravariant rank-1
struct VectorField {
    CtxPtr ctx;
    std::vector<ExpPoly> comp;

    VectorField() = default;
    VectorField(CtxPtr c, std::vector<ExpPoly> v) : ctx(std::move(c)), comp(std::move(v)) {
        if (static_cast<int>(comp.size()) != ctx->dim())
            throw InternalError("vector field: one component per coordinate required");
    }

    static VectorField zero(CtxPtr ctx) {
        int n = ctx->dim();
        return VectorField(ctx, std::vector<ExpPoly>(n, ExpPoly::zero(ctx)));
    }

    // the coordinate basis field d/dx_i
    static VectorField coordinate_basis(CtxPtr ctx, int i) {
        VectorField v = zero(ctx);
        v.comp.at(i) = ExpPoly::one(ctx);
        return v;
    }

    bool is_zero() const {
        for (const auto& c : comp)
            if (!c.is_zero()) return false;
        return true;
    }

    VectorField operator+(const VectorField& o) const {
        VectorField r = *this;
        for (size_t i = 0; i < comp.size(); ++i) r.comp[i] = r.comp[i] + o.comp[i];
        return r;
    }

    VectorField operator-(const VectorField& o) const {
        VectorField r = *this;
        for (size_t i = 0; i < comp.size(); ++i) r.comp[i] = r.comp[i] - o.comp[i];
        return r;
    }

    VectorField scale(const ParamScalar& s) const {
        VectorField r = *this;
        for (auto& c : r.comp) c = c.scale(s);
        return r;
    }

    bool operator==(const VectorField& o) const { return comp == o.comp; }
};

// covariant rank-1
struct OneForm {
    CtxPtr ctx;
    std::vector<ExpPoly> comp;

    OneForm() = default;
    OneForm(CtxPtr c, std::vector<ExpPoly> v) : ctx(std::move(c)), comp(std::move(v)) {
        if (static_cast<int>(comp.size()) != ctx->dim())
            throw InternalError("one-form: one component per coordinate required");
    }
};

// covariant symmetric rank-2
class SymTensor {
  public:
    SymTensor() = default;
    explicit SymTensor(ExpMatrix m) : m_(std::move(m)) {
        if (!m_.is_symmetric()) throw InternalError("symmetric tensor fails symmetry");
    }

    const ExpMatrix& mat() const { return m_; }
    const ExpPoly& at(int i, int j) const { return m_.at(i, j); }
    int dim() const { return m_.size(); }
    bool is_zero() const { return m_.is_zero(); }
    bool operator==(const SymTensor& o) const { return m_ == o.m_; }
    bool operator!=(const SymTensor& o) const { return !(*this == o); }

  private:
    ExpMatrix m_;
};

// covariant antisymmetric rank-2
class TwoForm {
  public:
    TwoForm() = default;
    explicit TwoForm(ExpMatrix m) : m_(std::move(m)) {
        if (!m_.is_antisymmetric()) throw InternalError("two-form fails antisymmetry");
    }

    const ExpMatrix& mat() const { return m_; }
    const ExpPoly& at(int i, int j) const { return m_.at(i, j); }
    int dim() const { return m_.size(); }
    bool is_zero() const { return m_.is_zero(); }

  private:
    ExpMatrix m_;
};

} // namespace solitonforge
