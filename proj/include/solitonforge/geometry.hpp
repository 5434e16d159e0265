// Levi-Civita connection, curvature, Ricci, Lie derivative, musical
// isomorphism and exterior derivative for a SpaceModel, all exact.
//
// Conventions (fixed once, audited by tests against known tables):
//   Gamma^k_ij = 1/2 g^{kl} (d_i g_jl + d_j g_il - d_l g_ij)
//   R(d_i, d_j) d_k = (d_i Gamma^l_jk - d_j Gamma^l_ik
//                      + Gamma^l_im Gamma^m_jk - Gamma^l_jm Gamma^m_ik) d_l
//   ricci(X, Y) = tr(Z -> R(Z, X) Y)
//   (L_X g)_ij = X^k d_k g_ij + g_kj d_i X^k + g_ik d_j X^k
#pragma once

#include "solitonforge/model.hpp"

namespace solitonforge {

// exact inverse of the metric. Restricted to metrics whose determinant is a
// single invertible term, so the inverse stays inside the expression class.
inline ExpMatrix inverse_metric(const SpaceModel& m) {
    const ExpMatrix& g = m.metric();
    ExpPoly det = g.det();
    if (det.is_zero()) throw NonMonomialDeterminant("metric determinant is zero");
    if (!det.is_unit())
        throw NonMonomialDeterminant(
            "metric determinant is not a single invertible term: " + det.to_string());
    ExpPoly inv_det = det.unit_inverse();
    ExpMatrix adj = g.adjugate();
    ExpMatrix res(m.ctx(), m.dim());
    for (int i = 0; i < m.dim(); ++i)
        for (int j = 0; j < m.dim(); ++j) res.at(i, j) = adj.at(i, j) * inv_det;
    return res;
}

// Christoffel symbols Gamma^k_ij stored as gamma[k](i,j), symmetric in (i,j)
struct Connection {
    CtxPtr ctx;
    std::vector<ExpMatrix> gamma; // index k -> matrix over (i,j)

    const ExpPoly& at(int k, int i, int j) const { return gamma.at(k).at(i, j); }
};

inline Connection christoffel(const SpaceModel& m) {
    int n = m.dim();
    const ExpMatrix& g = m.metric();
    ExpMatrix ginv = inverse_metric(m);

    // precompute first derivatives of the metric
    std::vector<ExpMatrix> dg(n, ExpMatrix(m.ctx(), n));
    for (int l = 0; l < n; ++l)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) dg[l].at(i, j) = g.at(i, j).diff(l);

    Connection c{m.ctx(), std::vector<ExpMatrix>(n, ExpMatrix(m.ctx(), n))};
    ParamScalar half = ParamScalar::from_rat(m.ctx(), Rat(1, 2));
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                ExpPoly s = ExpPoly::zero(m.ctx());
                for (int l = 0; l < n; ++l) {
                    ExpPoly koszul = dg[i].at(j, l) + dg[j].at(i, l) - dg[l].at(i, j);
                    if (!koszul.is_zero()) s = s + ginv.at(k, l) * koszul;
                }
                s = s.scale(half);
                c.gamma[k].at(i, j) = s;
                c.gamma[k].at(j, i) = s;
            }
    return c;
}

// curvature operators R(d_i, d_j), stored for i < j as matrices [l][k]
// (column k holds the components of R(d_i, d_j) d_k)
class CurvatureSlices {
  public:
    CurvatureSlices() = default;
    CurvatureSlices(CtxPtr ctx, int n) : ctx_(std::move(ctx)), n_(n) {
        slices_.resize(static_cast<size_t>(n) * n, ExpMatrix(ctx_, n));
    }

    int dim() const { return n_; }
    const CtxPtr& ctx() const { return ctx_; }

    ExpMatrix& store(int i, int j) {
        if (i >= j) throw InternalError("curvature slices stored for i < j only");
        return slices_.at(static_cast<size_t>(i) * n_ + j);
    }

    // R(d_i, d_j) with the antisymmetry applied for i >= j
    ExpMatrix slice(int i, int j) const {
        if (i == j) return ExpMatrix(ctx_, n_);
        if (i < j) return slices_.at(static_cast<size_t>(i) * n_ + j);
        return -slices_.at(static_cast<size_t>(j) * n_ + i);
    }

  private:
    CtxPtr ctx_;
    int n_ = 0;
    std::vector<ExpMatrix> slices_;
};

inline CurvatureSlices riemann(const SpaceModel& m, const Connection& c) {
    int n = m.dim();
    CurvatureSlices r(m.ctx(), n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            ExpMatrix& s = r.store(i, j);
            for (int l = 0; l < n; ++l)
                for (int k = 0; k < n; ++k) {
                    ExpPoly v = c.at(l, j, k).diff(i) - c.at(l, i, k).diff(j);
                    for (int mm = 0; mm < n; ++mm) {
                        if (!c.at(l, i, mm).is_zero() && !c.at(mm, j, k).is_zero())
                            v = v + c.at(l, i, mm) * c.at(mm, j, k);
                        if (!c.at(l, j, mm).is_zero() && !c.at(mm, i, k).is_zero())
                            v = v - c.at(l, j, mm) * c.at(mm, i, k);
                    }
                    s.at(l, k) = v;
                }
        }
    return r;
}

inline CurvatureSlices riemann(const SpaceModel& m) { return riemann(m, christoffel(m)); }

// ricci_jk = sum_i (R(d_i, d_j) d_k)^i
inline SymTensor ricci(const SpaceModel& m, const CurvatureSlices& r) {
    int n = m.dim();
    ExpMatrix rho(m.ctx(), n);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
            ExpPoly s = ExpPoly::zero(m.ctx());
            for (int i = 0; i < n; ++i) {
                if (i == j) continue;
                s = s + r.slice(i, j).at(i, k);
            }
            rho.at(j, k) = s;
        }
    if (!rho.is_symmetric())
        throw AsymmetryDetected("computed Ricci tensor is not symmetric");
    return SymTensor(std::move(rho));
}

inline SymTensor ricci(const SpaceModel& m) { return ricci(m, riemann(m)); }

// tau = g^{jk} ricci_jk
inline ExpPoly scalar_curvature(const SpaceModel& m, const SymTensor& rho) {
    ExpMatrix ginv = inverse_metric(m);
    ExpPoly tau = ExpPoly::zero(m.ctx());
    for (int j = 0; j < m.dim(); ++j)
        for (int k = 0; k < m.dim(); ++k)
            if (!rho.at(j, k).is_zero()) tau = tau + ginv.at(j, k) * rho.at(j, k);
    return tau;
}

inline SymTensor lie_derivative_metric(const SpaceModel& m, const VectorField& X) {
    require_same_context(m.ctx(), X.ctx, "lie derivative");
    int n = m.dim();
    const ExpMatrix& g = m.metric();
    ExpMatrix out(m.ctx(), n);
    for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
            ExpPoly s = ExpPoly::zero(m.ctx());
            for (int k = 0; k < n; ++k) {
                if (!X.comp[k].is_zero()) s = s + X.comp[k] * g.at(i, j).diff(k);
                s = s + g.at(k, j) * X.comp[k].diff(i);
                s = s + g.at(i, k) * X.comp[k].diff(j);
            }
            out.at(i, j) = s;
            out.at(j, i) = s;
        }
    return SymTensor(std::move(out));
}

// musical isomorphism: omega_j = g_ij X^i
inline OneForm lower(const SpaceModel& m, const VectorField& X) {
    require_same_context(m.ctx(), X.ctx, "lower");
    std::vector<ExpPoly> comp(m.dim(), ExpPoly::zero(m.ctx()));
    for (int j = 0; j < m.dim(); ++j) {
        ExpPoly s = ExpPoly::zero(m.ctx());
        for (int i = 0; i < m.dim(); ++i)
            if (!X.comp[i].is_zero()) s = s + m.metric().at(i, j) * X.comp[i];
        comp[j] = s;
    }
    return OneForm(m.ctx(), std::move(comp));
}

// (d omega)_ij = d_i omega_j - d_j omega_i
inline TwoForm exterior_derivative(const OneForm& omega) {
    int n = omega.ctx->dim();
    ExpMatrix out(omega.ctx, n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            ExpPoly v = omega.comp[j].diff(i) - omega.comp[i].diff(j);
            out.at(i, j) = v;
            out.at(j, i) = -v;
        }
    return TwoForm(std::move(out));
}

// grad(f)^j = g^{ij} d_i f
inline VectorField gradient(const SpaceModel& m, const ExpPoly& f) {
    ExpMatrix ginv = inverse_metric(m);
    std::vector<ExpPoly> comp(m.dim(), ExpPoly::zero(m.ctx()));
    for (int j = 0; j < m.dim(); ++j) {
        ExpPoly s = ExpPoly::zero(m.ctx());
        for (int i = 0; i < m.dim(); ++i) s = s + ginv.at(i, j) * f.diff(i);
        comp[j] = s;
    }
    return VectorField(m.ctx(), std::move(comp));
}

// full covariant derivative of g; identically zero for a metric connection
inline ExpPoly metric_compatibility_defect(const SpaceModel& m, const Connection& c, int k,
                                           int i, int j) {
    ExpPoly v = m.metric().at(i, j).diff(k);
    for (int l = 0; l < m.dim(); ++l) {
        v = v - c.at(l, k, i) * m.metric().at(l, j);
        v = v - c.at(l, k, j) * m.metric().at(i, l);
    }
    return v;
}

} // namespace solitonforge
