// Independent numerical cross-check of the symbolic kernel.
//
// The oracle never touches the symbolic Christoffel path: it rebuilds Gamma
// and Ricci purely from metric evaluations with second-order central
// differences, then compares against the evaluated symbolic tensors. This is
// the instrument that would catch a curvature sign-convention bug.
#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "solitonforge/geometry.hpp"

namespace solitonforge {

struct NumericScene {
    SpaceModel model;
    std::vector<double> params; // one value per context parameter
    std::vector<std::vector<double>> points;
    double h = 1e-4;
    double rel_tol = 1e-6;
    double abs_floor = 1e-9;
    uint64_t seed = 0;
};

namespace fd {

// deterministic uniform double in [-1, 1) from raw generator bits
inline double unit_double(std::mt19937_64& rng) {
    return 2.0 * ((rng() >> 11) * (1.0 / 9007199254740992.0)) - 1.0;
}

inline std::vector<std::vector<double>> sample_points(int dim, int count, uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<std::vector<double>> pts(count, std::vector<double>(dim));
    for (auto& p : pts)
        for (auto& x : p) x = unit_double(rng);
    return pts;
}

using DMat = std::vector<std::vector<double>>;

inline DMat metric_at(const NumericScene& s, const std::vector<double>& x) {
    int n = s.model.dim();
    DMat g(n, std::vector<double>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) g[i][j] = s.model.metric().at(i, j).eval(x, s.params);
    return g;
}

// Gauss-Jordan with partial pivoting; throws on (near-)singular input
inline DMat invert(DMat a, const std::vector<double>& where) {
    int n = static_cast<int>(a.size());
    DMat inv(n, std::vector<double>(n, 0.0));
    for (int i = 0; i < n; ++i) inv[i][i] = 1.0;
    for (int c = 0; c < n; ++c) {
        int p = c;
        for (int r = c + 1; r < n; ++r)
            if (std::fabs(a[r][c]) > std::fabs(a[p][c])) p = r;
        if (std::fabs(a[p][c]) < 1e-12) {
            std::string loc;
            for (double v : where) loc += (loc.empty() ? "(" : ", ") + std::to_string(v);
            throw DegenerateMetricAtPoint("metric numerically degenerate at " + loc + ")");
        }
        std::swap(a[c], a[p]);
        std::swap(inv[c], inv[p]);
        double d = a[c][c];
        for (int j = 0; j < n; ++j) {
            a[c][j] /= d;
            inv[c][j] /= d;
        }
        for (int r = 0; r < n; ++r) {
            if (r == c) continue;
            double f = a[r][c];
            if (f == 0.0) continue;
            for (int j = 0; j < n; ++j) {
                a[r][j] -= f * a[c][j];
                inv[r][j] -= f * inv[c][j];
            }
        }
    }
    return inv;
}

using D3 = std::vector<DMat>; // [k][i][j]

// Gamma^k_ij from central differences of the metric and the Koszul formula
inline D3 christoffel_at(const NumericScene& s, const std::vector<double>& x, double h) {
    int n = s.model.dim();
    // dg[l][i][j] = d_l g_ij
    D3 dg(n, DMat(n, std::vector<double>(n)));
    for (int l = 0; l < n; ++l) {
        std::vector<double> xp = x, xm = x;
        xp[l] += h;
        xm[l] -= h;
        DMat gp = metric_at(s, xp), gm = metric_at(s, xm);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) dg[l][i][j] = (gp[i][j] - gm[i][j]) / (2 * h);
    }
    DMat ginv = invert(metric_at(s, x), x);
    D3 gamma(n, DMat(n, std::vector<double>(n)));
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                double v = 0;
                for (int l = 0; l < n; ++l)
                    v += ginv[k][l] * (dg[i][j][l] + dg[j][i][l] - dg[l][i][j]);
                gamma[k][i][j] = 0.5 * v;
            }
    return gamma;
}

// ricci_jk = sum_i (d_i Gamma^i_jk - d_j Gamma^i_ik
//                   + Gamma^i_im Gamma^m_jk - Gamma^i_jm Gamma^m_ik)
inline DMat ricci_at(const NumericScene& s, const std::vector<double>& x, double h) {
    int n = s.model.dim();
    std::vector<D3> gp(n), gm(n);
    for (int d = 0; d < n; ++d) {
        std::vector<double> xp = x, xm = x;
        xp[d] += h;
        xm[d] -= h;
        gp[d] = christoffel_at(s, xp, h);
        gm[d] = christoffel_at(s, xm, h);
    }
    D3 gamma = christoffel_at(s, x, h);
    auto dgamma = [&](int d, int k, int i, int j) {
        return (gp[d][k][i][j] - gm[d][k][i][j]) / (2 * h);
    };
    DMat rho(n, std::vector<double>(n));
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
            double v = 0;
            for (int i = 0; i < n; ++i) {
                v += dgamma(i, i, j, k) - dgamma(j, i, i, k);
                for (int m = 0; m < n; ++m)
                    v += gamma[i][i][m] * gamma[m][j][k] - gamma[i][j][m] * gamma[m][i][k];
            }
            rho[j][k] = v;
        }
    return rho;
}

} // namespace fd

struct OracleReport {
    int points = 0;
    double h = 0;
    // worst deviation measured against max(rel_tol*|symbolic|, abs_floor)
    double gamma_worst_ratio = 0;
    double ricci_worst_ratio = 0;
    double gamma_max_abs_err = 0;
    double ricci_max_abs_err = 0;
    bool pass = false;
};

inline OracleReport oracle_compare(const NumericScene& scene) {
    const SpaceModel& m = scene.model;
    int n = m.dim();
    Connection sym_gamma = christoffel(m);
    SymTensor sym_rho = ricci(m);

    OracleReport rep;
    rep.points = static_cast<int>(scene.points.size());
    rep.h = scene.h;
    for (const auto& x : scene.points) {
        fd::D3 num_gamma = fd::christoffel_at(scene, x, scene.h);
        fd::DMat num_rho = fd::ricci_at(scene, x, scene.h);
        for (int k = 0; k < n; ++k)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    double sv = sym_gamma.at(k, i, j).eval(x, scene.params);
                    double err = std::fabs(num_gamma[k][i][j] - sv);
                    double tol = std::max(scene.rel_tol * std::fabs(sv), scene.abs_floor);
                    rep.gamma_worst_ratio = std::max(rep.gamma_worst_ratio, err / tol);
                    rep.gamma_max_abs_err = std::max(rep.gamma_max_abs_err, err);
                }
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                double sv = sym_rho.at(i, j).eval(x, scene.params);
                double err = std::fabs(num_rho[i][j] - sv);
                double tol = std::max(scene.rel_tol * std::fabs(sv), scene.abs_floor);
                rep.ricci_worst_ratio = std::max(rep.ricci_worst_ratio, err / tol);
                rep.ricci_max_abs_err = std::max(rep.ricci_max_abs_err, err);
            }
    }
    rep.pass = rep.gamma_worst_ratio <= 1.0 && rep.ricci_worst_ratio <= 1.0;
    return rep;
}

// max-abs FD error of Gamma and Ricci against the symbolic values at a given
// step; used to measure the convergence order of the stencil
inline std::pair<double, double> oracle_fd_error(const NumericScene& scene, double h) {
    NumericScene s = scene;
    s.h = h;
    const SpaceModel& m = s.model;
    int n = m.dim();
    Connection sym_gamma = christoffel(m);
    SymTensor sym_rho = ricci(m);
    double eg = 0, er = 0;
    for (const auto& x : s.points) {
        fd::D3 num_gamma = fd::christoffel_at(s, x, h);
        fd::DMat num_rho = fd::ricci_at(s, x, h);
        for (int k = 0; k < n; ++k)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    eg = std::max(eg, std::fabs(num_gamma[k][i][j] -
                                                sym_gamma.at(k, i, j).eval(x, s.params)));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                er = std::max(er, std::fabs(num_rho[i][j] - sym_rho.at(i, j).eval(x, s.params)));
    }
    return {eg, er};
}

} // namespace solitonforge
