// SpaceModel: a coordinate chart R^n with a symmetric metric of
// exp-polynomials. ModelDocument adds the named vector fields and scalars
// a model file may carry.
#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "solitonforge/tensor.hpp"

namespace solitonforge {

class SpaceModel {
  public:
    SpaceModel() = default;
    SpaceModel(CtxPtr ctx, ExpMatrix g) : ctx_(std::move(ctx)), g_(std::move(g)) {
        if (g_.size() != ctx_->dim())
            throw InternalError("metric size != dimension");
        if (!g_.is_symmetric()) throw InternalError("metric must be symmetric");
    }

    const CtxPtr& ctx() const { return ctx_; }
    int dim() const { return ctx_->dim(); }
    const ExpMatrix& metric() const { return g_; }

    // model with a parameter substituted by an exact rational value
    SpaceModel pin_param(const std::string& name, const Rat& value) const {
        auto idx = ctx_->find_param(name);
        if (!idx) throw InputError("unknown parameter: " + name);
        if (ctx_->param_kind(*idx) == ParamKind::nonzero && value.is_zero())
            throw InputError("parameter " + name + " is declared nonzero; cannot pin to 0");
        if (ctx_->param_kind(*idx) == ParamKind::pm1 && value != 1 && value != -1)
            throw InputError("parameter " + name + " is declared pm1; only +1/-1 allowed");
        ExpMatrix g(ctx_, dim());
        for (int i = 0; i < dim(); ++i)
            for (int j = 0; j < dim(); ++j) g.at(i, j) = g_.at(i, j).subst_param(*idx, value);
        return SpaceModel(ctx_, std::move(g));
    }

  private:
    CtxPtr ctx_;
    ExpMatrix g_;
};

struct ModelDocument {
    SpaceModel model;
    std::vector<std::pair<std::string, VectorField>> fields;
    std::vector<std::pair<std::string, ExpPoly>> scalars;

    std::optional<VectorField> find_field(const std::string& name) const {
        for (const auto& [n, f] : fields)
            if (n == name) return f;
        return std::nullopt;
    }

    std::optional<ExpPoly> find_scalar(const std::string& name) const {
        for (const auto& [n, s] : scalars)
            if (n == name) return s;
        return std::nullopt;
    }
};

} // namespace solitonforge
