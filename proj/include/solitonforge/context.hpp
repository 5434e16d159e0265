// Coordinate/parameter context shared by every expression of a model.
//
// A context lists the coordinate names (x_1..x_n) and the parameter symbols
// of the coefficient field. Parameters may carry a declared constraint:
//   nonzero -- the symbol may be inverted and must not be pinned to 0;
//   pm1     -- the symbol squares to 1 (exponents are reduced mod 2).
// Contexts are immutable and shared by shared_ptr; all expression operations
// require operands over equal contexts.
#pragma once

#include <algorithm>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "solitonforge/errors.hpp"

namespace solitonforge {

enum class ParamKind { free_real, nonzero, pm1 };

class Context {
  public:
    Context(std::vector<std::string> coords, std::vector<std::string> params,
            std::vector<ParamKind> kinds)
        : coords_(std::move(coords)), params_(std::move(params)), kinds_(std::move(kinds)) {
        if (kinds_.size() != params_.size())
            throw InternalError("context: one kind per parameter required");
        check_names();
    }

    Context(std::vector<std::string> coords, std::vector<std::string> params)
        : Context(std::move(coords), std::move(params),
                  std::vector<ParamKind>(params.size(), ParamKind::free_real)) {}

    int dim() const { return static_cast<int>(coords_.size()); }
    int nparams() const { return static_cast<int>(params_.size()); }

    const std::vector<std::string>& coords() const { return coords_; }
    const std::vector<std::string>& params() const { return params_; }

    const std::string& coord_name(int i) const { return coords_.at(i); }
    const std::string& param_name(int i) const { return params_.at(i); }
    ParamKind param_kind(int i) const { return kinds_.at(i); }
    bool param_is_pm1(int i) const { return kinds_.at(i) == ParamKind::pm1; }

    std::optional<int> find_coord(const std::string& name) const { return find(coords_, name); }
    std::optional<int> find_param(const std::string& name) const { return find(params_, name); }

    bool operator==(const Context& o) const {
        return coords_ == o.coords_ && params_ == o.params_ && kinds_ == o.kinds_;
    }
    bool operator!=(const Context& o) const { return !(*this == o); }

  private:
    static std::optional<int> find(const std::vector<std::string>& v, const std::string& name) {
        auto it = std::find(v.begin(), v.end(), name);
        if (it == v.end()) return std::nullopt;
        return static_cast<int>(it - v.begin());
    }

    void check_names() const {
        for (size_t i = 0; i < coords_.size(); ++i)
            for (size_t j = i + 1; j < coords_.size(); ++j)
                if (coords_[i] == coords_[j])
                    throw InputError("duplicate coordinate name: " + coords_[i]);
        for (size_t i = 0; i < params_.size(); ++i)
            for (size_t j = i + 1; j < params_.size(); ++j)
                if (params_[i] == params_[j])
                    throw InputError("duplicate parameter name: " + params_[i]);
        for (const auto& c : coords_)
            for (const auto& p : params_)
                if (c == p)
                    throw InputError("name used both as coordinate and parameter: " + c);
    }

    std::vector<std::string> coords_;
    std::vector<std::string> params_;
    std::vector<ParamKind> kinds_;
};

using CtxPtr = std::shared_ptr<const Context>;

inline CtxPtr make_context(std::vector<std::string> coords, std::vector<std::string> params,
                           std::vector<ParamKind> kinds) {
    return std::make_shared<const Context>(std::move(coords), std::move(params), std::move(kinds));
}

inline CtxPtr make_context(std::vector<std::string> coords, std::vector<std::string> params = {}) {
    return std::make_shared<const Context>(std::move(coords), std::move(params));
}

inline bool same_context(const CtxPtr& a, const CtxPtr& b) {
    return a == b || (a && b && *a == *b);
}

inline void require_same_context(const CtxPtr& a, const CtxPtr& b, const char* op) {
    if (!same_context(a, b))
        throw ContextError(std::string("context mismatch in ") + op);
}

// Context with extra parameter symbols appended (used to treat unknowns or
// free constants symbolically).
inline CtxPtr extend_params(const CtxPtr& ctx, const std::vector<std::string>& extra,
                            ParamKind kind = ParamKind::free_real) {
    std::vector<std::string> params = ctx->params();
    std::vector<ParamKind> kinds;
    kinds.reserve(params.size() + extra.size());
    for (int i = 0; i < ctx->nparams(); ++i) kinds.push_back(ctx->param_kind(i));
    for (const auto& name : extra) {
        params.push_back(name);
        kinds.push_back(kind);
    }
    return make_context(ctx->coords(), std::move(params), std::move(kinds));
}

} // namespace solitonforge
