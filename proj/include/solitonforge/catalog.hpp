// Built-in space models and their known soliton solutions.
//
// Every entry is stored as model-file text (the same text shipped under
// models/), so the constructors and the files cannot drift apart. Known
// solutions are verified symbolically the first time an entry is fetched.
#pragma once

#include <array>
#include <mutex>
#include <set>
#include <string>
#include <vector>

#include "solitonforge/parser.hpp"
#include "solitonforge/soliton.hpp"

namespace solitonforge {

struct CatalogEntry {
    std::string id;
    ModelDocument doc;
    std::string solution_field;  // name of the shipped soliton field, "" if none
    std::string solution_scalar; // name of the shipped lambda scalar
    std::string notes;           // provenance / signature remarks

    const SpaceModel& model() const { return doc.model; }

    bool has_known_solution() const { return !solution_field.empty(); }

    std::pair<VectorField, ParamScalar> known_solution() const {
        if (!has_known_solution())
            throw UnknownEntry("catalog entry " + id + " ships no solution");
        auto X = doc.find_field(solution_field);
        auto lam = doc.find_scalar(solution_scalar);
        if (!X || !lam) throw InternalError("catalog entry " + id + " is inconsistent");
        if (!lam->is_zero() && !(lam->terms().size() == 1 && lam->terms()[0].key.is_unit()))
            throw InternalError("catalog lambda must be coordinate-free");
        ParamScalar l = lam->is_zero() ? ParamScalar::zero(doc.model.ctx())
                                       : lam->terms()[0].coeff;
        return {*X, l};
    }
};

namespace catalog_text {

// R^3 family: metric eps(e^{2t} dx^2 + e^{-2t} dy^2) + mu dt^2, realizing
// every signature depending on eps and mu. The shipped field solves the
// soliton equation with lambda = -2/mu for arbitrary constants A1..A3.
inline constexpr const char* gs3d = R"(# 3D homogeneous family (order-4 symmetries), any signature
dim 3
coords x y t
params eps:pm1 mu:nonzero A1 A2 A3
metric {
  g[1][1] = eps*exp(2*t);
  g[2][2] = eps*exp(-2*t);
  g[3][3] = mu;
}
vectorfield X3D {
  X[1] = A1 - (A3 + 1/mu)*x;
  X[2] = A2 + (A3 - 1/mu)*y;
  X[3] = A3;
}
scalar lambda3d = -2/mu;
)";

// R^4 type-B family, neutral signature (2,2). Line element
//   mu(dx^2 + dy^2 + dx dy) + e^{-y}(2dx + dy)dv + e^{-x}(dx + 2dy)du
// written as matrix entries; each cross term f dA dB contributes f/2 to
// g[A][B]. The shipped field solves the equation with lambda = -4/(3 mu)
// for arbitrary constants W1..W3 (needs mu != 0; mu itself may be pinned).
inline constexpr const char* typeB = R"(# 4D type-B family (order-3 symmetries), signature (2,2)
dim 4
coords x y u v
params mu W1 W2 W3
metric {
  g[1][1] = mu;
  g[1][2] = mu/2;
  g[2][2] = mu;
  g[1][3] = exp(-x)/2;
  g[2][3] = exp(-x);
  g[1][4] = exp(-y);
  g[2][4] = exp(-y)/2;
}
vectorfield X4D {
  X[1] = (-W1 + 2*W2)/3;
  X[2] = (2*W1 - W2)/3;
  X[3] = ((-W1 + 2*W2)/3 - 4/(3*mu))*u;
  X[4] = ((2*W1 - W2)/3 - 4/(3*mu))*v + W3;
}
scalar lambda4d = -4/(3*mu);
)";

inline constexpr const char* flat3 = R"(# flat R^3
dim 3
coords x y z
metric {
  g[1][1] = 1;
  g[2][2] = 1;
  g[3][3] = 1;
}
vectorfield Zero {
}
scalar lambda0 = 0;
)";

inline constexpr const char* flat4 = R"(# flat R^4
dim 4
coords x y z w
metric {
  g[1][1] = 1;
  g[2][2] = 1;
  g[3][3] = 1;
  g[4][4] = 1;
}
vectorfield Zero {
}
scalar lambda0 = 0;
)";

} // namespace catalog_text

inline std::vector<std::string> catalog_ids() { return {"gs3d", "typeB", "flat3", "flat4"}; }

inline const char* catalog_source(const std::string& id) {
    if (id == "gs3d") return catalog_text::gs3d;
    if (id == "typeB") return catalog_text::typeB;
    if (id == "flat3") return catalog_text::flat3;
    if (id == "flat4") return catalog_text::flat4;
    throw UnknownEntry("unknown catalog entry: " + id +
                       " (known: gs3d, typeB, flat3, flat4)");
}

inline CatalogEntry catalog_get(const std::string& id) {
    CatalogEntry e;
    e.id = id;
    e.doc = parse_model(catalog_source(id));
    if (id == "gs3d") {
        e.solution_field = "X3D";
        e.solution_scalar = "lambda3d";
        e.notes = "signatures (3,0),(0,3),(2,1),(1,2) depending on eps, mu";
    } else if (id == "typeB") {
        e.solution_field = "X4D";
        e.solution_scalar = "lambda4d";
        e.notes = "neutral signature (2,2); solution family needs mu != 0";
    } else {
        e.solution_field = "Zero";
        e.solution_scalar = "lambda0";
        e.notes = "flat space";
    }

    // shipped solutions must verify; run once per process per entry
    static std::mutex mu;
    static std::set<std::string> checked;
    {
        std::lock_guard<std::mutex> lock(mu);
        if (!checked.count(id)) {
            auto [X, lam] = e.known_solution();
            if (!verify(e.model(), X, lam).ok)
                throw InternalError("catalog self-test failed for " + id);
            checked.insert(id);
        }
    }
    return e;
}

} // namespace solitonforge
