#pragma once

#include <vector>

#include "tau_loop/comm_algebra.hpp"
#include "tau_loop/tau_algebra.hpp"

namespace tauloop {

// Highest-weight functional on the zero part: values on h(a_k), K(a_k) and
// L_0(a_k) for each basis element a_k of the coefficient algebra.
struct PsiFunctional {
    std::vector<Scalar> h, K, L0;

    PsiFunctional() = default;
    PsiFunctional(std::vector<Scalar> h_vals, std::vector<Scalar> k_vals,
                  std::vector<Scalar> l0_vals)
        : h(std::move(h_vals)), K(std::move(k_vals)), L0(std::move(l0_vals)) {
        if (h.size() != K.size() || h.size() != L0.size() || h.empty())
            throw BadParams("functional rows must share one positive length");
    }

    // over a one-dimensional coefficient algebra
    static PsiFunctional scalar(Scalar lambda, Scalar level, Scalar d0) {
        return PsiFunctional({std::move(lambda)}, {std::move(level)}, {std::move(d0)});
    }

    int a_dim() const { return static_cast<int>(h.size()); }

    Scalar on_h(const SparseVec& a) const { return eval(h, a); }
    Scalar on_K(const SparseVec& a) const { return eval(K, a); }
    Scalar on_L0(const SparseVec& a) const { return eval(L0, a); }

    // the three scalars of the top line: lambda, the level, and the L_0 value
    Scalar lambda(const CommAlgebra& alg) const { return on_h(alg.unit); }
    Scalar level(const CommAlgebra& alg) const { return on_K(alg.unit); }
    Scalar d0(const CommAlgebra& alg) const { return on_L0(alg.unit); }

    // value on a zero-part symbol; anything else is a caller bug
    Scalar of_symbol(const TauSymbol& s) const {
        if (s.a_index < 0 || s.a_index >= a_dim())
            throw IndexOutOfRange("functional index");
        switch (s.kind) {
            case SymbolKind::Central: return K[s.a_index];
            case SymbolKind::Vir:
                if (s.t_pow == 0) return L0[s.a_index];
                break;
            case SymbolKind::Current:
                if (s.t_pow == 0 && s.g == Sl2Basis::H) return h[s.a_index];
                break;
        }
        throw Error("functional applied to a non-diagonal symbol");
    }

private:
    Scalar eval(const std::vector<Scalar>& row, const SparseVec& a) const {
        if (a.dim() != a_dim()) throw AlgebraMismatch("functional over a different algebra");
        Scalar out(0);
        for (const auto& [k, c] : a.entries()) out += c * row[k];
        return out;
    }
};

} // namespace tauloop
