#pragma once

#include <array>
#include <string>
#include <vector>

#include "tau_loop/sparse.hpp"

namespace tauloop {

// Basis order of sl2; everything downstream depends on this enumeration.
enum class Sl2Basis : int { X = 0, H = 1, Y = 2 };

// Structure data of the simple part: sl2 with [X,Y] = h, [h,X] = 2X,
// [h,Y] = -2Y and the invariant form (X,Y) = 1, (h,h) = 2. Carried as data so
// a different simple algebra could be slotted in later.
struct SimpleLieData {
    int dim = 3;
    std::array<std::string, 3> names{"X", "h", "Y"};

    // bracket_table[i][j] = coordinates of [e_i, e_j]
    std::array<std::array<std::array<int, 3>, 3>, 3> bracket_table{{
        // [X, -]:      X        h        Y
        {{{0, 0, 0}, {-2, 0, 0}, {0, 1, 0}}},
        // [h, -]
        {{{2, 0, 0}, {0, 0, 0}, {0, 0, -2}}},
        // [Y, -]
        {{{0, -1, 0}, {0, 0, 2}, {0, 0, 0}}},
    }};

    // invariant symmetric form on the basis
    std::array<std::array<int, 3>, 3> form_table{{
        {0, 0, 1},
        {0, 2, 0},
        {1, 0, 0},
    }};

    // dual bases of the Cartan with respect to the form: {h} and {h/2}
    std::vector<SparseVec> cartan_basis{SparseVec::unit(3, 1)};
    std::vector<SparseVec> cartan_dual_basis{SparseVec::unit(3, 1, Scalar(1, 2))};

    // half the sum of positive roots, evaluated on h; its form-dual is h/2
    Scalar rho_bar_of_h = Scalar(1);
    SparseVec gamma_inv_rho_bar = SparseVec::unit(3, 1, Scalar(1, 2));

    Scalar dual_coxeter = Scalar(2);

    // finite root system: for each root b, the vectors x_b and x_{-b},
    // normalized so (x_b, x_{-b}) = 1; listed positive root first
    struct RootVectorPair {
        Sl2Basis x_plus;
        Sl2Basis x_minus;
    };
    std::vector<RootVectorPair> roots{{Sl2Basis::X, Sl2Basis::Y},
                                      {Sl2Basis::Y, Sl2Basis::X}};
    // the affine simple root attached at zero is -(highest root) + delta;
    // recorded for completeness, no implemented formula consumes it
    std::string alpha0 = "-alpha+delta";

    SparseVec bracket(int i, int j) const {
        SparseVec out(3);
        for (int k = 0; k < 3; ++k)
            if (bracket_table[i][j][k] != 0) out.set(k, Scalar(bracket_table[i][j][k]));
        return out;
    }

    SparseVec bracket(const SparseVec& a, const SparseVec& b) const {
        SparseVec out(3);
        for (const auto& [i, ci] : a.entries())
            for (const auto& [j, cj] : b.entries()) out.axpy(ci * cj, bracket(i, j));
        return out;
    }

    Scalar form(int i, int j) const { return Scalar(form_table[i][j]); }

    Scalar form(const SparseVec& a, const SparseVec& b) const {
        Scalar out(0);
        for (const auto& [i, ci] : a.entries())
            for (const auto& [j, cj] : b.entries()) out += ci * cj * form(i, j);
        return out;
    }
};

// Structural sanity of the tables; returned problems are test fodder.
inline std::vector<std::string> validate_lie(const SimpleLieData& g) {
    std::vector<std::string> problems;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            SparseVec anti = g.bracket(i, j);
            anti.axpy(Scalar(1), g.bracket(j, i));
            if (!anti.is_zero()) problems.push_back("antisymmetry fails");
            if (g.form(i, j) != g.form(j, i)) problems.push_back("form not symmetric");
        }
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) {
                // Jacobi
                SparseVec s = g.bracket(g.bracket(i, j), SparseVec::unit(3, k));
                s.axpy(Scalar(1), g.bracket(g.bracket(j, k), SparseVec::unit(3, i)));
                s.axpy(Scalar(1), g.bracket(g.bracket(k, i), SparseVec::unit(3, j)));
                if (!s.is_zero()) problems.push_back("jacobi fails");
                // invariance ([a,b],c) + (b,[a,c]) = 0
                Scalar inv = g.form(g.bracket(i, j), SparseVec::unit(3, k)) +
                             g.form(SparseVec::unit(3, j), g.bracket(i, k));
                if (inv != 0) problems.push_back("form not invariant");
            }
    // (h_i, h^j) = delta_ij
    for (std::size_t i = 0; i < g.cartan_basis.size(); ++i)
        for (std::size_t j = 0; j < g.cartan_dual_basis.size(); ++j)
            if (g.form(g.cartan_basis[i], g.cartan_dual_basis[j]) != Scalar(i == j ? 1 : 0))
                problems.push_back("cartan dual bases not dual");
    // [x_b, x_{-b}] is the form-dual of b; for the positive root that is h
    for (const auto& pair : g.roots) {
        if (g.form(static_cast<int>(pair.x_plus), static_cast<int>(pair.x_minus)) != 1)
            problems.push_back("root vectors not normalized");
    }
    SparseVec xy = g.bracket(static_cast<int>(Sl2Basis::X), static_cast<int>(Sl2Basis::Y));
    if (!(xy == SparseVec::unit(3, 1))) problems.push_back("[X,Y] != h");
    return problems;
}

} // namespace tauloop
