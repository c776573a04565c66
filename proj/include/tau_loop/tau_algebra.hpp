#pragma once

#include <compare>
#include <map>
#include <string>

#include "tau_loop/comm_algebra.hpp"
#include "tau_loop/lie_data.hpp"

namespace tauloop {

enum class SymbolKind : int { Current = 0, Vir = 1, Central = 2 };

// One basis symbol of the loop algebra: a current x otimes t^m tensored with an
// A-basis element, a Virasoro generator L_n tensored likewise, or the central
// element K tensored likewise. The quotient identifying the two central
// elements of the unlooped algebra means there is exactly one central symbol.
struct TauSymbol {
    SymbolKind kind = SymbolKind::Central;
    Sl2Basis g = Sl2Basis::H;  // meaningful for Current only
    int t_pow = 0;             // Current: exponent of t; Vir: the index n
    int a_index = 0;

    static TauSymbol current(Sl2Basis g, int t_pow, int a_index = 0) {
        return {SymbolKind::Current, g, t_pow, a_index};
    }
    static TauSymbol vir(int n, int a_index = 0) {
        return {SymbolKind::Vir, Sl2Basis::H, n, a_index};
    }
    static TauSymbol central(int a_index = 0) {
        return {SymbolKind::Central, Sl2Basis::H, 0, a_index};
    }

    auto operator<=>(const TauSymbol&) const = default;
};

// Row weight-offset bookkeeping: a symbol moves a vector of weight
// psi - p*alpha - q*delta by (dp, dq). Positive q is the lowering direction.
struct BiDegree {
    int p = 0;
    int q = 0;
    auto operator<=>(const BiDegree&) const = default;
    BiDegree operator+(const BiDegree& o) const { return {p + o.p, q + o.q}; }
};

inline BiDegree bidegree(const TauSymbol& s) {
    switch (s.kind) {
        case SymbolKind::Central: return {0, 0};
        case SymbolKind::Vir: return {0, -s.t_pow};
        case SymbolKind::Current: {
            int dp = s.g == Sl2Basis::Y ? 1 : (s.g == Sl2Basis::X ? -1 : 0);
            return {dp, -s.t_pow};
        }
    }
    return {0, 0};
}

enum class TriPart { minus, zero, plus };

inline TriPart triangular_part(const TauSymbol& s) {
    switch (s.kind) {
        case SymbolKind::Central: return TriPart::zero;
        case SymbolKind::Vir:
            if (s.t_pow > 0) return TriPart::plus;
            if (s.t_pow < 0) return TriPart::minus;
            return TriPart::zero;
        case SymbolKind::Current:
            if (s.t_pow > 0) return TriPart::plus;
            if (s.t_pow < 0) return TriPart::minus;
            if (s.g == Sl2Basis::X) return TriPart::plus;
            if (s.g == Sl2Basis::Y) return TriPart::minus;
            return TriPart::zero;
    }
    return TriPart::zero;
}

inline std::string symbol_str(const TauSymbol& s, const SimpleLieData& g = SimpleLieData{}) {
    std::string a = "a" + std::to_string(s.a_index);
    switch (s.kind) {
        case SymbolKind::Central: return "K(" + a + ")";
        case SymbolKind::Vir: return "L_" + std::to_string(s.t_pow) + "(" + a + ")";
        case SymbolKind::Current:
            return g.names[static_cast<int>(s.g)] + "(t^" + std::to_string(s.t_pow) +
                   ";" + a + ")";
    }
    return "?";
}

// Finite rational linear combination of symbols over a fixed coefficient
// algebra. Zero coefficients are never stored.
struct TauElement {
    int a_dim = 1;
    std::map<TauSymbol, Scalar> terms;

    explicit TauElement(int a_dim = 1) : a_dim(a_dim) {}

    static TauElement single(int a_dim, const TauSymbol& s, Scalar c = Scalar(1)) {
        TauElement e(a_dim);
        e.add(s, std::move(c));
        return e;
    }

    bool is_zero() const { return terms.empty(); }

    void add(const TauSymbol& s, const Scalar& c) {
        if (c == 0) return;
        if (s.a_index < 0 || s.a_index >= a_dim) throw IndexOutOfRange("coefficient index");
        auto [it, fresh] = terms.try_emplace(s, c);
        if (!fresh) {
            it->second += c;
            if (it->second == 0) terms.erase(it);
        }
    }

    void axpy(const Scalar& c, const TauElement& other) {
        if (other.a_dim != a_dim) throw AlgebraMismatch("elements over different algebras");
        for (const auto& [s, v] : other.terms) add(s, c * v);
    }

    Scalar coeff(const TauSymbol& s) const {
        auto it = terms.find(s);
        return it == terms.end() ? Scalar(0) : it->second;
    }

    bool operator==(const TauElement& other) const {
        return a_dim == other.a_dim && terms == other.terms;
    }
};

inline std::string element_str(const TauElement& e, const SimpleLieData& g = SimpleLieData{}) {
    if (e.is_zero()) return "0";
    std::string out;
    for (const auto& [s, c] : e.terms) {
        if (!out.empty()) out += " + ";
        out += scalar_str(c) + "*" + symbol_str(s, g);
    }
    return out;
}

// Which exponent feeds the current-current central term. The standard affine
// cocycle uses the first factor's exponent; the variant uses the second. Both
// are Lie brackets (the central charge flips sign), but only the standard one
// keeps the quadratic operator of the central-operator layer central, so that
// is the default and the variant stays available for comparison.
enum class Cocycle { standard_first_exponent, second_exponent };

// tau(A): currents, Virasoro generators and the central element, all looped by
// a commutative coefficient algebra A. Pure structure constants; immutable.
struct LoopAlgebra {
    SimpleLieData lie;
    CommAlgebra coeffs;
    Cocycle cocycle = Cocycle::standard_first_exponent;

    LoopAlgebra(CommAlgebra a, Cocycle c = Cocycle::standard_first_exponent)
        : coeffs(std::move(a)), cocycle(c) {}

    TauElement zero() const { return TauElement(coeffs.dim); }

    TauElement single(const TauSymbol& s, Scalar c = Scalar(1)) const {
        return TauElement::single(coeffs.dim, s, std::move(c));
    }

    // [s1, s2] with the A-factors multiplied out over the basis.
    TauElement bracket_symbols(const TauSymbol& s1, const TauSymbol& s2) const {
        TauElement out = zero();
        if (s1.kind == SymbolKind::Central || s2.kind == SymbolKind::Central) return out;
        SparseVec ab = coeffs.multiply_basis(s1.a_index, s2.a_index);

        auto emit = [&](SymbolKind kind, Sl2Basis g, int t_pow, const Scalar& c) {
            if (c == 0) return;
            for (const auto& [k, ck] : ab.entries())
                out.add(TauSymbol{kind, g, t_pow, k}, c * ck);
        };

        if (s1.kind == SymbolKind::Vir && s2.kind == SymbolKind::Vir) {
            int n = s1.t_pow, m = s2.t_pow;
            emit(SymbolKind::Vir, Sl2Basis::H, n + m, Scalar(m - n));
            if (n + m == 0)
                emit(SymbolKind::Central, Sl2Basis::H, 0,
                     Scalar(BigInt(n) * n * n - n, 12));
            return out;
        }
        if (s1.kind == SymbolKind::Vir || s2.kind == SymbolKind::Vir) {
            // [L_n, x otimes t^m] = m * x otimes t^{m+n}
            bool vir_first = s1.kind == SymbolKind::Vir;
            const TauSymbol& lv = vir_first ? s1 : s2;
            const TauSymbol& cv = vir_first ? s2 : s1;
            Scalar c(cv.t_pow);
            if (!vir_first) c = -c;
            emit(SymbolKind::Current, cv.g, cv.t_pow + lv.t_pow, c);
            return out;
        }
        // current-current
        int n = s1.t_pow, m = s2.t_pow;
        SparseVec xy = lie.bracket(static_cast<int>(s1.g), static_cast<int>(s2.g));
        for (const auto& [gi, c] : xy.entries())
            emit(SymbolKind::Current, static_cast<Sl2Basis>(gi), n + m, c);
        if (n + m == 0) {
            Scalar pairing = lie.form(static_cast<int>(s1.g), static_cast<int>(s2.g));
            int exponent = cocycle == Cocycle::standard_first_exponent ? n : m;
            emit(SymbolKind::Central, Sl2Basis::H, 0, pairing * Scalar(exponent));
        }
        return out;
    }

    TauElement bracket(const TauElement& u, const TauElement& v) const {
        if (u.a_dim != coeffs.dim || v.a_dim != coeffs.dim)
            throw AlgebraMismatch("element over a different coefficient algebra");
        TauElement out = zero();
        for (const auto& [s1, c1] : u.terms)
            for (const auto& [s2, c2] : v.terms) out.axpy(c1 * c2, bracket_symbols(s1, s2));
        return out;
    }

    // [s1,[s2,s3]] + [s3,[s1,s2]] + [s2,[s3,s1]]; zero iff Jacobi holds here.
    TauElement jacobi_probe(const TauSymbol& s1, const TauSymbol& s2,
                            const TauSymbol& s3) const {
        TauElement out = bracket(single(s1), bracket_symbols(s2, s3));
        out.axpy(Scalar(1), bracket(single(s3), bracket_symbols(s1, s2)));
        out.axpy(Scalar(1), bracket(single(s2), bracket_symbols(s3, s1)));
        return out;
    }
};

} // namespace tauloop
