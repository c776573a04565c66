#pragma once

#include <map>
#include <string>
#include <vector>

#include "tau_loop/sparse.hpp"

namespace tauloop {

// Finite-dimensional commutative associative unital algebra over the
// rationals, given by a structure tensor on a fixed basis.
struct CommAlgebra {
    int dim = 0;
    std::string name;                          // "scalar", "jet(3)", ... or "inline"
    std::vector<std::string> labels;           // display names of the basis
    SparseVec unit;                            // coordinates of 1
    std::vector<std::vector<SparseVec>> mult;  // mult[i][j] = a_i * a_j

    SparseVec multiply_basis(int i, int j) const {
        if (i < 0 || i >= dim || j < 0 || j >= dim) throw IndexOutOfRange("basis index");
        return mult[i][j];
    }

    SparseVec multiply(const SparseVec& x, const SparseVec& y) const {
        if (x.dim() != dim || y.dim() != dim) throw AmbientMismatch("product in wrong algebra");
        SparseVec out(dim);
        for (const auto& [i, xi] : x.entries())
            for (const auto& [j, yj] : y.entries())
                out.axpy(xi * yj, mult[i][j]);
        return out;
    }

    SparseVec power(SparseVec x, int n) const {
        SparseVec out = unit;
        for (int k = 0; k < n; ++k) out = multiply(out, x);
        return out;
    }

    bool operator==(const CommAlgebra& other) const {
        return dim == other.dim && unit == other.unit && mult == other.mult;
    }
};

struct AlgebraValidation {
    bool ok = true;
    int checked_triples = 0;
    std::vector<std::string> problems;
};

inline AlgebraValidation validate(const CommAlgebra& a) {
    AlgebraValidation rep;
    auto complain = [&](const std::string& msg) {
        rep.ok = false;
        rep.problems.push_back(msg);
    };
    if (a.dim <= 0) complain("dimension must be positive");
    if (a.unit.dim() != a.dim) complain("unit has wrong dimension");
    if (static_cast<int>(a.mult.size()) != a.dim) complain("structure tensor has wrong shape");
    for (const auto& row : a.mult)
        if (static_cast<int>(row.size()) != a.dim) complain("structure tensor has wrong shape");
    if (!rep.ok) return rep;

    for (int i = 0; i < a.dim; ++i)
        for (int j = 0; j < a.dim; ++j)
            if (!(a.mult[i][j] == a.mult[j][i]))
                complain("commutativity fails at (" + std::to_string(i) + "," + std::to_string(j) + ")");
    for (int i = 0; i < a.dim; ++i) {
        SparseVec e = SparseVec::unit(a.dim, i);
        if (!(a.multiply(a.unit, e) == e))
            complain("unit law fails at basis " + std::to_string(i));
    }
    for (int i = 0; i < a.dim; ++i)
        for (int j = 0; j < a.dim; ++j)
            for (int k = 0; k < a.dim; ++k) {
                ++rep.checked_triples;
                SparseVec left = a.multiply(a.mult[i][j], SparseVec::unit(a.dim, k));
                SparseVec right = a.multiply(SparseVec::unit(a.dim, i), a.mult[j][k]);
                if (!(left == right))
                    complain("associativity fails at (" + std::to_string(i) + "," +
                             std::to_string(j) + "," + std::to_string(k) + ")");
            }
    return rep;
}

// ---- presets ------------------------------------------------------------

namespace detail {

// Q[t]/(f), f monic of degree >= 1 given by ascending coefficients.
inline CommAlgebra poly_quotient(std::vector<Scalar> f, const std::string& name) {
    int deg = static_cast<int>(f.size()) - 1;
    while (deg > 0 && f[deg] == 0) --deg;
    if (deg < 1) throw BadParams("modulus must have degree >= 1");
    f.resize(deg + 1);
    if (f[deg] != 1) {
        Scalar lead = f[deg];
        for (auto& c : f) c /= lead;
    }
    CommAlgebra a;
    a.dim = deg;
    a.name = name;
    a.unit = SparseVec::unit(deg, 0);
    a.labels.resize(deg);
    for (int i = 0; i < deg; ++i)
        a.labels[i] = i == 0 ? "1" : (i == 1 ? "t" : "t^" + std::to_string(i));
    // t^deg = -(f_0 + f_1 t + ... + f_{deg-1} t^{deg-1})
    SparseVec top(deg);
    for (int i = 0; i < deg; ++i) top.set(i, -f[i]);
    std::vector<SparseVec> powers;  // t^0 .. t^{2 deg - 2} reduced
    for (int i = 0; i < deg; ++i) powers.push_back(SparseVec::unit(deg, i));
    for (int n = deg; n <= 2 * deg - 2; ++n) {
        // t^n = t * t^{n-1}
        SparseVec prev = powers.back();
        SparseVec next(deg);
        for (const auto& [i, c] : prev.entries()) {
            if (i + 1 < deg) next.add(i + 1, c);
            else next.axpy(c, top);
        }
        powers.push_back(std::move(next));
    }
    a.mult.assign(deg, std::vector<SparseVec>(deg, SparseVec(deg)));
    for (int i = 0; i < deg; ++i)
        for (int j = 0; j < deg; ++j) a.mult[i][j] = powers[i + j];
    return a;
}

} // namespace detail

// Q[t]/(f) for any f of degree >= 1 (normalized monic); t need not be a unit.
inline CommAlgebra poly_mod_algebra(const std::vector<Scalar>& f, std::string name = "poly_mod") {
    return detail::poly_quotient(f, std::move(name));
}

inline CommAlgebra scalar_algebra() {
    CommAlgebra a;
    a.dim = 1;
    a.name = "scalar";
    a.labels = {"1"};
    a.unit = SparseVec::unit(1, 0);
    a.mult = {{a.unit}};
    return a;
}

// Q[t]/(t^N): truncated polynomials, t nilpotent.
inline CommAlgebra jet_algebra(int n) {
    if (n < 1) throw BadParams("jet order must be >= 1");
    CommAlgebra a;
    a.dim = n;
    a.name = "jet(" + std::to_string(n) + ")";
    a.unit = SparseVec::unit(n, 0);
    a.labels.resize(n);
    for (int i = 0; i < n; ++i)
        a.labels[i] = i == 0 ? "1" : (i == 1 ? "t" : "t^" + std::to_string(i));
    a.mult.assign(n, std::vector<SparseVec>(n, SparseVec(n)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i + j < n) a.mult[i][j] = SparseVec::unit(n, i + j);
    return a;
}

// Laurent polynomials modulo a monic p with p(0) != 0 (t stays invertible).
inline CommAlgebra laurent_mod_algebra(const std::vector<Scalar>& p, std::string name = "") {
    if (p.empty() || p[0] == 0) throw BadParams("laurent modulus needs p(0) != 0");
    if (name.empty()) name = "laurent_mod";
    return detail::poly_quotient(p, name);
}

// Functions on a finite set of distinct nonzero rational points, presented as
// Q[t, t^-1]/(prod (t - z_i)) on the power basis.
inline CommAlgebra points_algebra(const std::vector<Scalar>& zs) {
    if (zs.empty()) throw BadParams("points preset needs at least one point");
    std::string name = "points(";
    for (std::size_t i = 0; i < zs.size(); ++i) {
        if (zs[i] == 0) throw BadParams("points must be nonzero");
        for (std::size_t j = 0; j < i; ++j)
            if (zs[i] == zs[j]) throw BadParams("points must be distinct");
        name += (i ? "," : "") + scalar_str(zs[i]);
    }
    name += ")";
    std::vector<Scalar> poly = {Scalar(1)};  // prod (t - z_i), ascending
    for (const Scalar& z : zs) {
        std::vector<Scalar> next(poly.size() + 1, Scalar(0));
        for (std::size_t i = 0; i < poly.size(); ++i) {
            next[i + 1] += poly[i];
            next[i] -= z * poly[i];
        }
        poly = std::move(next);
    }
    return laurent_mod_algebra(poly, name);
}

// ---- ideals -------------------------------------------------------------

struct IdealBasis {
    CommAlgebra ambient;
    SubspaceBasis space;

    int rank() const { return space.rank(); }
};

inline IdealBasis zero_ideal(const CommAlgebra& a) {
    return IdealBasis{a, SubspaceBasis(a.dim)};
}

// Span must already be multiplication-closed; verified, not assumed.
inline IdealBasis ideal_from_span(const CommAlgebra& a, const std::vector<SparseVec>& span) {
    SubspaceBasis basis = echelonize(span, a.dim);
    for (const auto& row : basis.rows())
        for (int i = 0; i < a.dim; ++i) {
            SparseVec prod = a.multiply(row, SparseVec::unit(a.dim, i));
            if (!basis.contains(prod))
                throw NotAnIdeal("span is not closed under multiplication");
        }
    return IdealBasis{a, std::move(basis)};
}

inline IdealBasis ideal_from_generators(const CommAlgebra& a, const std::vector<SparseVec>& gens) {
    std::vector<SparseVec> span;
    for (const auto& g : gens) {
        if (g.dim() != a.dim) throw AmbientMismatch("generator in wrong algebra");
        span.push_back(g);
        for (int i = 0; i < a.dim; ++i)
            span.push_back(a.multiply(g, SparseVec::unit(a.dim, i)));
    }
    return IdealBasis{a, echelonize(span, a.dim)};
}

inline IdealBasis ideal_product(const IdealBasis& x, const IdealBasis& y) {
    if (!(x.ambient == y.ambient)) throw AmbientMismatch("ideal product across algebras");
    std::vector<SparseVec> span;
    for (const auto& r : x.space.rows())
        for (const auto& s : y.space.rows()) span.push_back(x.ambient.multiply(r, s));
    return IdealBasis{x.ambient, echelonize(span, x.ambient.dim)};
}

// ---- quotient -----------------------------------------------------------

// A/I presented on the standard-coordinate complement of I's pivot columns.
struct QuotientAlgebra {
    CommAlgebra algebra;
    IdealBasis ideal;                 // the divisor, echelonized
    std::vector<int> complement;      // ambient columns carrying the quotient basis

    SparseVec project(const SparseVec& v) const {
        SparseVec reduced = ideal.space.reduce(v);
        SparseVec out(algebra.dim);
        for (int k = 0; k < algebra.dim; ++k) out.set(k, reduced.get(complement[k]));
        return out;
    }

    SparseVec lift(const SparseVec& q) const {
        SparseVec out(ideal.ambient.dim);
        for (const auto& [k, c] : q.entries()) out.set(complement[k], c);
        return out;
    }
};

inline QuotientAlgebra quotient(const CommAlgebra& a, const IdealBasis& ideal) {
    if (!(ideal.ambient == a)) throw AmbientMismatch("ideal from another algebra");
    if (ideal.rank() >= a.dim) throw ImproperIdeal("quotient by the whole algebra");

    QuotientAlgebra q;
    q.ideal = ideal;
    std::vector<bool> is_pivot(a.dim, false);
    for (int p : ideal.space.pivots()) is_pivot[p] = true;
    for (int c = 0; c < a.dim; ++c)
        if (!is_pivot[c]) q.complement.push_back(c);

    int qdim = static_cast<int>(q.complement.size());
    q.algebra.dim = qdim;
    q.algebra.name = a.name + "/I";
    for (int c : q.complement) q.algebra.labels.push_back(a.labels[c]);
    q.algebra.mult.assign(qdim, std::vector<SparseVec>(qdim, SparseVec(qdim)));
    for (int i = 0; i < qdim; ++i)
        for (int j = 0; j < qdim; ++j) {
            SparseVec prod = a.multiply_basis(q.complement[i], q.complement[j]);
            SparseVec reduced = ideal.space.reduce(prod);
            SparseVec out(qdim);
            for (int k = 0; k < qdim; ++k) out.set(k, reduced.get(q.complement[k]));
            q.algebra.mult[i][j] = std::move(out);
        }
    {
        SparseVec reduced = ideal.space.reduce(a.unit);
        SparseVec u(qdim);
        for (int k = 0; k < qdim; ++k) u.set(k, reduced.get(q.complement[k]));
        q.algebra.unit = std::move(u);
    }
    return q;
}

// ---- radical ------------------------------------------------------------

// Nilradical of a finite-dimensional commutative algebra in characteristic
// zero: the kernel of the trace form (x, y) -> Tr(mult by xy).
inline SubspaceBasis nilradical(const CommAlgebra& a) {
    auto trace_of_mult = [&](const SparseVec& x) {
        Scalar tr(0);
        for (int k = 0; k < a.dim; ++k) tr += a.multiply(x, SparseVec::unit(a.dim, k)).get(k);
        return tr;
    };
    std::vector<SparseVec> gram;
    for (int i = 0; i < a.dim; ++i) {
        SparseVec row(a.dim);
        for (int j = 0; j < a.dim; ++j) row.set(j, trace_of_mult(a.multiply_basis(i, j)));
        gram.push_back(std::move(row));
    }
    return kernel(gram, a.dim);
}

inline IdealBasis radical(const CommAlgebra& a, const IdealBasis& ideal) {
    if (!(ideal.ambient == a)) throw AmbientMismatch("ideal from another algebra");
    if (ideal.rank() >= a.dim) return ideal;  // radical of the improper ideal

    QuotientAlgebra q = quotient(a, ideal);
    SubspaceBasis nil = nilradical(q.algebra);
    std::vector<SparseVec> span;
    for (const auto& row : nil.rows()) span.push_back(q.lift(row));
    for (const auto& row : ideal.space.rows()) span.push_back(row);
    return ideal_from_span(a, span);  // closure re-verified on the way in
}

// ---- split into one-dimensional factors ---------------------------------

struct CrtSplit {
    std::vector<SparseVec> idempotents;            // primitive, sum to 1
    std::vector<std::vector<Scalar>> point_values; // point_values[i][j] = chi_i(a_j)

    Scalar point(int i, const SparseVec& a_coords) const {
        Scalar out(0);
        for (const auto& [j, c] : a_coords.entries()) out += c * point_values[i][j];
        return out;
    }
    int factors() const { return static_cast<int>(idempotents.size()); }
};

namespace detail {

// Monic minimal polynomial of a square rational matrix (columns given densely).
inline std::vector<Scalar> minimal_polynomial(const std::vector<std::vector<Scalar>>& m) {
    int n = static_cast<int>(m.size());
    int nn = n * n;
    auto flatten = [&](const std::vector<std::vector<Scalar>>& mat) {
        SparseVec v(nn);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (mat[i][j] != 0) v.set(i * n + j, mat[i][j]);
        return v;
    };
    std::vector<std::vector<Scalar>> pw(n, std::vector<Scalar>(n, Scalar(0)));
    for (int i = 0; i < n; ++i) pw[i][i] = 1;
    SubspaceBasis seen(nn);
    std::vector<SparseVec> flat_powers;
    while (true) {
        SparseVec f = flatten(pw);
        flat_powers.push_back(f);
        if (!seen.insert(f)) break;
        std::vector<std::vector<Scalar>> next(n, std::vector<Scalar>(n, Scalar(0)));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                Scalar s(0);
                for (int k = 0; k < n; ++k) s += m[i][k] * pw[k][j];
                next[i][j] = std::move(s);
            }
        pw = std::move(next);
    }
    // last power is a combination of the previous ones; solve
    // sum c_k A^k = A^deg over the stacked matrix coordinates
    int deg = static_cast<int>(flat_powers.size()) - 1;
    std::vector<SparseVec> prev(flat_powers.begin(), flat_powers.end() - 1);
    std::vector<std::vector<Scalar>> lhs(nn, std::vector<Scalar>(deg, Scalar(0)));
    std::vector<Scalar> rhs(nn, Scalar(0));
    for (int k = 0; k < deg; ++k)
        for (const auto& [idx, c] : prev[k].entries()) lhs[idx][k] = c;
    for (const auto& [idx, c] : flat_powers[deg].entries()) rhs[idx] = c;
    // gaussian elimination on (lhs | rhs)
    std::vector<int> pivot_row(deg, -1);
    int row_count = 0;
    for (int col = 0; col < deg && row_count < nn; ++col) {
        int pr = -1;
        for (int r = 0; r < nn; ++r) {
            bool used = false;
            for (int c2 = 0; c2 < col; ++c2)
                if (pivot_row[c2] == r) used = true;
            if (!used && lhs[r][col] != 0) { pr = r; break; }
        }
        if (pr < 0) continue;
        pivot_row[col] = pr;
        Scalar inv = Scalar(1) / lhs[pr][col];
        for (int c2 = col; c2 < deg; ++c2) lhs[pr][c2] *= inv;
        rhs[pr] *= inv;
        for (int r = 0; r < nn; ++r) {
            if (r == pr || lhs[r][col] == 0) continue;
            Scalar f = lhs[r][col];
            for (int c2 = col; c2 < deg; ++c2) lhs[r][c2] -= f * lhs[pr][c2];
            rhs[r] -= f * rhs[pr];
        }
        ++row_count;
    }
    std::vector<Scalar> coeffs(deg + 1, Scalar(0));
    coeffs[deg] = 1;
    for (int k = 0; k < deg; ++k)
        if (pivot_row[k] >= 0) coeffs[k] = -rhs[pivot_row[k]];
    return coeffs;  // monic, ascending; p(M) = 0
}

inline std::vector<Scalar> rational_roots(std::vector<Scalar> poly) {
    // strip trailing zeros already handled by caller (monic); pull out roots by
    // scanning candidates p/q from the primitive integer form
    std::vector<Scalar> roots;
    // extract zero roots
    while (poly.size() > 1 && poly[0] == 0) {
        roots.push_back(Scalar(0));
        poly.erase(poly.begin());
    }
    auto value_at = [&](const Scalar& x) {
        Scalar acc(0);
        for (auto it = poly.rbegin(); it != poly.rend(); ++it) acc = acc * x + *it;
        return acc;
    };
    auto divide_out = [&](const Scalar& r) {
        // synthetic division by (x - r); poly is monic at the top
        std::vector<Scalar> out(poly.size() - 1, Scalar(0));
        Scalar carry(0);
        for (int i = static_cast<int>(poly.size()) - 1; i >= 1; --i) {
            carry = poly[i] + carry * r;
            out[i - 1] = carry;
        }
        poly = std::move(out);
    };
    while (poly.size() > 1) {
        // integer content version
        BigInt denlcm(1);
        for (const auto& c : poly) denlcm = lcm(denlcm, denominator(c));
        std::vector<BigInt> ip;
        for (const auto& c : poly) ip.push_back(numerator(c) * (denlcm / denominator(c)));
        BigInt a0 = ip.front(), an = ip.back();
        if (a0 == 0) { // re-extract zero root
            roots.push_back(Scalar(0));
            poly.erase(poly.begin());
            continue;
        }
        auto divisors = [](BigInt v) {
            if (v < 0) v = -v;
            std::vector<BigInt> ds;
            for (BigInt d = 1; d * d <= v; ++d)
                if (v % d == 0) { ds.push_back(d); ds.push_back(v / d); }
            std::sort(ds.begin(), ds.end());
            ds.erase(std::unique(ds.begin(), ds.end()), ds.end());
            return ds;
        };
        bool found = false;
        for (const BigInt& p : divisors(a0)) {
            for (const BigInt& q : divisors(an)) {
                for (int sign : {1, -1}) {
                    Scalar cand = Scalar(sign * p, q);
                    if (value_at(cand) == 0) {
                        roots.push_back(cand);
                        divide_out(cand);
                        found = true;
                        break;
                    }
                }
                if (found) break;
            }
            if (found) break;
        }
        if (!found) break;  // remaining factor has no rational root
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

} // namespace detail

// Split a semisimple algebra into one-dimensional factors by simultaneous
// eigenspace decomposition of the multiplication operators, refining block by
// block with each basis element in turn. Deterministic: blocks are replaced in
// place by their eigenspaces in ascending eigenvalue order.
inline CrtSplit crt_split(const CommAlgebra& a) {
    if (radical(a, zero_ideal(a)).rank() != 0)
        throw NotSemisimple("algebra has a nonzero radical");

    std::vector<SubspaceBasis> blocks;
    {
        std::vector<SparseVec> all;
        for (int i = 0; i < a.dim; ++i) all.push_back(SparseVec::unit(a.dim, i));
        blocks.push_back(echelonize(all, a.dim));
    }

    for (int g = 0; g < a.dim; ++g) {
        std::vector<SubspaceBasis> next_blocks;
        for (const auto& block : blocks) {
            int bd = block.rank();
            if (bd == 1) { next_blocks.push_back(block); continue; }
            // matrix of mult-by-a_g restricted to the block, in block coordinates
            std::vector<std::vector<Scalar>> m(bd, std::vector<Scalar>(bd, Scalar(0)));
            bool invariant = true;
            for (int j = 0; j < bd; ++j) {
                SparseVec img = a.multiply(SparseVec::unit(a.dim, g), block.rows()[j]);
                auto coords = block.member(img);
                if (!coords) { invariant = false; break; }
                for (int i = 0; i < bd; ++i) m[i][j] = (*coords)[i];
            }
            if (!invariant) throw Error("internal: block not invariant under multiplication");
            auto minpoly = detail::minimal_polynomial(m);
            auto roots = detail::rational_roots(minpoly);
            if (roots.size() <= 1) {
                // scalar action (single eigenvalue on the whole block) splits nothing
                if (roots.size() == 1) {
                    // check the operator really is that scalar; otherwise a
                    // non-rational spectrum component exists
                    bool scalar_action = true;
                    for (int i = 0; i < bd && scalar_action; ++i)
                        for (int j = 0; j < bd; ++j)
                            if (m[i][j] != (i == j ? roots[0] : Scalar(0))) { scalar_action = false; break; }
                    if (!scalar_action)
                        throw SplitFieldRequired("multiplication operator has irrational spectrum");
                } else {
                    throw SplitFieldRequired("multiplication operator has irrational spectrum");
                }
                next_blocks.push_back(block);
                continue;
            }
            // eigenspace for each rational eigenvalue, inside the block
            int recovered = 0;
            std::vector<SubspaceBasis> pieces;
            for (const Scalar& mu : roots) {
                std::vector<SparseVec> rows;  // (m - mu I) x = 0 in block coords
                for (int i = 0; i < bd; ++i) {
                    SparseVec r(bd);
                    for (int j = 0; j < bd; ++j) {
                        Scalar v = m[i][j] - (i == j ? mu : Scalar(0));
                        if (v != 0) r.set(j, v);
                    }
                    rows.push_back(std::move(r));
                }
                SubspaceBasis eig = kernel(rows, bd);
                std::vector<SparseVec> ambient_rows;
                for (const auto& ev : eig.rows()) {
                    SparseVec w(a.dim);
                    for (const auto& [j, c] : ev.entries()) w.axpy(c, block.rows()[j]);
                    ambient_rows.push_back(std::move(w));
                }
                pieces.push_back(echelonize(ambient_rows, a.dim));
                recovered += pieces.back().rank();
            }
            if (recovered != bd)
                throw SplitFieldRequired("multiplication operator has irrational spectrum");
            for (auto& p : pieces) next_blocks.push_back(std::move(p));
        }
        blocks = std::move(next_blocks);
    }

    for (const auto& b : blocks)
        if (b.rank() != 1) throw SplitFieldRequired("characters not separated over Q");

    CrtSplit split;
    for (const auto& b : blocks) {
        SparseVec w = b.rows()[0];
        SparseVec w2 = a.multiply(w, w);
        int lead = w.leading_index();
        Scalar c = w2.get(lead) / w.get(lead);
        if (c == 0) throw NotSemisimple("nilpotent line in a supposedly semisimple algebra");
        SparseVec e = w;
        e.scale(Scalar(1) / c);
        // chi_i on the basis: a_j e = chi(a_j) e
        std::vector<Scalar> values;
        int elead = e.leading_index();
        for (int j = 0; j < a.dim; ++j) {
            SparseVec prod = a.multiply(SparseVec::unit(a.dim, j), e);
            Scalar chi = prod.get(elead) / e.get(elead);
            SparseVec check = e;
            check.scale(chi);
            if (!(check == prod)) throw Error("internal: idempotent line not an eigenline");
            values.push_back(std::move(chi));
        }
        split.idempotents.push_back(std::move(e));
        split.point_values.push_back(std::move(values));
    }
    return split;
}

} // namespace tauloop
