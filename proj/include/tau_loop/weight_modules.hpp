#pragma once

#include <map>
#include <memory>
#include <string>
#include <tuple>
#include <vector>

#include "tau_loop/psi.hpp"
#include "tau_loop/tau_algebra.hpp"

namespace tauloop {

// Truncation window: offsets (p, q) presented to the caller satisfy
// 0 <= q <= q_max and -q <= p <= p_max. Internally each module stores the
// staircase -q <= p <= p_max + (q_max - q), which is closed under every
// raising image and every intermediate of the normal-ordering rewrite, so a
// computation only fails when its final target genuinely leaves the window.
struct Box {
    int p_max = 0;
    int q_max = 0;
};

using WeightOffset = BiDegree;

// offsets that occur in any highest-weight module: no weight above the top
// line, and p >= -q because only X-currents lower p, one q-step each
inline bool offset_in_cone(BiDegree o) { return o.q >= 0 && o.p >= -o.q; }

inline bool offset_in_staircase(BiDegree o, Box box) {
    return offset_in_cone(o) && o.q <= box.q_max && o.p <= box.p_max + (box.q_max - o.q);
}

// ---- PBW monomials ------------------------------------------------------

// sort key: bidegree (q, then p), then symbol kind, then coefficient index;
// within one key the t-power is already determined
inline std::tuple<int, int, int, int> pbw_key(const TauSymbol& s) {
    BiDegree d = bidegree(s);
    return {d.q, d.p, static_cast<int>(s.kind), s.a_index};
}

inline bool pbw_less(const TauSymbol& a, const TauSymbol& b) {
    return pbw_key(a) < pbw_key(b);
}

// Product of lowering symbols applied to the highest-weight vector, kept as a
// multiset in ascending pbw order; the empty product is the vector itself.
struct PbwMonomial {
    std::vector<TauSymbol> factors;

    BiDegree offset() const {
        BiDegree d{0, 0};
        for (const auto& s : factors) d = d + bidegree(s);
        return d;
    }

    bool operator==(const PbwMonomial& other) const { return factors == other.factors; }
    bool operator<(const PbwMonomial& other) const {
        auto key = [](const TauSymbol& s) { return pbw_key(s); };
        return std::lexicographical_compare(
            factors.begin(), factors.end(), other.factors.begin(), other.factors.end(),
            [&](const TauSymbol& a, const TauSymbol& b) { return key(a) < key(b); });
    }
};

inline std::string monomial_str(const PbwMonomial& m, const SimpleLieData& g = SimpleLieData{}) {
    std::string out;
    for (const auto& s : m.factors) out += symbol_str(s, g) + "*";
    return out + "v";
}

// ---- module vectors -----------------------------------------------------

// Finitely supported vector across weight layers; coordinates refer to the
// owning module's basis at each offset. No zero layers are stored.
class ModuleVec {
public:
    const std::map<BiDegree, SparseVec>& parts() const { return parts_; }
    bool is_zero() const { return parts_.empty(); }

    void add(BiDegree o, int index, const Scalar& c, int layer_dim) {
        if (c == 0) return;
        auto it = parts_.find(o);
        if (it == parts_.end()) it = parts_.emplace(o, SparseVec(layer_dim)).first;
        it->second.add(index, c);
        if (it->second.is_zero()) parts_.erase(it);
    }

    void axpy(const Scalar& c, const ModuleVec& other) {
        if (c == 0) return;
        for (const auto& [o, coords] : other.parts_) {
            auto it = parts_.find(o);
            if (it == parts_.end()) {
                SparseVec scaled = coords;
                scaled.scale(c);
                parts_.emplace(o, std::move(scaled));
            } else {
                it->second.axpy(c, coords);
                if (it->second.is_zero()) parts_.erase(it);
            }
        }
    }

    void scale(const Scalar& c) {
        if (c == 0) { parts_.clear(); return; }
        for (auto& [o, coords] : parts_) coords.scale(c);
    }

    SparseVec layer(BiDegree o, int layer_dim) const {
        auto it = parts_.find(o);
        return it == parts_.end() ? SparseVec(layer_dim) : it->second;
    }

    bool operator==(const ModuleVec& other) const { return parts_ == other.parts_; }

private:
    std::map<BiDegree, SparseVec> parts_;
};

// ---- common module interface --------------------------------------------

class ModuleBase {
public:
    virtual ~ModuleBase() = default;

    virtual const LoopAlgebra& algebra() const = 0;
    virtual Box box() const = 0;
    virtual int dim(BiDegree o) const = 0;
    virtual std::string label(BiDegree o, int index) const = 0;
    // action of one symbol on one basis vector; {} when the image vanishes
    virtual ModuleVec act_basis(const TauSymbol& s, BiDegree o, int index) const = 0;

    bool in_region(BiDegree o) const { return offset_in_staircase(o, box()); }

    // offsets of the presentation window, (q, p) ascending
    std::vector<BiDegree> window_offsets() const {
        std::vector<BiDegree> out;
        Box b = box();
        for (int q = 0; q <= b.q_max; ++q)
            for (int p = -q; p <= b.p_max; ++p) out.push_back({p, q});
        return out;
    }

    ModuleVec act(const TauElement& u, const ModuleVec& v) const {
        if (u.a_dim != algebra().coeffs.dim)
            throw AlgebraMismatch("element over a different coefficient algebra");
        ModuleVec out;
        for (const auto& [s, c] : u.terms)
            for (const auto& [o, coords] : v.parts())
                for (const auto& [i, ci] : coords.entries())
                    out.axpy(c * ci, act_basis(s, o, i));
        return out;
    }

    ModuleVec act_symbol(const TauSymbol& s, const ModuleVec& v) const {
        return act(TauElement::single(algebra().coeffs.dim, s), v);
    }

    // the highest-weight line, dimension one in every module built here
    ModuleVec highest_vector() const {
        ModuleVec v;
        v.add({0, 0}, 0, Scalar(1), dim({0, 0}));
        return v;
    }
};

// ---- Verma module -------------------------------------------------------

class VermaModule : public ModuleBase {
public:
    VermaModule(LoopAlgebra tau, PsiFunctional psi, Box box)
        : tau_(std::move(tau)), psi_(std::move(psi)), box_(box) {
        if (box.p_max < 0 || box.q_max < 0) throw BadParams("box bounds must be nonnegative");
        if (psi_.a_dim() != tau_.coeffs.dim)
            throw AlgebraMismatch("functional over a different coefficient algebra");
        build_bases();
    }

    const LoopAlgebra& algebra() const override { return tau_; }
    Box box() const override { return box_; }
    const PsiFunctional& psi() const { return psi_; }

    int dim(BiDegree o) const override {
        auto it = bases_.find(o);
        return it == bases_.end() ? 0 : static_cast<int>(it->second.size());
    }

    const std::vector<PbwMonomial>& basis(BiDegree o) const {
        auto it = bases_.find(o);
        if (it == bases_.end()) throw BoxTooSmall("offset outside the stored region");
        return it->second;
    }

    std::string label(BiDegree o, int index) const override {
        const auto& b = basis(o);
        if (index < 0 || index >= static_cast<int>(b.size()))
            throw IndexOutOfRange("basis index");
        return monomial_str(b[index], tau_.lie);
    }

    ModuleVec act_basis(const TauSymbol& s, BiDegree o, int index) const override {
        auto it = bases_.find(o);
        if (it == bases_.end()) throw BoxTooSmall("offset outside the stored region");
        if (index < 0 || index >= static_cast<int>(it->second.size()))
            throw IndexOutOfRange("basis index");
        BiDegree target = o + bidegree(s);
        if (!offset_in_cone(target)) return {};
        if (!in_region(target))
            throw TruncationError("image at offset (" + std::to_string(target.p) + "," +
                                  std::to_string(target.q) + ") leaves the box");
        return act_memo(s, o, index);
    }

private:
    using MemoKey = std::tuple<SymbolKind, Sl2Basis, int, int, int, int, int>;

    MemoKey memo_key(const TauSymbol& s, BiDegree o, int index) const {
        return {s.kind, s.g, s.t_pow, s.a_index, o.p, o.q, index};
    }

    // All in-cone targets of in-region sources stay in-region for every
    // rewrite intermediate (each lowering symbol has dp + dq >= 0, dq >= 0),
    // so no region checks are needed below this point.
    const ModuleVec& act_memo(const TauSymbol& s, BiDegree o, int index) const {
        MemoKey key = memo_key(s, o, index);
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        ModuleVec result = act_uncached(s, o, index);
        return memo_.emplace(std::move(key), std::move(result)).first->second;
    }

    ModuleVec act_uncached(const TauSymbol& s, BiDegree o, int index) const {
        const PbwMonomial& mono = bases_.at(o)[index];
        BiDegree target = o + bidegree(s);
        if (!offset_in_cone(target)) return {};

        ModuleVec out;
        bool lowering = triangular_part(s) == TriPart::minus;
        if (lowering && (mono.factors.empty() || !pbw_less(mono.factors.front(), s))) {
            // already in normal order: prepend
            PbwMonomial extended;
            extended.factors.reserve(mono.factors.size() + 1);
            extended.factors.push_back(s);
            extended.factors.insert(extended.factors.end(), mono.factors.begin(),
                                    mono.factors.end());
            out.add(target, index_of(target, extended), Scalar(1), dim(target));
            return out;
        }
        if (mono.factors.empty()) {
            // top line: the raising part kills it, the zero part is psi
            if (triangular_part(s) == TriPart::zero)
                out.add({0, 0}, 0, psi_.of_symbol(s), dim({0, 0}));
            return out;
        }

        // s * (f0 * rest) = f0 * (s * rest) + [s, f0] * rest
        TauSymbol f0 = mono.factors.front();
        PbwMonomial rest{std::vector<TauSymbol>(mono.factors.begin() + 1, mono.factors.end())};
        BiDegree rest_offset = o + BiDegree{-bidegree(f0).p, -bidegree(f0).q};
        int rest_index = index_of(rest_offset, rest);

        BiDegree swap_offset = rest_offset + bidegree(s);
        if (offset_in_cone(swap_offset)) {
            const ModuleVec& inner = act_memo(s, rest_offset, rest_index);
            for (const auto& [io, coords] : inner.parts())
                for (const auto& [i, c] : coords.entries())
                    out.axpy(c, act_memo(f0, io, i));
        }
        TauElement comm = tau_.bracket_symbols(s, f0);
        for (const auto& [cs, cc] : comm.terms) {
            BiDegree ct = rest_offset + bidegree(cs);
            if (!offset_in_cone(ct)) continue;
            out.axpy(cc, act_memo(cs, rest_offset, rest_index));
        }
        return out;
    }

    int index_of(BiDegree o, const PbwMonomial& m) const {
        const auto& idx = index_.at(o);
        auto it = idx.find(m);
        if (it == idx.end()) throw Error("internal: monomial missing from its layer");
        return it->second;
    }

    void build_bases() {
        // lowering symbols reachable inside the staircase, ascending pbw order
        std::vector<TauSymbol> candidates;
        for (int dq = 0; dq <= box_.q_max; ++dq)
            for (Sl2Basis g : {Sl2Basis::X, Sl2Basis::H, Sl2Basis::Y})
                for (int a = 0; a < tau_.coeffs.dim; ++a) {
                    if (g != Sl2Basis::Y && dq == 0) continue;
                    candidates.push_back(TauSymbol::current(g, -dq, a));
                }
        for (int dq = 1; dq <= box_.q_max; ++dq)
            for (int a = 0; a < tau_.coeffs.dim; ++a)
                candidates.push_back(TauSymbol::vir(-dq, a));
        std::sort(candidates.begin(), candidates.end(), pbw_less);

        for (int q = 0; q <= box_.q_max; ++q)
            for (int p = -q; p <= box_.p_max + (box_.q_max - q); ++p)
                bases_[{p, q}] = {};

        std::vector<TauSymbol> current;
        enumerate(candidates, 0, current);

        for (auto& [o, list] : bases_) {
            auto& idx = index_[o];
            for (int i = 0; i < static_cast<int>(list.size()); ++i) idx[list[i]] = i;
        }
    }

    void enumerate(const std::vector<TauSymbol>& candidates, std::size_t start,
                   std::vector<TauSymbol>& current) {
        BiDegree o{0, 0};
        for (const auto& s : current) o = o + bidegree(s);
        if (auto it = bases_.find(o); it != bases_.end())
            it->second.push_back(PbwMonomial{current});
        for (std::size_t i = start; i < candidates.size(); ++i) {
            BiDegree d = bidegree(candidates[i]);
            BiDegree next{o.p + d.p, o.q + d.q};
            if (next.q > box_.q_max) break;  // candidates sorted by dq
            if (next.p < -next.q) continue;
            if (next.p > box_.p_max + (box_.q_max - next.q)) continue;
            current.push_back(candidates[i]);
            enumerate(candidates, i, current);
            current.pop_back();
        }
    }

    LoopAlgebra tau_;
    PsiFunctional psi_;
    Box box_;
    std::map<BiDegree, std::vector<PbwMonomial>> bases_;
    std::map<BiDegree, std::map<PbwMonomial, int>> index_;
    mutable std::map<MemoKey, ModuleVec> memo_;
};

// ---- singular vectors ---------------------------------------------------

// Finite generating set of the raising part: the affine raising generators
// plus L_1, L_2, which generate all positive Virasoro modes.
inline std::vector<TauSymbol> raising_generators(int a_dim) {
    std::vector<TauSymbol> gens;
    for (int a = 0; a < a_dim; ++a) {
        gens.push_back(TauSymbol::current(Sl2Basis::X, 0, a));
        gens.push_back(TauSymbol::current(Sl2Basis::Y, 1, a));
        gens.push_back(TauSymbol::current(Sl2Basis::H, 1, a));
        gens.push_back(TauSymbol::vir(1, a));
        gens.push_back(TauSymbol::vir(2, a));
    }
    return gens;
}

// Vectors at the given offset killed by the whole raising part.
inline SubspaceBasis singular_vectors(const ModuleBase& m, BiDegree offset) {
    if (!m.in_region(offset)) throw BoxTooSmall("offset outside the stored region");
    int d = m.dim(offset);
    // images of the basis under each raising generator, stacked as constraints
    std::vector<SparseVec> rows;
    for (const auto& gen : raising_generators(m.algebra().coeffs.dim)) {
        BiDegree target = offset + bidegree(gen);
        if (!offset_in_cone(target)) continue;
        int td = m.dim(target);
        std::vector<SparseVec> images;
        for (int i = 0; i < d; ++i)
            images.push_back(m.act_basis(gen, offset, i).layer(target, td));
        for (int j = 0; j < td; ++j) {
            SparseVec row(d);
            for (int i = 0; i < d; ++i) row.set(i, images[i].get(j));
            if (!row.is_zero()) rows.push_back(std::move(row));
        }
    }
    return kernel(rows, d);
}

// ---- irreducible quotient -----------------------------------------------

class IrreducibleModule : public ModuleBase {
public:
    IrreducibleModule(LoopAlgebra tau, PsiFunctional psi, Box box)
        : verma_(std::move(tau), std::move(psi), box) {
        build_submodule();
    }

    const LoopAlgebra& algebra() const override { return verma_.algebra(); }
    Box box() const override { return verma_.box(); }
    const PsiFunctional& psi() const { return verma_.psi(); }
    const VermaModule& verma() const { return verma_; }

    int dim(BiDegree o) const override {
        auto it = complement_.find(o);
        return it == complement_.end() ? 0 : static_cast<int>(it->second.size());
    }

    const SubspaceBasis& submodule_at(BiDegree o) const { return j_.at(o); }

    std::string label(BiDegree o, int index) const override {
        auto it = complement_.find(o);
        if (it == complement_.end()) throw BoxTooSmall("offset outside the stored region");
        if (index < 0 || index >= static_cast<int>(it->second.size()))
            throw IndexOutOfRange("basis index");
        return verma_.label(o, it->second[index]);
    }

    ModuleVec act_basis(const TauSymbol& s, BiDegree o, int index) const override {
        auto it = complement_.find(o);
        if (it == complement_.end()) throw BoxTooSmall("offset outside the stored region");
        if (index < 0 || index >= static_cast<int>(it->second.size()))
            throw IndexOutOfRange("basis index");
        ModuleVec image = verma_.act_basis(s, o, it->second[index]);
        ModuleVec out;
        for (const auto& [to, coords] : image.parts()) {
            SparseVec projected = project(to, coords);
            for (const auto& [i, c] : projected.entries()) out.add(to, i, c, dim(to));
        }
        return out;
    }

    // quotient coordinates of a Verma-coordinate layer
    SparseVec project(BiDegree o, const SparseVec& verma_coords) const {
        SparseVec reduced = j_.at(o).reduce(verma_coords);
        const auto& cols = complement_.at(o);
        SparseVec out(static_cast<int>(cols.size()));
        for (int i = 0; i < static_cast<int>(cols.size()); ++i)
            out.set(i, reduced.get(cols[i]));
        return out;
    }

private:
    // Maximal proper graded submodule, offset by offset: a vector lies in J
    // exactly when every raising generator pushes it into J at the target.
    // Processing offsets by ascending (q, p) makes each target available.
    void build_submodule() {
        std::vector<BiDegree> order;
        for (int q = 0; q <= box().q_max; ++q)
            for (int p = -q; p <= box().p_max + (box().q_max - q); ++p)
                order.push_back({p, q});

        auto gens = raising_generators(algebra().coeffs.dim);
        for (BiDegree o : order) {
            int d = verma_.dim(o);
            if (o == BiDegree{0, 0}) {
                j_[o] = SubspaceBasis(d);
            } else {
                std::vector<SparseVec> rows;
                for (const auto& gen : gens) {
                    BiDegree target = o + bidegree(gen);
                    if (!offset_in_cone(target)) continue;
                    int td = verma_.dim(target);
                    const SubspaceBasis& jt = j_.at(target);
                    std::vector<SparseVec> images;
                    for (int i = 0; i < d; ++i)
                        images.push_back(jt.reduce(verma_.act_basis(gen, o, i).layer(target, td)));
                    for (int j = 0; j < td; ++j) {
                        SparseVec row(d);
                        for (int i = 0; i < d; ++i) row.set(i, images[i].get(j));
                        if (!row.is_zero()) rows.push_back(std::move(row));
                    }
                }
                j_[o] = kernel(rows, d);
            }
            std::vector<bool> is_pivot(d, false);
            for (int p : j_[o].pivots()) is_pivot[p] = true;
            auto& cols = complement_[o];
            for (int c = 0; c < d; ++c)
                if (!is_pivot[c]) cols.push_back(c);
        }
    }

    VermaModule verma_;
    std::map<BiDegree, SubspaceBasis> j_;        // submodule in Verma coordinates
    std::map<BiDegree, std::vector<int>> complement_;  // coset representative columns
};

// ---- evaluation tensor module -------------------------------------------

// V(psi1) (x) V(psi2) as a module over the loop algebra with coefficients in
// the functions on two points: a symbol acts on factor i through its affine
// content, weighted by the value of its coefficient function at z_i.
class EvaluationTensorModule : public ModuleBase {
public:
    EvaluationTensorModule(const PsiFunctional& psi1, const PsiFunctional& psi2,
                           const Scalar& z1, const Scalar& z2, Box box)
        : tau_(points_algebra(check_points(z1, z2))),
          factor1_(std::make_unique<IrreducibleModule>(LoopAlgebra{scalar_algebra()}, psi1, box)),
          factor2_(std::make_unique<IrreducibleModule>(LoopAlgebra{scalar_algebra()}, psi2, box)),
          box_(box) {
        if (psi1.a_dim() != 1 || psi2.a_dim() != 1)
            throw BadParams("factor functionals must be over a one-dimensional algebra");
        // value of the basis function t^k at each point
        for (const Scalar& z : {z1, z2}) {
            std::vector<Scalar> row(tau_.coeffs.dim);
            Scalar pw(1);
            for (int k = 0; k < tau_.coeffs.dim; ++k) {
                row[k] = pw;
                pw *= z;
            }
            point_values_.push_back(std::move(row));
        }
        build_pairs();
    }

    const LoopAlgebra& algebra() const override { return tau_; }
    Box box() const override { return box_; }
    const IrreducibleModule& factor(int i) const { return i == 0 ? *factor1_ : *factor2_; }

    int dim(BiDegree o) const override {
        auto it = pairs_.find(o);
        return it == pairs_.end() ? 0 : static_cast<int>(it->second.size());
    }

    std::string label(BiDegree o, int index) const override {
        auto it = pairs_.find(o);
        if (it == pairs_.end()) throw BoxTooSmall("offset outside the stored region");
        if (index < 0 || index >= static_cast<int>(it->second.size()))
            throw IndexOutOfRange("basis index");
        const PairKey& pk = it->second[index];
        return "[" + factor1_->label(pk.o1, pk.i1) + "] (x) [" + factor2_->label(pk.o2, pk.i2) + "]";
    }

    ModuleVec act_basis(const TauSymbol& s, BiDegree o, int index) const override {
        auto it = pairs_.find(o);
        if (it == pairs_.end()) throw BoxTooSmall("offset outside the stored region");
        BiDegree target = o + bidegree(s);
        if (!offset_in_cone(target)) return {};
        if (!in_region(target))
            throw TruncationError("image at offset (" + std::to_string(target.p) + "," +
                                  std::to_string(target.q) + ") leaves the box");
        const PairKey& pk = it->second[index];
        TauSymbol bare = s;  // the affine content, over the scalar algebra
        bare.a_index = 0;

        ModuleVec out;
        for (int side = 0; side < 2; ++side) {
            Scalar weight = point_values_[side][s.a_index];
            if (weight == 0) continue;
            const IrreducibleModule& mover = side == 0 ? *factor1_ : *factor2_;
            ModuleVec moved = mover.act_basis(bare, side == 0 ? pk.o1 : pk.o2,
                                              side == 0 ? pk.i1 : pk.i2);
            for (const auto& [mo, coords] : moved.parts())
                for (const auto& [mi, c] : coords.entries()) {
                    PairKey np = side == 0 ? PairKey{mo, mi, pk.o2, pk.i2}
                                           : PairKey{pk.o1, pk.i1, mo, mi};
                    out.add(target, pair_index(target, np), weight * c, dim(target));
                }
        }
        return out;
    }

private:
    struct PairKey {
        BiDegree o1;
        int i1;
        BiDegree o2;
        int i2;
        auto operator<=>(const PairKey&) const = default;
    };

    static std::vector<Scalar> check_points(const Scalar& z1, const Scalar& z2) {
        if (z1 == 0 || z2 == 0 || z1 == z2)
            throw BadParams("evaluation points must be distinct and nonzero");
        return {z1, z2};
    }

    void build_pairs() {
        std::vector<BiDegree> factor_offsets;
        for (int q = 0; q <= box_.q_max; ++q)
            for (int p = -q; p <= box_.p_max + (box_.q_max - q); ++p)
                factor_offsets.push_back({p, q});
        std::sort(factor_offsets.begin(), factor_offsets.end(),
                  [](BiDegree a, BiDegree b) { return std::pair(a.q, a.p) < std::pair(b.q, b.p); });

        for (int q = 0; q <= box_.q_max; ++q)
            for (int p = -q; p <= box_.p_max + (box_.q_max - q); ++p)
                pairs_[{p, q}] = {};

        for (BiDegree o1 : factor_offsets) {
            int d1 = factor1_->dim(o1);
            if (d1 == 0) continue;
            for (BiDegree o2 : factor_offsets) {
                int d2 = factor2_->dim(o2);
                if (d2 == 0) continue;
                BiDegree sum = o1 + o2;
                auto it = pairs_.find(sum);
                if (it == pairs_.end()) continue;
                for (int i1 = 0; i1 < d1; ++i1)
                    for (int i2 = 0; i2 < d2; ++i2)
                        it->second.push_back(PairKey{o1, i1, o2, i2});
            }
        }
        for (auto& [o, list] : pairs_) {
            std::sort(list.begin(), list.end());
            auto& idx = index_[o];
            for (int i = 0; i < static_cast<int>(list.size()); ++i) idx[list[i]] = i;
        }
    }

    int pair_index(BiDegree o, const PairKey& pk) const {
        const auto& idx = index_.at(o);
        auto it = idx.find(pk);
        if (it == idx.end()) throw Error("internal: tensor pair missing from its layer");
        return it->second;
    }

    LoopAlgebra tau_;
    std::unique_ptr<IrreducibleModule> factor1_, factor2_;
    Box box_;
    std::vector<std::vector<Scalar>> point_values_;  // [side][a-basis index]
    std::map<BiDegree, std::vector<PairKey>> pairs_;
    std::map<BiDegree, std::map<PairKey, int>> index_;
};

// ---- dominance, nilpotency, annihilation --------------------------------

struct DominanceReport {
    bool dominant = false;
    bool vanishes_on_radical = false;
    int components = 0;
    int failing_component = -1;  // -1: none (or the radical condition failed)
    std::vector<Scalar> lambdas, levels;
    std::string reason;
};

// A functional is dominant integral when it kills the Cartan part over the
// nilradical and, on each one-dimensional factor of the semisimple quotient,
// has a nonnegative-integer weight lambda_i with level c_i >= lambda_i.
inline DominanceReport dominant_integral(const PsiFunctional& psi, const CommAlgebra& a) {
    if (psi.a_dim() != a.dim) throw AlgebraMismatch("functional over a different algebra");
    DominanceReport rep;
    IdealBasis rad = radical(a, zero_ideal(a));
    rep.vanishes_on_radical = true;
    for (const auto& r : rad.space.rows())
        if (psi.on_h(r) != 0 || psi.on_K(r) != 0) rep.vanishes_on_radical = false;
    if (!rep.vanishes_on_radical) {
        rep.reason = "functional does not vanish on the nilradical";
        return rep;
    }
    QuotientAlgebra q = quotient(a, rad);
    CrtSplit split = crt_split(q.algebra);
    rep.components = split.factors();
    for (int i = 0; i < split.factors(); ++i) {
        SparseVec lift = q.lift(split.idempotents[i]);
        Scalar lam = psi.on_h(lift);
        Scalar lev = psi.on_K(lift);
        rep.lambdas.push_back(lam);
        rep.levels.push_back(lev);
        if (rep.failing_component < 0 &&
            (!is_nonneg_integer(lam) || !is_nonneg_integer(lev - lam))) {
            rep.failing_component = i;
            rep.reason = "component " + std::to_string(i) + ": lambda=" + scalar_str(lam) +
                         ", level=" + scalar_str(lev);
        }
    }
    rep.dominant = rep.failing_component < 0;
    if (rep.dominant) rep.reason = "all components dominant integral";
    return rep;
}

struct NilpotencyResult {
    bool nilpotent = false;
    int power = 0;           // least N with x^N v = 0 when nilpotent
    ModuleVec survivor;      // x^Nmax v otherwise
};

inline NilpotencyResult nilpotency_probe(const ModuleBase& m, const TauSymbol& x,
                                         const ModuleVec& v, int n_max) {
    if (x.kind != SymbolKind::Current || x.g == Sl2Basis::H)
        throw BadParams("probe needs a real-root current");
    NilpotencyResult res;
    ModuleVec w = v;
    for (int n = 1; n <= n_max; ++n) {
        w = m.act_symbol(x, w);
        if (w.is_zero()) {
            res.nilpotent = true;
            res.power = n;
            return res;
        }
    }
    res.survivor = std::move(w);
    return res;
}

struct AnnihilationReport {
    bool hypothesis_ok = false;  // psi kills h, K and L_0 over the ideal
    bool annihilated = false;
    int checks = 0;
    std::vector<std::string> violations;
    std::string detail;
};

// Executable content of the finiteness criterion: when psi kills the diagonal
// part over a cofinite ideal I, the whole looped algebra over I annihilates
// the irreducible quotient. Verified for symbol shapes with |t-power| <= reach
// wherever the image stays representable.
inline AnnihilationReport check_cofinite_annihilation(const PsiFunctional& psi,
                                                      const CommAlgebra& a,
                                                      const IdealBasis& ideal, Box box,
                                                      int reach = 2) {
    if (!(ideal.ambient == a)) throw AmbientMismatch("ideal from another algebra");
    AnnihilationReport rep;
    rep.hypothesis_ok = true;
    for (const auto& r : ideal.space.rows())
        if (psi.on_h(r) != 0 || psi.on_K(r) != 0 || psi.on_L0(r) != 0) rep.hypothesis_ok = false;
    if (!rep.hypothesis_ok) {
        rep.detail = "functional does not vanish on the ideal";
        return rep;
    }

    IrreducibleModule v(LoopAlgebra{a}, psi, box);
    std::vector<TauElement> probes;
    for (const auto& r : ideal.space.rows()) {
        for (int m = -reach; m <= reach; ++m)
            for (Sl2Basis g : {Sl2Basis::X, Sl2Basis::H, Sl2Basis::Y}) {
                TauElement e(a.dim);
                for (const auto& [k, c] : r.entries())
                    e.add(TauSymbol::current(g, m, k), c);
                probes.push_back(std::move(e));
            }
        for (int n = -reach; n <= reach; ++n) {
            TauElement e(a.dim);
            for (const auto& [k, c] : r.entries()) e.add(TauSymbol::vir(n, k), c);
            probes.push_back(std::move(e));
        }
        TauElement e(a.dim);
        for (const auto& [k, c] : r.entries()) e.add(TauSymbol::central(k), c);
        probes.push_back(std::move(e));
    }

    rep.annihilated = true;
    for (const auto& probe : probes) {
        if (probe.is_zero()) continue;
        BiDegree shift = bidegree(probe.terms.begin()->first);
        for (BiDegree o : v.window_offsets()) {
            BiDegree target = o + shift;
            if (offset_in_cone(target) && !v.in_region(target)) continue;
            for (int i = 0; i < v.dim(o); ++i) {
                ++rep.checks;
                ModuleVec basis_vec;
                basis_vec.add(o, i, Scalar(1), v.dim(o));
                ModuleVec img = v.act(probe, basis_vec);
                if (!img.is_zero()) {
                    rep.annihilated = false;
                    if (rep.violations.size() < 8)
                        rep.violations.push_back(element_str(probe) + " on " + v.label(o, i));
                }
            }
        }
    }
    rep.detail = rep.annihilated ? "all probes act as zero" : "nonzero images found";
    return rep;
}

} // namespace tauloop
