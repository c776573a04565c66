#pragma once

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "tau_loop/errors.hpp"
#include "tau_loop/rational.hpp"

namespace tauloop {

// Sparse vector over the rationals. Entries are kept sorted by index and never
// store an explicit zero, so equality of values is equality of representations.
class SparseVec {
public:
    using Entry = std::pair<int, Scalar>;

    SparseVec() : dim_(0) {}
    explicit SparseVec(int dim) : dim_(dim) {
        if (dim < 0) throw IndexOutOfRange("negative ambient dimension");
    }

    static SparseVec unit(int dim, int index, Scalar coeff = Scalar(1)) {
        SparseVec v(dim);
        v.set(index, std::move(coeff));
        return v;
    }

    int dim() const { return dim_; }
    bool is_zero() const { return entries_.empty(); }
    const std::vector<Entry>& entries() const { return entries_; }

    Scalar get(int index) const {
        check_index(index);
        auto it = lower_bound(index);
        if (it != entries_.end() && it->first == index) return it->second;
        return Scalar(0);
    }

    void set(int index, Scalar value) {
        check_index(index);
        auto it = lower_bound(index);
        if (it != entries_.end() && it->first == index) {
            if (value == 0) entries_.erase(it);
            else it->second = std::move(value);
        } else if (value != 0) {
            entries_.insert(it, {index, std::move(value)});
        }
    }

    void add(int index, const Scalar& value) {
        check_index(index);
        if (value == 0) return;
        auto it = lower_bound(index);
        if (it != entries_.end() && it->first == index) {
            it->second += value;
            if (it->second == 0) entries_.erase(it);
        } else {
            entries_.insert(it, {index, value});
        }
    }

    // this += c * other
    void axpy(const Scalar& c, const SparseVec& other) {
        if (other.dim_ != dim_) throw IndexOutOfRange("axpy dimension mismatch");
        if (c == 0) return;
        std::vector<Entry> merged;
        merged.reserve(entries_.size() + other.entries_.size());
        auto a = entries_.begin();
        auto b = other.entries_.begin();
        while (a != entries_.end() || b != other.entries_.end()) {
            if (b == other.entries_.end() || (a != entries_.end() && a->first < b->first)) {
                merged.push_back(*a++);
            } else if (a == entries_.end() || a->first > b->first) {
                merged.emplace_back(b->first, c * b->second);
                if (merged.back().second == 0) merged.pop_back();
                ++b;
            } else {
                Scalar s = a->second + c * b->second;
                if (s != 0) merged.emplace_back(a->first, std::move(s));
                ++a; ++b;
            }
        }
        entries_ = std::move(merged);
    }

    void scale(const Scalar& c) {
        if (c == 0) { entries_.clear(); return; }
        for (auto& e : entries_) e.second *= c;
    }

    // index of the leftmost nonzero entry, or -1
    int leading_index() const { return entries_.empty() ? -1 : entries_.front().first; }

    bool operator==(const SparseVec& other) const {
        return dim_ == other.dim_ && entries_ == other.entries_;
    }

    std::vector<Scalar> dense() const {
        std::vector<Scalar> out(dim_, Scalar(0));
        for (const auto& [i, v] : entries_) out[i] = v;
        return out;
    }

    static SparseVec from_dense(const std::vector<Scalar>& values) {
        SparseVec v(static_cast<int>(values.size()));
        for (int i = 0; i < static_cast<int>(values.size()); ++i)
            if (values[i] != 0) v.entries_.emplace_back(i, values[i]);
        return v;
    }

private:
    void check_index(int index) const {
        if (index < 0 || index >= dim_) throw IndexOutOfRange("index out of range");
    }
    std::vector<Entry>::iterator lower_bound(int index) {
        return std::lower_bound(entries_.begin(), entries_.end(), index,
                                [](const Entry& e, int i) { return e.first < i; });
    }
    std::vector<Entry>::const_iterator lower_bound(int index) const {
        return std::lower_bound(entries_.begin(), entries_.end(), index,
                                [](const Entry& e, int i) { return e.first < i; });
    }

    int dim_;
    std::vector<Entry> entries_;
};

// Row basis of a subspace, kept in reduced row echelon form with unit pivots.
// The deterministic pivot rule (leftmost column, first row wins) makes the
// representation canonical: two inputs spanning the same subspace echelonize
// to identical rows.
class SubspaceBasis {
public:
    SubspaceBasis() : ambient_(0) {}
    explicit SubspaceBasis(int ambient_dim) : ambient_(ambient_dim) {
        if (ambient_dim < 0) throw IndexOutOfRange("negative ambient dimension");
    }

    int ambient_dim() const { return ambient_; }
    int rank() const { return static_cast<int>(rows_.size()); }
    const std::vector<SparseVec>& rows() const { return rows_; }
    const std::vector<int>& pivots() const { return pivots_; }

    // Reduce v against the rows; returns the residual.
    SparseVec reduce(SparseVec v) const {
        if (v.dim() != ambient_) throw IndexOutOfRange("reduce dimension mismatch");
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            Scalar c = v.get(pivots_[i]);
            if (c != 0) v.axpy(-c, rows_[i]);
        }
        return v;
    }

    bool contains(const SparseVec& v) const { return reduce(v).is_zero(); }

    // Coefficients over the stored rows if v lies in the span.
    std::optional<std::vector<Scalar>> member(const SparseVec& v) const {
        if (v.dim() != ambient_) throw IndexOutOfRange("member dimension mismatch");
        std::vector<Scalar> coeffs(rows_.size(), Scalar(0));
        SparseVec r = v;
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            Scalar c = r.get(pivots_[i]);
            if (c != 0) {
                coeffs[i] = c;
                r.axpy(-c, rows_[i]);
            }
        }
        if (!r.is_zero()) return std::nullopt;
        return coeffs;
    }

    // Insert a vector, restoring RREF. Returns true when the rank grew.
    bool insert(SparseVec v) {
        SparseVec r = reduce(std::move(v));
        if (r.is_zero()) return false;
        int p = r.leading_index();
        r.scale(Scalar(1) / r.get(p));
        for (auto& row : rows_) {
            Scalar c = row.get(p);
            if (c != 0) row.axpy(-c, r);
        }
        auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), p);
        auto idx = pos - pivots_.begin();
        pivots_.insert(pos, p);
        rows_.insert(rows_.begin() + idx, std::move(r));
        return true;
    }

    bool operator==(const SubspaceBasis& other) const {
        return ambient_ == other.ambient_ && rows_ == other.rows_;
    }

private:
    int ambient_;
    std::vector<SparseVec> rows_;   // sorted by pivot column
    std::vector<int> pivots_;
};

inline SubspaceBasis echelonize(const std::vector<SparseVec>& vectors, int ambient_dim) {
    SubspaceBasis basis(ambient_dim);
    for (const auto& v : vectors) {
        if (v.dim() != ambient_dim) throw IndexOutOfRange("echelonize dimension mismatch");
        basis.insert(v);
    }
    return basis;
}

// Solution space of M x = 0, the rows of M being linear functionals.
inline SubspaceBasis kernel(const std::vector<SparseVec>& rows, int ambient_dim) {
    SubspaceBasis reduced = echelonize(rows, ambient_dim);
    std::vector<bool> is_pivot(ambient_dim, false);
    for (int p : reduced.pivots()) is_pivot[p] = true;

    SubspaceBasis result(ambient_dim);
    for (int free_col = 0; free_col < ambient_dim; ++free_col) {
        if (is_pivot[free_col]) continue;
        SparseVec v(ambient_dim);
        v.set(free_col, Scalar(1));
        for (int i = 0; i < reduced.rank(); ++i) {
            Scalar c = reduced.rows()[i].get(free_col);
            if (c != 0) v.set(reduced.pivots()[i], -c);
        }
        result.insert(std::move(v));
    }
    return result;
}

} // namespace tauloop
