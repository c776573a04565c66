#include <catch2/catch_amalgamated.hpp>

#include "tau_loop/sparse.hpp"

using namespace tauloop;

namespace {

SparseVec vec(std::vector<long long> values) {
    std::vector<Scalar> s;
    s.reserve(values.size());
    for (long long v : values) s.emplace_back(v);
    return SparseVec::from_dense(s);
}

// Small deterministic generator; keeps tests reproducible without a framework.
struct Rng {
    unsigned long long state;
    explicit Rng(unsigned long long seed) : state(seed) {}
    unsigned long long next() {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        return state;
    }
    long long range(long long lo, long long hi) { // inclusive
        return lo + static_cast<long long>(next() % static_cast<unsigned long long>(hi - lo + 1));
    }
    Scalar rational() { return Scalar(BigInt(range(-6, 6)), BigInt(range(1, 4))); }
};

} // namespace

TEST_CASE("sparse vector stores no zeros and round-trips") {
    SparseVec v(5);
    v.set(3, Scalar(2));
    v.set(1, make_scalar(-1, 2));
    v.set(3, Scalar(0));
    REQUIRE(v.entries().size() == 1);
    REQUIRE(v.get(1) == make_scalar(-1, 2));
    REQUIRE(v.get(3) == 0);
    v.add(1, make_scalar(1, 2));
    REQUIRE(v.is_zero());
    REQUIRE_THROWS_AS(v.get(5), IndexOutOfRange);
    REQUIRE_THROWS_AS(v.set(-1, Scalar(1)), IndexOutOfRange);
}

TEST_CASE("axpy merges exactly") {
    SparseVec a = vec({1, 0, 2, -3});
    SparseVec b = vec({0, 5, -2, 3});
    a.axpy(Scalar(1), b);
    REQUIRE(a == vec({1, 5, 0, 0}));
    a.axpy(Scalar(-1), a);
    REQUIRE(a.is_zero());
}

TEST_CASE("echelonize produces the canonical reduced form") {
    auto basis = echelonize({vec({0, 2, 4}), vec({1, 1, 1})}, 3);
    REQUIRE(basis.rank() == 2);
    REQUIRE(basis.pivots() == std::vector<int>{0, 1});
    REQUIRE(basis.rows()[0] == vec({1, 0, -1}));
    REQUIRE(basis.rows()[1] == vec({0, 1, 2}));

    // same span, different presentation -> identical representation
    auto basis2 = echelonize({vec({1, 3, 5}), vec({2, 2, 2}), vec({3, 5, 7})}, 3);
    REQUIRE(basis == basis2);
}

TEST_CASE("echelonize is idempotent") {
    auto basis = echelonize({vec({2, 4, 6, 0}), vec({1, 1, 0, 1}), vec({0, 1, 3, -1})}, 4);
    auto again = echelonize(basis.rows(), 4);
    REQUIRE(basis == again);
}

TEST_CASE("kernel of a rank one map") {
    auto k = kernel({vec({1, 1, 1})}, 3);
    REQUIRE(k.rank() == 2);
    REQUIRE(k.contains(vec({-1, 1, 0})));
    REQUIRE(k.contains(vec({-1, 0, 1})));
    REQUIRE_FALSE(k.contains(vec({1, 0, 0})));
}

TEST_CASE("member recovers exact coordinates") {
    auto basis = echelonize({vec({1, 0, -1}), vec({0, 1, 2})}, 3);
    SparseVec target = vec({0, 0, 0});
    target.axpy(make_scalar(2, 3), basis.rows()[0]);
    target.axpy(make_scalar(-7, 5), basis.rows()[1]);
    auto coeffs = basis.member(target);
    REQUIRE(coeffs.has_value());
    REQUIRE((*coeffs)[0] == make_scalar(2, 3));
    REQUIRE((*coeffs)[1] == make_scalar(-7, 5));
    REQUIRE_FALSE(basis.member(vec({0, 0, 1})).has_value());
}

TEST_CASE("rank plus nullity equals ambient dimension") {
    Rng rng(20240811);
    for (int trial = 0; trial < 40; ++trial) {
        int n = static_cast<int>(rng.range(1, 7));
        int m = static_cast<int>(rng.range(1, 7));
        std::vector<SparseVec> rows;
        for (int i = 0; i < m; ++i) {
            SparseVec r(n);
            for (int j = 0; j < n; ++j) r.set(j, rng.rational());
            rows.push_back(std::move(r));
        }
        auto image = echelonize(rows, n);
        auto ker = kernel(rows, n);
        REQUIRE(image.rank() + ker.rank() == n);
        // every kernel vector annihilates every row
        for (const auto& kv : ker.rows()) {
            for (const auto& r : rows) {
                Scalar dot(0);
                for (const auto& [idx, val] : r.entries()) dot += val * kv.get(idx);
                REQUIRE(dot == 0);
            }
        }
    }
}

TEST_CASE("scalar parse and format round-trip") {
    REQUIRE(scalar_str(make_scalar(-3, 6)) == "-1/2");
    REQUIRE(scalar_str(Scalar(7)) == "7");
    REQUIRE(parse_scalar("-22/4") == make_scalar(-11, 2));
    REQUIRE(parse_scalar("13") == Scalar(13));
    REQUIRE_THROWS_AS(parse_scalar("1/0"), InputError);
    REQUIRE_THROWS_AS(parse_scalar("x"), InputError);
    REQUIRE_THROWS_AS(parse_scalar(""), InputError);
}
