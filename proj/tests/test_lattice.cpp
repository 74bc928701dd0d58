#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "treelie/errors.hpp"
#include "treelie/lattice.hpp"

using namespace treelie;

namespace {

SparseVector sv(std::initializer_list<std::pair<std::uint64_t, long long>> xs) {
    SparseVector v;
    for (auto [k, c] : xs) v.emplace_back(k, Integer(c));
    return v;
}

SparseVector random_sv(std::mt19937_64& rng, int dim, int nnz, long long range) {
    std::map<std::uint64_t, long long> m;
    for (int i = 0; i < nnz; ++i) {
        long long c = static_cast<long long>(rng() % (2 * range + 1)) - range;
        if (c) m[rng() % dim] += c;
    }
    SparseVector v;
    for (auto [k, c] : m)
        if (c) v.emplace_back(k, Integer(c));
    return v;
}

SparseVector lincomb(const std::vector<SparseVector>& rows, const std::vector<Integer>& w) {
    std::map<std::uint64_t, Integer> m;
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (const auto& [k, c] : rows[i]) m[k] += w[i] * c;
    SparseVector v;
    for (const auto& [k, c] : m)
        if (c != 0) v.emplace_back(k, c);
    return v;
}

// Independent dense Smith form on small integer matrices: returns the rank
// of the quotient Z^n / rowspan and its invariant factors > 1.
std::pair<long long, std::vector<long long>> brute_quotient(std::vector<std::vector<long long>> m, int n) {
    int r0 = 0;
    const int rows = static_cast<int>(m.size());
    std::vector<long long> diag;
    for (int c0 = 0; r0 < rows && c0 < n; ++c0) {
        // find a pivot anywhere in the remaining block
        while (true) {
            int pi = -1, pj = -1;
            long long best = 0;
            for (int i = r0; i < rows; ++i)
                for (int j = c0; j < n; ++j)
                    if (m[i][j] && (!best || std::llabs(m[i][j]) < best)) best = std::llabs(m[i][j]), pi = i, pj = j;
            if (pi < 0) return {n - static_cast<long long>(diag.size()), [&] {
                                    std::vector<long long> t;
                                    for (long long d : diag)
                                        if (d > 1) t.push_back(d);
                                    return t;
                                }()};
            std::swap(m[r0], m[pi]);
            for (auto& row : m) std::swap(row[c0], row[pj]);
            bool clean = true;
            for (int i = r0 + 1; i < rows; ++i) {
                long long q = m[i][c0] / m[r0][c0];
                for (int j = c0; j < n; ++j) m[i][j] -= q * m[r0][j];
                if (m[i][c0]) clean = false;
            }
            for (int j = c0 + 1; j < n; ++j) {
                long long q = m[r0][j] / m[r0][c0];
                for (int i = r0; i < rows; ++i) m[i][j] -= q * m[i][c0];
                if (m[r0][j]) clean = false;
            }
            if (!clean) continue;
            // the pivot must divide the rest of the block
            bool divides = true;
            for (int i = r0 + 1; i < rows && divides; ++i)
                for (int j = c0 + 1; j < n; ++j)
                    if (m[i][j] % m[r0][c0]) {
                        for (int jj = c0; jj < n; ++jj) m[r0][jj] += m[i][jj];
                        divides = false;
                        break;
                    }
            if (divides) break;
        }
        diag.push_back(std::llabs(m[r0][c0]));
        ++r0;
    }
    std::vector<long long> t;
    for (long long d : diag)
        if (d > 1) t.push_back(d);
    return {n - static_cast<long long>(diag.size()), t};
}

// Relations G·e - e over H^{⊗n}, written out independently: generators are
// Id ± E_ij (a_j -> a_j ± a_i, b_i -> b_i ∓ b_j) and the adjacent swaps.
std::vector<std::vector<long long>> brute_relations(int n, int g) {
    const int d = 2 * g;  // basis a_1..a_g, b_1..b_g
    using Img = std::vector<std::pair<int, long long>>;
    std::vector<std::vector<Img>> gens;
    for (int i = 0; i < g; ++i)
        for (int j = 0; j < g; ++j) {
            if (i == j) continue;
            for (int s : {1, -1}) {
                std::vector<Img> img(d);
                for (int x = 0; x < d; ++x) img[x] = {{x, 1}};
                img[j].push_back({i, s});
                img[g + i].push_back({g + j, -s});
                gens.push_back(img);
            }
        }
    for (int i = 0; i + 1 < g; ++i) {
        std::vector<Img> img(d);
        for (int x = 0; x < d; ++x) img[x] = {{x, 1}};
        img[i] = {{i + 1, 1}};
        img[i + 1] = {{i, 1}};
        img[g + i] = {{g + i + 1, 1}};
        img[g + i + 1] = {{g + i, 1}};
        gens.push_back(img);
    }
    long long total = 1;
    for (int k = 0; k < n; ++k) total *= d;
    std::vector<std::vector<long long>> rows;
    for (const auto& img : gens)
        for (long long e = 0; e < total; ++e) {
            std::vector<int> digits(n);
            long long x = e;
            for (int k = n - 1; k >= 0; --k) digits[k] = static_cast<int>(x % d), x /= d;
            std::vector<long long> row(total, 0);
            // expand the product of the images slot by slot
            std::vector<std::pair<long long, long long>> acc{{0, 1}};
            for (int k = 0; k < n; ++k) {
                std::vector<std::pair<long long, long long>> next;
                for (auto [idx, c] : acc)
                    for (auto [y, s] : img[digits[k]]) next.push_back({idx * d + y, c * s});
                acc = next;
            }
            for (auto [idx, c] : acc) row[idx] += c;
            row[e] -= 1;
            if (std::any_of(row.begin(), row.end(), [](long long v) { return v != 0; })) rows.push_back(row);
        }
    return rows;
}

}  // namespace

TEST(Lattice, GcdOfMultiples) {
    Lattice l;
    l.insert(sv({{1, 2}}));
    l.insert(sv({{1, 3}}));
    EXPECT_EQ(l.rank(), 1u);
    EXPECT_TRUE(l.member(sv({{1, 1}})).has_value());
    EXPECT_FALSE(l.member(sv({{2, 1}})).has_value());
}

TEST(Lattice, Empty) {
    Lattice l;
    EXPECT_EQ(l.rank(), 0u);
    EXPECT_TRUE(l.member(SparseVector{}).has_value());
    EXPECT_FALSE(l.member(sv({{0, 1}})).has_value());
    EXPECT_FALSE(l.insert(SparseVector{}));
}

TEST(Lattice, IndexTwoSublattice) {
    Lattice l;
    l.insert(sv({{0, 1}, {1, 1}}));
    l.insert(sv({{0, 1}, {1, -1}}));
    EXPECT_EQ(l.rank(), 2u);
    EXPECT_TRUE(l.member(sv({{0, 2}})).has_value());
    EXPECT_FALSE(l.member(sv({{0, 1}})).has_value());
}

TEST(Lattice, OrderIndependence) {
    std::mt19937_64 rng(3);
    std::vector<SparseVector> gens;
    for (int i = 0; i < 25; ++i) gens.push_back(random_sv(rng, 12, 4, 5));
    Lattice x, y;
    for (const auto& v : gens) x.insert(v);
    std::shuffle(gens.begin(), gens.end(), rng);
    for (const auto& v : gens) y.insert(v);
    EXPECT_EQ(x.digest(), y.digest());
    EXPECT_EQ(x.hnf(), y.hnf());
    EXPECT_TRUE(lattice_equal(x, y));
}

TEST(Lattice, WitnessReconstructs) {
    std::mt19937_64 rng(5);
    Lattice l;
    std::vector<SparseVector> gens;
    for (int i = 0; i < 8; ++i) gens.push_back(random_sv(rng, 10, 5, 4)), l.insert(gens.back());
    for (int it = 0; it < 20; ++it) {
        std::vector<Integer> w;
        for (std::size_t i = 0; i < gens.size(); ++i) w.push_back(Integer(static_cast<long long>(rng() % 7) - 3));
        SparseVector v = lincomb(gens, w);
        auto c = l.member(v);
        ASSERT_TRUE(c.has_value());
        EXPECT_EQ(lincomb(l.basis(), *c), v);
    }
}

TEST(Lattice, OverflowMovesToBigIntegers) {
    Lattice l;
    const long long big = 1LL << 61;
    l.insert(sv({{0, big}, {1, 3}}));
    l.insert(sv({{0, big - 1}, {1, 5}}));
    l.insert(sv({{0, 7}, {1, big}}));
    SparseVector v = sv({{0, big}, {1, 3}});
    auto c = l.member(v);
    ASSERT_TRUE(c.has_value());
    EXPECT_EQ(lincomb(l.basis(), *c), v);
    Lattice copy = Lattice::deserialize(l.serialize());
    EXPECT_EQ(copy.digest(), l.digest());
}

TEST(Lattice, SerializeRoundTrip) {
    std::mt19937_64 rng(9);
    Lattice l(3);
    for (int i = 0; i < 10; ++i) l.insert(random_sv(rng, 40, 3, 9));
    Lattice r = Lattice::deserialize(l.serialize());
    EXPECT_EQ(r.arity(), 3);
    EXPECT_EQ(r.digest(), l.digest());
    EXPECT_THROW(Lattice::deserialize("garbage"), std::exception);
}

TEST(Lattice, ContainsAndArityMismatch) {
    Lattice x, y;
    x.insert(sv({{0, 1}}));
    x.insert(sv({{1, 1}}));
    y.insert(sv({{0, 2}, {1, 4}}));
    EXPECT_TRUE(x.contains(y));
    EXPECT_FALSE(y.contains(x));
    EXPECT_THROW(lattice_equal(Lattice(3), Lattice(4)), ArgumentError);
}

TEST(Lattice, IntegerKernel) {
    std::vector<SparseVector> images = {sv({{0, 2}}), sv({{0, 3}}), sv({{1, 1}}), sv({{0, 1}, {1, 1}})};
    auto k = integer_kernel(images);
    EXPECT_EQ(k.size(), 2u);
    for (const auto& x : k) {
        std::vector<Integer> w(images.size(), Integer(0));
        for (const auto& [i, c] : x) w[i] = c;
        EXPECT_TRUE(lincomb(images, w).empty());
    }
    // (3,-2,0,0) is primitive in the kernel: the kernel lattice must contain it
    Lattice kl;
    for (const auto& x : k) kl.insert(x);
    EXPECT_TRUE(kl.member(sv({{0, 3}, {1, -2}})).has_value());
}

TEST(Smith, MatchesBruteForce) {
    std::mt19937_64 rng(11);
    for (int it = 0; it < 30; ++it) {
        int rows = 1 + static_cast<int>(rng() % 5), cols = 1 + static_cast<int>(rng() % 5);
        std::vector<std::vector<long long>> m(rows, std::vector<long long>(cols));
        std::vector<SparseVector> rel;
        for (auto& row : m) {
            SparseVector v;
            for (int j = 0; j < cols; ++j) {
                row[j] = static_cast<long long>(rng() % 9) - 4;
                if (row[j]) v.emplace_back(j, Integer(row[j]));
            }
            rel.push_back(v);
        }
        auto [rank, torsion] = brute_quotient(m, cols);
        auto q = quotient(cols, rel);
        EXPECT_EQ(q.rank, rank);
        ASSERT_EQ(q.torsion.size(), torsion.size());
        for (std::size_t i = 0; i < torsion.size(); ++i) EXPECT_EQ(q.torsion[i], Integer(torsion[i]));
    }
}

TEST(Coinvariants, OddPowersVanish) {
    for (auto [n, g] : std::vector<std::pair<int, int>>{{1, 2}, {1, 3}, {3, 4}}) {
        auto q = quotient(coinvariant_ambient(n, g), coinvariant_relations(n, g));
        EXPECT_EQ(q.rank, 0) << n << "," << g;
        EXPECT_TRUE(q.torsion.empty()) << n << "," << g;
    }
}

TEST(Coinvariants, EvenPowerAgainstBruteForce) {
    for (auto [n, g] : std::vector<std::pair<int, int>>{{2, 3}, {2, 2}, {1, 2}}) {
        auto [rank, torsion] = brute_quotient(brute_relations(n, g), static_cast<int>(coinvariant_ambient(n, g)));
        auto q = quotient(coinvariant_ambient(n, g), coinvariant_relations(n, g));
        EXPECT_EQ(q.rank, rank) << n << "," << g;
        ASSERT_EQ(q.torsion.size(), torsion.size()) << n << "," << g;
        for (std::size_t i = 0; i < torsion.size(); ++i) EXPECT_EQ(q.torsion[i], Integer(torsion[i]));
    }
    auto [rank, torsion] = brute_quotient(brute_relations(2, 3), 36);
    EXPECT_EQ(rank, 2);
    EXPECT_TRUE(torsion.empty());
}

TEST(Coinvariants, BudgetGuard) { EXPECT_THROW(coinvariant_relations(4, 6, 4096), BudgetExceeded); }
