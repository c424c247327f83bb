#include "kr/abelian.hpp"
#include "test_util.hpp"

#include <catch_amalgamated.hpp>

#include <map>
#include <numeric>
#include <set>

using namespace kr;

namespace {

// Brute-force oracle over a finite group given as a list of cyclic
// orders: computes |A/mA| and |A[m]| by enumerating elements.
std::pair<Int, Int> mod_m_orders_oracle(const std::vector<long>& orders, long m) {
    long total = 1;
    for (long d : orders) total *= d;
    long killed = 0;
    std::set<std::vector<long>> image;
    for (long idx = 0; idx < total; ++idx) {
        long x = idx;
        bool in_torsion = true;
        std::vector<long> mx;
        for (long d : orders) {
            long coord = x % d;
            x /= d;
            if ((coord * m) % d != 0) in_torsion = false;
            mx.push_back((coord * m) % d);
        }
        if (in_torsion) ++killed;
        image.insert(mx);
    }
    Int coker = Int(total) / Int(static_cast<long>(image.size()));
    return {coker, Int(killed)};
}

} // namespace

TEST_CASE("cokernel basics") {
    REQUIRE(cokernel(IntMat::from_rows({{2}})) == cyclic_group(2));
    REQUIRE(cokernel(IntMat(0, 0)) == trivial_group());
    // frozen from the SNF oracle: [[2,4],[6,8]] ~ diag(2,4)
    FGAbelianGroup g = cokernel(IntMat::from_rows({{2, 4}, {6, 8}}));
    REQUIRE(g == FGAbelianGroup(0, {2, 4}));
    REQUIRE(g.to_string() == "Z/2 + Z/4");
}

TEST_CASE("cokernel invariance under permutation and zero columns") {
    krtest::Rng rng(5150);
    for (int iter = 0; iter < 100; ++iter) {
        long r = krtest::rand_range(rng, 1, 5), c = krtest::rand_range(rng, 0, 5);
        IntMat m = krtest::random_matrix(rng, r, c, -6, 6);
        FGAbelianGroup base = cokernel(m);

        IntMat perm = m;
        if (r > 1) perm.swap_rows(0, r - 1);
        if (c > 1) perm.swap_cols(0, c - 1);
        REQUIRE(cokernel(perm) == base);

        IntMat padded = IntMat::hstack(m, IntMat(r, 2));
        REQUIRE(cokernel(padded) == base);
    }
}

TEST_CASE("iso_check canonical forms") {
    REQUIRE(iso_check(direct_sum(cyclic_group(2), cyclic_group(4)),
                      direct_sum(cyclic_group(4), cyclic_group(2))));
    REQUIRE(!iso_check(cyclic_group(8), direct_sum(cyclic_group(2), cyclic_group(4))));
    // CRT: Z/6 = Z/2 + Z/3
    REQUIRE(iso_check(cyclic_group(6), direct_sum(cyclic_group(2), cyclic_group(3))));
}

TEST_CASE("mod_m_and_torsion") {
    auto [q1, t1] = mod_m_and_torsion(free_group(1), 8);
    REQUIRE(q1 == cyclic_group(8));
    REQUIRE(t1.is_trivial());

    auto [q2, t2] = mod_m_and_torsion(cyclic_group(2), 4);
    REQUIRE(q2 == cyclic_group(2));
    REQUIRE(t2 == cyclic_group(2));

    // Z + Z/6 mod 4, with the brute-force oracle on the torsion part
    FGAbelianGroup a = direct_sum(free_group(1), cyclic_group(6));
    auto [q3, t3] = mod_m_and_torsion(a, 4);
    REQUIRE(q3 == direct_sum(cyclic_group(4), cyclic_group(2)));
    REQUIRE(t3 == cyclic_group(2));
    auto [oq, ot] = mod_m_orders_oracle({6}, 4);
    REQUIRE(t3.torsion_order() == ot);
    REQUIRE(q3.torsion_order() == oq * 4); // oracle covers Z/6; the free part adds Z/4
}

TEST_CASE("order identity |A/mA| = |A[m]| for finite groups") {
    krtest::Rng rng(999);
    for (int iter = 0; iter < 80; ++iter) {
        std::vector<long> orders;
        long n = krtest::rand_range(rng, 1, 3);
        for (long i = 0; i < n; ++i) orders.push_back(krtest::rand_range(rng, 2, 9));
        std::vector<FGAbelianGroup> parts;
        for (long d : orders) parts.push_back(cyclic_group(d));
        FGAbelianGroup a = direct_sum(parts);
        long m = krtest::rand_range(rng, 1, 12);
        auto [q, t] = mod_m_and_torsion(a, m);
        REQUIRE(q.torsion_order() == t.torsion_order());
        auto [oq, ot] = mod_m_orders_oracle(orders, m);
        REQUIRE(t.torsion_order() == ot);
        REQUIRE(q.torsion_order() == oq);
    }
}

TEST_CASE("element-order census confirms CRT split") {
    // count elements of each order in Z/6 vs Z/2 + Z/3
    auto census = [](const std::vector<long>& orders) {
        std::map<long, long> counts;
        long total = 1;
        for (long d : orders) total *= d;
        for (long idx = 0; idx < total; ++idx) {
            long x = idx, ord = 1;
            for (long d : orders) {
                long coord = x % d;
                x /= d;
                long o = d / std::gcd(coord, d);
                ord = std::lcm(ord, o);
            }
            counts[ord]++;
        }
        return counts;
    };
    REQUIRE(census({6}) == census({2, 3}));
    REQUIRE(census({8}) != census({2, 4}));
}

TEST_CASE("hom_is_zero") {
    REQUIRE(hom_is_zero(cyclic_group(2), free_group(3)));
    REQUIRE(hom_is_zero(trivial_group(), cyclic_group(2)));
    REQUIRE(!hom_is_zero(cyclic_group(2), cyclic_group(4)));
    REQUIRE(!hom_is_zero(free_group(1), cyclic_group(2)));
    REQUIRE(hom_is_zero(cyclic_group(3), cyclic_group(8)));
}

TEST_CASE("elementary divisor data") {
    FGAbelianGroup a = direct_sum(cyclic_group(6), cyclic_group(4));
    // invariants of Z/6 + Z/4: d1 = 2, d2 = 12; divisors {2,3,4}
    REQUIRE(a == FGAbelianGroup(0, {2, 12}));
    std::multiset<Int> expect{2, 3, 4};
    REQUIRE(elementary_divisors(a) == expect);
    REQUIRE(same_divisor_data(a, direct_sum(cyclic_group(12), cyclic_group(2))));
}

TEST_CASE("embedding_possible") {
    REQUIRE(!embedding_possible(cyclic_group(2), free_group(5)));
    REQUIRE(embedding_possible(cyclic_group(2), cyclic_group(4)));
    REQUIRE(!embedding_possible(cyclic_group(4), direct_sum(cyclic_group(2), cyclic_group(2))));
    REQUIRE(!embedding_possible(direct_sum(cyclic_group(2), cyclic_group(2)), cyclic_group(8)));
    REQUIRE(embedding_possible(free_group(1), free_group(2)));
    REQUIRE(!embedding_possible(free_group(2), free_group(1)));
}

TEST_CASE("ext and possible extensions") {
    REQUIRE(ext_vanishes(free_group(2), cyclic_group(4)));
    REQUIRE(!ext_vanishes(cyclic_group(2), cyclic_group(2)));

    // 0 -> Z/2 -> E -> Z/2 -> 0: E is (Z/2)^2 or Z/4
    auto mids = possible_extensions(cyclic_group(2), cyclic_group(2));
    REQUIRE(mids.size() == 2);
    REQUIRE(mids.count(cyclic_group(4)) == 1);
    REQUIRE(mids.count(direct_sum(cyclic_group(2), cyclic_group(2))) == 1);

    // 0 -> Z -> E -> Z/2 -> 0: E is Z + Z/2 or Z
    auto mids2 = possible_extensions(free_group(1), cyclic_group(2));
    REQUIRE(mids2.size() == 2);
    REQUIRE(mids2.count(free_group(1)) == 1);
    REQUIRE(mids2.count(direct_sum(free_group(1), cyclic_group(2))) == 1);

    // free quotient always splits
    auto mids3 = possible_extensions(cyclic_group(4), free_group(2));
    REQUIRE(mids3.size() == 1);
    REQUIRE(*mids3.begin() == direct_sum(free_group(2), cyclic_group(4)));

    // iterated: pieces of the reflection-sphere filtration
    auto all = possible_iterated_extensions(
        {free_group(1), cyclic_group(2), free_group(1)});
    REQUIRE(all.count(free_group(2)) == 1); // the nonsplit assembly
    REQUIRE(all.count(direct_sum(free_group(2), cyclic_group(2))) == 1);
    REQUIRE(all.size() == 2);
}
