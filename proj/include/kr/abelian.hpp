#pragma once

#include "kr/snf.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace kr {

// Finitely generated abelian group in canonical form: free rank plus
// invariant factors d_1 | d_2 | ... | d_k with every d_j >= 2.
// Two values are equal iff the groups are isomorphic.
struct FGAbelianGroup {
    long rank = 0;
    std::vector<Int> torsion;

    FGAbelianGroup() = default;
    explicit FGAbelianGroup(long r, std::vector<Int> t = {}) : rank(r), torsion(std::move(t)) {}

    bool is_trivial() const { return rank == 0 && torsion.empty(); }
    bool is_finite() const { return rank == 0; }

    Int torsion_order() const {
        Int o = 1;
        for (const Int& d : torsion) o *= d;
        return o;
    }

    bool operator==(const FGAbelianGroup& o) const {
        return rank == o.rank && torsion == o.torsion;
    }
    bool operator!=(const FGAbelianGroup& o) const { return !(*this == o); }
    bool operator<(const FGAbelianGroup& o) const {
        if (rank != o.rank) return rank < o.rank;
        return torsion < o.torsion;
    }

    std::string to_string() const {
        if (is_trivial()) return "0";
        std::ostringstream os;
        bool first = true;
        if (rank == 1) { os << "Z"; first = false; }
        else if (rank > 1) { os << "Z^" << rank; first = false; }
        for (const Int& d : torsion) {
            if (!first) os << " + ";
            os << "Z/" << d;
            first = false;
        }
        return os.str();
    }
};

inline FGAbelianGroup trivial_group() { return FGAbelianGroup(); }
inline FGAbelianGroup free_group(long r) { return FGAbelianGroup(r); }
inline FGAbelianGroup cyclic_group(const Int& n) {
    if (n == 1) return FGAbelianGroup();
    if (n == 0) return FGAbelianGroup(1);
    return FGAbelianGroup(0, {abs_int(n)});
}

// Z^rows / column-span(M): the presentation convention used everywhere.
inline FGAbelianGroup cokernel(const IntMat& M) {
    SmithForm f = smith_normal_form(M);
    FGAbelianGroup g;
    long nonzero = 0;
    for (long i = 0; i < f.diag_len(); ++i) {
        const Int& d = f.d(i);
        if (d == 0) continue;
        ++nonzero;
        if (d > 1) g.torsion.push_back(d);
    }
    g.rank = M.rows() - nonzero;
    return g;
}

inline FGAbelianGroup direct_sum(const FGAbelianGroup& a, const FGAbelianGroup& b) {
    // re-canonicalize the merged torsion via a diagonal presentation
    long n = static_cast<long>(a.torsion.size() + b.torsion.size());
    IntMat diag(n, n);
    long k = 0;
    for (const Int& d : a.torsion) { diag.at(k, k) = d; ++k; }
    for (const Int& d : b.torsion) { diag.at(k, k) = d; ++k; }
    FGAbelianGroup g = cokernel(diag);
    g.rank = a.rank + b.rank;
    return g;
}

inline FGAbelianGroup direct_sum(const std::vector<FGAbelianGroup>& parts) {
    FGAbelianGroup g;
    for (const auto& p : parts) g = direct_sum(g, p);
    return g;
}

inline bool iso_check(const FGAbelianGroup& a, const FGAbelianGroup& b) { return a == b; }

// (A/mA, A[m]): cokernel and kernel of multiplication by m.
inline std::pair<FGAbelianGroup, FGAbelianGroup> mod_m_and_torsion(const FGAbelianGroup& a,
                                                                   const Int& m) {
    if (m < 1) fail(ErrorCode::BadInput, "mod_m_and_torsion needs m >= 1");
    FGAbelianGroup quo, tor;
    std::vector<FGAbelianGroup> qparts, tparts;
    for (long i = 0; i < a.rank; ++i) qparts.push_back(cyclic_group(m));
    for (const Int& d : a.torsion) {
        Int g = gcd_int(d, m);
        qparts.push_back(cyclic_group(g));
        tparts.push_back(cyclic_group(g));
    }
    return {direct_sum(qparts), direct_sum(tparts)};
}

// Hom(A, B) = 0, decidable from canonical forms. Used by the collapse
// certificate: a differential between such groups is forcibly zero.
inline bool hom_is_zero(const FGAbelianGroup& a, const FGAbelianGroup& b) {
    if (a.is_trivial() || b.is_trivial()) return true;
    if (a.rank > 0) return false;
    for (const Int& d : a.torsion)
        if (!mod_m_and_torsion(b, d).second.is_trivial()) return false;
    return true;
}

// Multiset of elementary divisors (prime powers) plus rank; the
// comparison data for "graded pieces match a stated direct sum".
inline std::multiset<Int> elementary_divisors(const FGAbelianGroup& a) {
    std::multiset<Int> out;
    for (Int d : a.torsion) {
        for (Int p = 2; p * p <= d; ++p) {
            if (d % p != 0) continue;
            Int q = 1;
            while (d % p == 0) { q *= p; d /= p; }
            out.insert(q);
        }
        if (d > 1) out.insert(d);
    }
    return out;
}

inline bool same_divisor_data(const FGAbelianGroup& a, const FGAbelianGroup& b) {
    return a.rank == b.rank && elementary_divisors(a) == elementary_divisors(b);
}

// Partition of the p-primary part (cyclic exponents, descending).
inline std::vector<long> p_partition(const FGAbelianGroup& a, const Int& p) {
    std::vector<long> part;
    for (const Int& d : a.torsion) {
        long e = 0;
        Int m = d;
        while (m % p == 0) { ++e; m /= p; }
        if (e > 0) part.push_back(e);
    }
    std::sort(part.rbegin(), part.rend());
    return part;
}

// Does A embed in B? Rank comparison plus Young-diagram containment of
// every p-primary partition.
inline bool embedding_possible(const FGAbelianGroup& a, const FGAbelianGroup& b) {
    if (a.rank > b.rank) return false;
    std::set<Int> primes;
    for (Int d : a.torsion)
        for (Int p = 2; p <= d; ++p)
            if (d % p == 0) {
                primes.insert(p);
                while (d % p == 0) d /= p;
            }
    for (const Int& p : primes) {
        auto pa = p_partition(a, p), pb = p_partition(b, p);
        if (pa.size() > pb.size()) return false;
        for (size_t i = 0; i < pa.size(); ++i)
            if (pa[i] > pb[i]) return false;
    }
    return true;
}

// Minimal number of generators.
inline long min_generators(const FGAbelianGroup& a) {
    return a.rank + static_cast<long>(a.torsion.size());
}

// Necessary condition for a surjection A ->> C.
inline bool surjection_plausible(const FGAbelianGroup& a, const FGAbelianGroup& c) {
    if (c.rank > a.rank) return false;
    return min_generators(c) <= min_generators(a);
}

// Ext^1(B, A) = 0 iff every extension 0 -> A -> E -> B -> 0 splits.
inline bool ext_vanishes(const FGAbelianGroup& b, const FGAbelianGroup& a) {
    for (const Int& d : b.torsion)
        if (!mod_m_and_torsion(a, d).first.is_trivial()) return false;
    return true;
}

// All isomorphism classes of middles of 0 -> A -> E -> B -> 0.
// Every extension is presented by a block matrix [[R_A, X], [0, R_B]];
// X ranges over representatives of A/d_jA per torsion relation of B.
inline std::set<FGAbelianGroup> possible_extensions(const FGAbelianGroup& a,
                                                    const FGAbelianGroup& b) {
    const long ag = min_generators(a);
    const long bt = static_cast<long>(b.torsion.size());
    const long gens = ag + min_generators(b);
    const long rels = static_cast<long>(a.torsion.size()) + bt;

    // per torsion relation of B, the ranges of each lift coordinate
    std::vector<std::vector<Int>> ranges(static_cast<size_t>(bt));
    Int combos = 1;
    for (long j = 0; j < bt; ++j) {
        const Int& e = b.torsion[static_cast<size_t>(j)];
        auto& rg = ranges[static_cast<size_t>(j)];
        for (long i = 0; i < a.rank; ++i) rg.push_back(e);
        for (const Int& d : a.torsion) rg.push_back(gcd_int(d, e));
        for (const Int& r : rg) combos *= r;
    }
    if (combos > 4096) fail(ErrorCode::BadInput, "extension enumeration too large");

    std::set<FGAbelianGroup> out;
    std::vector<Int> counter;
    std::vector<size_t> offsets;
    for (long j = 0; j < bt; ++j) {
        offsets.push_back(counter.size());
        counter.resize(counter.size() + ranges[static_cast<size_t>(j)].size(), Int(0));
    }
    while (true) {
        IntMat m(gens, rels);
        long col = 0;
        for (size_t i = 0; i < a.torsion.size(); ++i, ++col)
            m.at(a.rank + static_cast<long>(i), col) = a.torsion[i];
        for (long j = 0; j < bt; ++j, ++col) {
            m.at(ag + b.rank + j, col) = b.torsion[static_cast<size_t>(j)];
            const auto& rg = ranges[static_cast<size_t>(j)];
            for (size_t i = 0; i < rg.size(); ++i)
                m.at(static_cast<long>(i), col) = counter[offsets[static_cast<size_t>(j)] + i];
        }
        out.insert(cokernel(m));

        size_t k = 0;
        for (; k < counter.size(); ++k) {
            size_t rj = 0, off = 0;
            while (rj + 1 < offsets.size() && offsets[rj + 1] <= k) ++rj;
            off = k - offsets[rj];
            counter[k] += 1;
            if (counter[k] < ranges[rj][off]) break;
            counter[k] = 0;
        }
        if (k == counter.size()) break;
        if (counter.empty()) break;
    }
    return out;
}

// Groups an iterated extension of the pieces (lowest filtration first)
// can produce. Extensions are never resolved by the computations in
// this library; this is the comparison fallback when a paper value is a
// single group and the pipeline yields graded pieces.
inline std::set<FGAbelianGroup> possible_iterated_extensions(
    const std::vector<FGAbelianGroup>& pieces) {
    std::set<FGAbelianGroup> acc{FGAbelianGroup()};
    for (const auto& piece : pieces) {
        std::set<FGAbelianGroup> next;
        for (const auto& e : acc)
            for (const auto& m : possible_extensions(e, piece)) next.insert(m);
        acc = std::move(next);
    }
    return acc;
}

} // namespace kr
