#pragma once

#include "kr/chain.hpp"
#include "kr/realcx.hpp"
#include "kr/specseq.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace kr {

/****************************************************
 *              graded group tables
 ***************************************************/

// Degree-indexed groups, either periodic (values stored over one period,
// keys 0..period-1) or of finite support. Querying a degree the paper
// does not determine raises NotSpecifiedInPaper.
struct GradedGroupTable {
    std::optional<long> period;
    std::map<long, FGAbelianGroup> values;

    bool has(long n) const {
        if (period) return true;
        return values.count(n) > 0;
    }
    FGAbelianGroup at(long n) const {
        long key = n;
        if (period) key = ((n % *period) + *period) % *period;
        auto it = values.find(key);
        if (it == values.end())
            fail(ErrorCode::NotSpecifiedInPaper,
                 "degree " + std::to_string(n) + " is not specified");
        return it->second;
    }
};

struct GradedPieces {
    FGAbelianGroup sub;  // A^n / m
    FGAbelianGroup quot; // A^{n+1}[m]
};

// Universal-coefficient row at degree n for the table:
// 0 -> A^n/m -> A^n(Z/m) -> A^{n+1}[m] -> 0, extension unresolved.
inline GradedPieces mod_m_pieces(const GradedGroupTable& t, const Int& m, long n) {
    return {mod_m_and_torsion(t.at(n), m).first, mod_m_and_torsion(t.at(n + 1), m).second};
}

struct ModMTable {
    Int m = 1;
    std::map<long, GradedPieces> rows;
};

inline ModMTable mod_m_table(const GradedGroupTable& t, const Int& m, long n_lo, long n_hi) {
    ModMTable out;
    out.m = m;
    for (long n = n_lo; n <= n_hi; ++n) out.rows.emplace(n, mod_m_pieces(t, m, n));
    return out;
}

// T(n) isomorphic to T(n - period) across one full cycle.
inline bool periodicity_check(const GradedGroupTable& t, long period = 4) {
    if (period <= 0) fail(ErrorCode::BadInput, "period must be positive");
    if (t.period) {
        long span = *t.period;
        for (long n = 0; n < std::max(span, period); ++n)
            if (!iso_check(t.at(n), t.at(n - period))) return false;
        return true;
    }
    long pairs = 0;
    for (const auto& [n, g] : t.values) {
        if (!t.values.count(n - period)) continue;
        ++pairs;
        if (!iso_check(g, t.values.at(n - period))) return false;
    }
    if (pairs < period)
        fail(ErrorCode::BadInput, "table window too small to attest one full cycle");
    return true;
}

/****************************************************
 *      wired point tables: KO^* and KU^* of a point
 ***************************************************/

// KO^{-n}(point) for n = 0..7: Z, Z/2, Z/2, 0, Z, 0, 0, 0 (8-periodic).
inline FGAbelianGroup ko_point(long q) {
    static const std::array<FGAbelianGroup, 8> cycle = {
        free_group(1),   cyclic_group(2), cyclic_group(2), trivial_group(),
        free_group(1),   trivial_group(), trivial_group(), trivial_group()};
    return cycle[static_cast<size_t>(((-q) % 8 + 8) % 8)];
}

// KU^{-n}(point): Z for n even, 0 for n odd (2-periodic).
inline FGAbelianGroup ku_point(long q) {
    return (((q % 2) + 2) % 2 == 0) ? free_group(1) : trivial_group();
}

inline GradedGroupTable ko_point_table() {
    GradedGroupTable t;
    t.period = 8;
    for (long k = 0; k < 8; ++k) t.values[k] = ko_point(k);
    return t;
}

inline GradedGroupTable ku_point_table() {
    GradedGroupTable t;
    t.period = 2;
    for (long k = 0; k < 2; ++k) t.values[k] = ku_point(k);
    return t;
}

// The KR coefficient system: KU^q at the free orbit, KO^q at the fixed
// point. Classical constants, wired once and cross-validated by
// brauer_severi_check: complexification KO^q -> KU^q is the identity for
// q = 0 (mod 8), multiplication by 2 for q = 4 (mod 8), zero on torsion;
// conjugation acts on KU^{-2k} by (-1)^k.
inline KRCoefficientSystem kr_coefficient_system() {
    KRCoefficientSystem m;
    for (long q = -7; q <= 0; ++q) {
        size_t s = KRCoefficientSystem::slot(q);
        m.free_value[s] = ku_point(q);
        m.fixed_value[s] = ko_point(q);
        long ku_gens = m.free_value[s].is_trivial() ? 0 : 1;
        long ko_gens = m.fixed_value[s].is_trivial() ? 0 : 1;
        IntMat c(ku_gens, ko_gens);
        long qm8 = ((q % 8) + 8) % 8;
        if (qm8 == 0 && ku_gens && ko_gens) c.at(0, 0) = 1;
        if (qm8 == 4 && ku_gens && ko_gens) c.at(0, 0) = 2;
        m.structure[s] = c;
        IntMat conj(ku_gens, ku_gens);
        if (ku_gens) conj.at(0, 0) = (((q % 4) + 4) % 4 == 0) ? 1 : -1;
        m.conjugation[s] = conj;
    }
    m.validate();
    return m;
}

/****************************************************
 *        closed-form curve and sphere calculators
 ***************************************************/

inline std::vector<FGAbelianGroup> replicate(const FGAbelianGroup& g, long k) {
    return std::vector<FGAbelianGroup>(static_cast<size_t>(k), g);
}

// KR^*(X) of a smooth projective real curve of genus g whose real locus
// has lambda circles. lambda = 0 gives the full 4-periodic table;
// lambda >= 1 pins degrees 0 and -1 only (the paper defers the rest).
inline GradedGroupTable curve_projective_kr(long g, long lambda) {
    if (g < 0) fail(ErrorCode::BadInput, "genus must be >= 0");
    if (lambda < 0 || lambda > g + 1)
        fail(ErrorCode::HarnackViolation,
             "lambda = " + std::to_string(lambda) + " exceeds the Harnack bound g+1 = " +
                 std::to_string(g + 1));
    GradedGroupTable t;
    if (lambda == 0) {
        t.period = 4;
        t.values[0] = free_group(2);
        t.values[3] = direct_sum(free_group(g), cyclic_group(2));  // KR^{-1}
        t.values[2] = cyclic_group(2);                             // KR^{-2}
        t.values[1] = free_group(g);                               // KR^{-3}
        return t;
    }
    t.values[0] = direct_sum(free_group(2), direct_sum(replicate(cyclic_group(2), lambda - 1)));
    t.values[-1] = direct_sum(free_group(g), direct_sum(replicate(cyclic_group(2), lambda + 1)));
    return t;
}

// KR^*(X) of an irreducible affine real curve whose real locus has
// lambda compact components: the paper states degrees 0 and -6.
inline GradedGroupTable curve_affine_kr(long lambda) {
    if (lambda < 0) fail(ErrorCode::BadInput, "lambda must be >= 0");
    GradedGroupTable t;
    t.values[0] = direct_sum(free_group(1), direct_sum(replicate(cyclic_group(2), lambda)));
    t.values[-6] = trivial_group();
    return t;
}

// KO^{-n}(S^d) = KO^{-n}(point) + KO^{-n-d}(point) (point plus reduced,
// reduced by suspension).
inline FGAbelianGroup sphere_ko(long d, long n) {
    if (d < 0) fail(ErrorCode::BadInput, "sphere dimension must be >= 0");
    return direct_sum(ko_point(-n), ko_point(-n - d));
}

inline GradedGroupTable sphere_ko_table(long d) {
    GradedGroupTable t;
    t.period = 8;
    for (long k = 0; k < 8; ++k) t.values[k] = direct_sum(ko_point(k), ko_point(k - d));
    return t;
}

inline GradedPieces sphere_ko_mod(long d, long n, const Int& m) {
    return mod_m_pieces(sphere_ko_table(d), m, -n);
}

/****************************************************
 *        the simplicial KR pipeline and checks
 ***************************************************/

struct KRComputation {
    Page e2;
    std::map<long, std::vector<FGAbelianGroup>> pieces; // degree -> graded pieces
    GradedGroupTable table;                             // direct sums of the pieces
};

// Full pipeline: Bredon AHSS page, collapse-certified, read off one
// period of abutments.
inline KRComputation compute_kr_via_ahss(const RealComplex& x, const KRCoefficientSystem& m,
                                         long n_lo = -7, long n_hi = 0) {
    KRComputation out;
    out.e2 = assemble_ahss(x, m);
    Page einf = run_to_infinity(out.e2);
    for (long n = n_lo; n <= n_hi; ++n) {
        out.pieces[n] = abutment_graded(einf, n);
        out.table.values[n] = direct_sum(out.pieces[n]);
    }
    return out;
}

// Atiyah's identity KR^q(S^{3,0}) = KO^q + KO^{q+4}, checked on the
// octahedral model integrally (elementary-divisor multisets) and in
// mod-m graded orders.
struct BrauerSeveriReport {
    bool ok = true;
    long mismatch_degree = 0;
    std::string detail;
};

inline BrauerSeveriReport brauer_severi_check(const Int& m) {
    RealComplex x = models::sphere_antipodal();
    KRComputation kr = compute_kr_via_ahss(x, kr_coefficient_system());

    GradedGroupTable atiyah;
    atiyah.period = 4; // KO^q + KO^{q+4} is 4-periodic on the nose
    for (long k = 0; k < 4; ++k) atiyah.values[k] = direct_sum(ko_point(k), ko_point(k + 4));

    for (long q = -3; q <= 0; ++q) {
        if (!same_divisor_data(kr.table.at(q), atiyah.at(q)))
            return {false, q,
                    "integral mismatch at q=" + std::to_string(q) + ": " +
                        kr.table.at(q).to_string() + " vs " + atiyah.at(q).to_string()};
    }
    // the computed table window only reaches one period; extend by the
    // 4-periodicity it itself certifies
    if (!periodicity_check(kr.table, 4)) return {false, 0, "computed table is not 4-periodic"};
    GradedGroupTable wrapped;
    wrapped.period = 4;
    for (long k = -3; k <= 0; ++k) wrapped.values[((k % 4) + 4) % 4] = kr.table.at(k);
    for (long q = -3; q <= 0; ++q) {
        GradedPieces lhs = mod_m_pieces(wrapped, m, q);
        GradedPieces rhs = mod_m_pieces(atiyah, m, q);
        Int lo = lhs.sub.torsion_order() * lhs.quot.torsion_order();
        Int ro = rhs.sub.torsion_order() * rhs.quot.torsion_order();
        if (lo != ro)
            return {false, q, "mod-" + m.str() + " order mismatch at q=" + std::to_string(q)};
    }
    return {true, 0, ""};
}

/****************************************************
 *      Mayer-Vietoris route for reflection surfaces
 ***************************************************/

namespace detail {

// The Bott Gysin connecting map KU^p(point) -> KO^{p+2}(point) on
// canonical generators; exactness of the Bott sequence pins it to
// 1 for p = 2, reduction for p = 4, multiplication by 2 for p = 6 (mod 8).
inline IntMat bott_delta(long p) {
    long src = ku_point(p).is_trivial() ? 0 : 1;
    long dst = ko_point(p + 2).is_trivial() ? 0 : 1;
    IntMat m(dst, src);
    if (src && dst) {
        long pm8 = ((p % 8) + 8) % 8;
        if (pm8 == 2) m.at(0, 0) = 1;
        else if (pm8 == 4) m.at(0, 0) = 1; // reduction Z -> Z/2
        else if (pm8 == 6) m.at(0, 0) = 2;
    }
    return m;
}

struct MVSide {
    Presentation pres;
    SumLayout layout;
    FGAbelianGroup group;
};

// KU^p of a wedge of g circles: base point part plus g reduced parts.
inline MVSide ku_wedge(long g, long p) {
    std::vector<Presentation> parts{canonical_presentation(ku_point(p))};
    for (long j = 0; j < g; ++j) parts.push_back(canonical_presentation(ku_point(p - 1)));
    MVSide s;
    s.layout = direct_sum_presentations(parts);
    s.pres = s.layout.pres;
    s.group = canonical_form(s.pres);
    return s;
}

// KO^p of g+1 disjoint circles: per circle a point part and a reduced part.
inline MVSide ko_circles(long g, long p) {
    std::vector<Presentation> parts;
    for (long j = 0; j <= g; ++j) {
        parts.push_back(canonical_presentation(ko_point(p)));
        parts.push_back(canonical_presentation(ko_point(p - 1)));
    }
    MVSide s;
    s.layout = direct_sum_presentations(parts);
    s.pres = s.layout.pres;
    s.group = canonical_form(s.pres);
    return s;
}

// gamma_p : KU^p(wedge_g S^1) -> KO^{p+2}(circles): on the first g
// factors the projection onto the matching component, the last circle
// by the sum map, then the Bott delta per circle.
inline IntMat mv_gamma(long g, long p, const MVSide& src, const MVSide& dst) {
    IntMat m(dst.pres.gens, src.pres.gens);
    IntMat d_base = bott_delta(p);     // base part, degree p
    IntMat d_red = bott_delta(p - 1);  // reduced parts, degree p-1
    for (long j = 0; j <= g; ++j) {
        long unred_off = dst.layout.gen_offset[static_cast<size_t>(2 * j)];
        long red_off = dst.layout.gen_offset[static_cast<size_t>(2 * j + 1)];
        // base class restricts to every circle
        for (long bi = 0; bi < d_base.rows(); ++bi)
            for (long bj = 0; bj < d_base.cols(); ++bj)
                m.at(unred_off + bi, src.layout.gen_offset[0] + bj) += d_base.at(bi, bj);
        if (j >= 1) {
            // circle j sees the j-th wedge summand
            for (long bi = 0; bi < d_red.rows(); ++bi)
                for (long bj = 0; bj < d_red.cols(); ++bj)
                    m.at(red_off + bi, src.layout.gen_offset[static_cast<size_t>(j)] + bj) +=
                        d_red.at(bi, bj);
        } else {
            // the last circle is mapped by the sum map
            for (long k = 1; k <= g; ++k)
                for (long bi = 0; bi < d_red.rows(); ++bi)
                    for (long bj = 0; bj < d_red.cols(); ++bj)
                        m.at(red_off + bi, src.layout.gen_offset[static_cast<size_t>(k)] + bj) +=
                            d_red.at(bi, bj);
        }
    }
    return m;
}

} // namespace detail

// KR^p(X) for the genus-g surface with the top-bottom involution, from
// the exact sequence
//   ... -> KO^{p+1}(V) -> KR^p(X) -> KU^p(wedge_g S^1) --gamma--> KO^{p+2}(V) -> ...
// with V = g+1 disjoint circles. Returns one 8-periodic cycle of
// resolutions (graded pieces when the extension is ambiguous).
inline std::map<long, Resolution> mv_surface_kr(long g) {
    if (g < 0) fail(ErrorCode::BadInput, "genus must be >= 0");
    std::map<long, Resolution> out;
    for (long p = -7; p <= 0; ++p) {
        detail::MVSide w_prev = detail::ku_wedge(g, p - 1);
        detail::MVSide v_in = detail::ko_circles(g, p + 1);
        detail::MVSide w_out = detail::ku_wedge(g, p);
        detail::MVSide v_next = detail::ko_circles(g, p + 2);

        ExactTemplate t;
        t.slots.resize(5);
        t.slots[0] = {w_prev.group, "", w_prev.pres};
        t.slots[1] = {v_in.group, "", v_in.pres};
        t.slots[2] = {std::nullopt, "KR^" + std::to_string(p), std::nullopt};
        t.slots[3] = {w_out.group, "", w_out.pres};
        t.slots[4] = {v_next.group, "", v_next.pres};
        t.maps = {detail::mv_gamma(g, p - 1, w_prev, v_in), std::nullopt, std::nullopt,
                  detail::mv_gamma(g, p, w_out, v_next)};
        auto res = solve_exact(t);
        if (res.size() != 1) fail(ErrorCode::InconsistentTemplate, "unexpected solver output");
        out[p] = res[0].second;
    }
    return out;
}

} // namespace kr
