#pragma once

#include "kr/gmod.hpp"
#include "kr/realcx.hpp"

#include <map>
#include <string>
#include <vector>

namespace kr {

/****************************************************
 *            bounded bigraded pages
 ***************************************************/

struct Spot {
    long p = 0, q = 0;
    bool operator<(const Spot& o) const { return p != o.p ? p < o.p : q < o.q; }
    bool operator==(const Spot& o) const { return p == o.p && q == o.q; }
    std::string str() const { return "(" + std::to_string(p) + "," + std::to_string(q) + ")"; }
};

struct PageWindow {
    long pmin = 0, pmax = 0, qmin = 0, qmax = 0;
    bool contains(const Spot& s) const {
        return s.p >= pmin && s.p <= pmax && s.q >= qmin && s.q <= qmax;
    }
    long diameter() const { return (pmax - pmin) + (qmax - qmin) + 1; }
};

// One page of a bounded cohomological spectral sequence: entries are
// presentations (zero outside the window), differentials of bidegree
// (r, 1-r) stored only where source and target are both nonzero.
struct Page {
    long r = 2;
    PageWindow window;
    std::map<Spot, Presentation> entries;
    std::map<Spot, IntMat> diffs; // d_r out of the keyed spot

    Presentation entry(const Spot& s) const {
        auto it = entries.find(s);
        return it == entries.end() ? trivial_presentation() : it->second;
    }
    FGAbelianGroup group_at(const Spot& s) const { return canonical_form(entry(s)); }
    bool nonzero(const Spot& s) const { return !group_at(s).is_trivial(); }

    Spot target_of(const Spot& s) const { return {s.p + r, s.q - r + 1}; }
    Spot source_of(const Spot& s) const { return {s.p - r, s.q + r - 1}; }

    GroupMap diff_from(const Spot& s) const {
        Spot t = target_of(s);
        auto it = diffs.find(s);
        if (it == diffs.end()) return zero_map(entry(s), entry(t));
        return GroupMap(entry(s), entry(t), it->second);
    }

    void validate() const {
        if (r < 2) fail(ErrorCode::BadInput, "page index must be >= 2");
        for (const auto& [s, pres] : entries)
            if (!window.contains(s)) fail(ErrorCode::BadInput, "entry outside window " + s.str());
        for (const auto& [s, m] : diffs) {
            Spot t = target_of(s);
            if (entries.find(s) == entries.end() || !window.contains(t) ||
                entries.find(t) == entries.end())
                fail(ErrorCode::BadInput, "differential endpoints missing at " + s.str());
            diff_from(s).validate();
            // d o d = 0 where composable
            if (diffs.find(t) != diffs.end() &&
                !is_zero_map(compose(diff_from(t), diff_from(s))))
                fail(ErrorCode::BadInput, "d o d != 0 at " + s.str());
        }
    }
};

// E_{r+1} = ker d_r / im d_r spotwise. The turned page has no stored
// differentials: induced higher differentials are extra data a page
// object cannot supply, and every assembled page in this library is
// gated by a collapse certificate before its turn matters.
struct TurnResult {
    Page page;
    std::map<Spot, Subquotient> data; // witnesses, for morphism propagation
};

inline TurnResult turn_page(const Page& pg) {
    pg.validate();
    TurnResult out;
    out.page.r = pg.r + 1;
    out.page.window = pg.window;
    for (const auto& [s, pres] : pg.entries) {
        GroupMap d_out = pg.diff_from(s);
        GroupMap d_in = pg.diff_from(pg.source_of(s));
        Subquotient h = homology_data(d_in, d_out);
        if (!canonical_form(h.pres).is_trivial() || h.pres.gens > 0)
            out.data.emplace(s, h);
        if (!canonical_form(h.pres).is_trivial())
            out.page.entries.emplace(s, h.pres);
    }
    return out;
}

// Stabilization: once r exceeds the window diameter every differential
// leaves the window, so the page is E_infinity.
inline Page run_to_infinity(Page pg) {
    pg.validate();
    while (pg.r <= pg.window.diameter()) pg = turn_page(pg).page;
    return pg;
}

// Pure bookkeeping collapse certificate: no differential map is ever
// inspected. A d_r can be nonzero only if its source and target groups
// are both nonzero and admit a nonzero homomorphism; if no spot does,
// for every r from the page index up to stabilization, then E_r = E_inf.
inline bool collapse_certificate(const Page& pg) {
    for (long r = pg.r; r <= pg.window.diameter(); ++r) {
        for (const auto& [s, pres] : pg.entries) {
            Spot t{s.p + r, s.q - r + 1};
            FGAbelianGroup a = pg.group_at(s), b = pg.group_at(t);
            if (!a.is_trivial() && !b.is_trivial() && !hom_is_zero(a, b)) return false;
        }
    }
    return true;
}

// Anti-diagonal of total degree n in filtration order (increasing p).
// Extensions are deliberately not resolved.
inline std::vector<FGAbelianGroup> abutment_graded(const Page& einf, long n) {
    std::vector<FGAbelianGroup> out;
    for (long p = einf.window.pmin; p <= einf.window.pmax; ++p) {
        FGAbelianGroup g = einf.group_at({p, n - p});
        if (!g.is_trivial()) out.push_back(g);
    }
    return out;
}

inline FGAbelianGroup abutment_sum(const Page& einf, long n) {
    return direct_sum(abutment_graded(einf, n));
}

/****************************************************
 *     morphisms of pages and the comparison lemma
 ***************************************************/

struct SSMorphism {
    Page src, dst;
    std::map<Spot, IntMat> comps;

    GroupMap comp_at(const Spot& s) const {
        auto it = comps.find(s);
        if (it == comps.end()) return zero_map(src.entry(s), dst.entry(s));
        return GroupMap(src.entry(s), dst.entry(s), it->second);
    }

    void validate() const {
        src.validate();
        dst.validate();
        if (src.r != dst.r) fail(ErrorCode::BadInput, "morphism between different page indices");
        for (const auto& [s, m] : comps) comp_at(s).validate();
        for (const auto& [s, pres] : src.entries) {
            Spot t = src.target_of(s);
            GroupMap lhs = compose(comp_at(t), src.diff_from(s));
            GroupMap rhs = compose(dst.diff_from(s), comp_at(s));
            if (!maps_equal(lhs, rhs))
                fail(ErrorCode::NonCommutingMorphism, "morphism does not commute at " + s.str());
        }
    }
};

struct CompareVerdict {
    enum Kind { Confirmed, HypothesisFailed } kind = Confirmed;
    long through_degree = 0; // Confirmed: E_inf iso for p+q <= this
    Spot failed_spot;
    std::string detail;
};

namespace detail {

inline bool morphism_iso_at(const SSMorphism& f, const Spot& s) {
    GroupMap c = f.comp_at(s);
    return map_is_iso(c);
}

inline bool morphism_inj_at(const SSMorphism& f, const Spot& s) {
    return map_kernel(f.comp_at(s)).is_trivial();
}

inline SSMorphism turn_morphism(const SSMorphism& f) {
    TurnResult ts = turn_page(f.src);
    TurnResult td = turn_page(f.dst);
    SSMorphism out;
    out.src = ts.page;
    out.dst = td.page;
    for (const auto& [s, hs] : ts.data) {
        auto it = td.data.find(s);
        if (it == td.data.end()) {
            // target subquotient trivial: induced map is zero
            continue;
        }
        GroupMap ind = induced_on_homology(hs, it->second, f.comp_at(s).mat);
        if (out.src.entries.count(s) && out.dst.entries.count(s))
            out.comps.emplace(s, ind.mat);
    }
    return out;
}

} // namespace detail

// The comparison algorithm: verify the hypotheses at r0 (isomorphism
// for p+q <= N, injection for p+q = N+1), then propagate page by page,
// re-checking that the induction invariant persists, and conclude
// E_inf^{p,q} iso for p+q <= N.
inline CompareVerdict compare(const SSMorphism& f0, long n_bound, long r0) {
    SSMorphism f = f0;
    f.validate();
    if (f.src.r != r0) fail(ErrorCode::BadInput, "morphism is not at page r0");

    auto spots_of_both = [](const SSMorphism& m) {
        std::vector<Spot> out;
        for (const auto& [s, pres] : m.src.entries) out.push_back(s);
        for (const auto& [s, pres] : m.dst.entries)
            if (!m.src.entries.count(s)) out.push_back(s);
        return out;
    };

    // hypotheses at r0
    for (const Spot& s : spots_of_both(f)) {
        if (s.p + s.q <= n_bound && !detail::morphism_iso_at(f, s))
            return {CompareVerdict::HypothesisFailed, 0, s,
                    "not an isomorphism at " + s.str() + " on page r0"};
        if (s.p + s.q == n_bound + 1 && !detail::morphism_inj_at(f, s))
            return {CompareVerdict::HypothesisFailed, 0, s,
                    "not injective at " + s.str() + " on page r0"};
    }

    long stable = std::max(f.src.window.diameter(), f.dst.window.diameter());
    while (f.src.r <= stable) {
        f = detail::turn_morphism(f);
        // the lemma's induction: iso below the line persists, injection on it
        for (const Spot& s : spots_of_both(f)) {
            if (s.p + s.q <= n_bound && !detail::morphism_iso_at(f, s))
                fail(ErrorCode::BadInput,
                     "comparison induction violated at " + s.str() + " page r=" +
                         std::to_string(f.src.r));
            if (s.p + s.q == n_bound + 1 && !detail::morphism_inj_at(f, s))
                fail(ErrorCode::BadInput,
                     "comparison injection violated at " + s.str() + " page r=" +
                         std::to_string(f.src.r));
        }
    }
    // independent conclusion check at E_infinity
    for (const Spot& s : spots_of_both(f))
        if (s.p + s.q <= n_bound &&
            !iso_check(f.src.group_at(s), f.dst.group_at(s)))
            fail(ErrorCode::BadInput, "E_infinity comparison failed at " + s.str());
    return {CompareVerdict::Confirmed, n_bound, {}, ""};
}

/****************************************************
 *        assembled pages from Real complexes
 ***************************************************/

// Bredon's equivariant Atiyah-Hirzebruch E_2 page:
// E_2^{p,q} = H_G^p(X; KR^q). The q-window spans one full period of the
// coefficient system plus margin so that every differential incident to
// the fundamental period is visible. Differentials are zero behind the
// collapse certificate; a failing certificate aborts.
inline Page assemble_ahss(const RealComplex& x, const KRCoefficientSystem& m) {
    require_valid(x);
    m.validate();
    long d = std::max<long>(x.cx.dim(), 0);
    Page pg;
    pg.r = 2;
    pg.window = {0, d, -7 - 2 * d - 1, 2 * d + 1};
    for (long q = pg.window.qmin; q <= pg.window.qmax; ++q) {
        CochainComplex c = bredon_cochain_complex(x, m, q);
        for (long p = 0; p <= d; ++p) {
            Subquotient h = cohomology_data(c, p);
            if (!canonical_form(h.pres).is_trivial()) pg.entries.emplace(Spot{p, q}, h.pres);
        }
    }
    if (!collapse_certificate(pg))
        fail(ErrorCode::NonCollapsing,
             "equivariant AHSS page admits a bidegree-possible differential");
    pg.validate();
    return pg;
}

// Cartan-Leray E_2 page for a free action:
// E_2^{p,q} = H^p(G, H^q(X, Z(i))) => H^{p+q}(X/G, Z(i)).
// The page carries zero differentials; its abutment is only compared in
// total degrees <= dim(X/G), where the identification holds.
inline Page assemble_cartan_leray(const RealComplex& x, LocalWeight w, long pmax = -1) {
    require_valid(x);
    if (!x.is_free()) fail(ErrorCode::NotFreeAction, "Cartan-Leray page needs a free action");
    long d = std::max<long>(x.cx.dim(), 0);
    if (pmax < 0) pmax = d + 2;
    Page pg;
    pg.r = 2;
    pg.window = {0, pmax, 0, d};
    for (long q = 0; q <= d; ++q) {
        InvolutiveModule hq = cohomology_with_involution(x, q);
        if (w.odd()) hq.sigma = hq.sigma.scaled(-1);
        hq.validate();
        for (long p = 0; p <= pmax; ++p) {
            FGAbelianGroup g = group_cohomology(hq, p);
            if (!g.is_trivial()) pg.entries.emplace(Spot{p, q}, canonical_presentation(g));
        }
    }
    pg.validate();
    return pg;
}

} // namespace kr
