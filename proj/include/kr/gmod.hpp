#pragma once

#include "kr/chain.hpp"

#include <string>
#include <vector>

namespace kr {

// A finitely presented abelian group with an involution sigma.
// sigma o sigma = id is validated modulo relations.
struct InvolutiveModule {
    Presentation pres;
    IntMat sigma; // pres.gens x pres.gens

    InvolutiveModule() : sigma(0, 0) {}
    InvolutiveModule(Presentation p, IntMat s) : pres(std::move(p)), sigma(std::move(s)) {}

    GroupMap sigma_map() const { return GroupMap(pres, pres, sigma); }

    void validate() const {
        if (sigma.rows() != pres.gens || sigma.cols() != pres.gens)
            fail(ErrorCode::InvalidInvolution, "sigma shape mismatch");
        GroupMap s = sigma_map();
        if (!s.is_well_defined())
            fail(ErrorCode::InvalidInvolution, "sigma does not respect relations");
        if (!maps_equal(compose(s, s), identity_map(pres)))
            fail(ErrorCode::InvalidInvolution, "sigma^2 != 1");
    }
};

inline InvolutiveModule trivial_action(const Presentation& p) {
    return InvolutiveModule(p, IntMat::identity(p.gens));
}

inline InvolutiveModule sign_action(const Presentation& p) {
    return InvolutiveModule(p, IntMat::identity(p.gens).scaled(-1));
}

// H^p(G, M) for G = Z/2 via the 2-periodic free resolution of Z:
//   p = 0:        ker(sigma - 1)
//   p odd:        ker(sigma + 1) / im(sigma - 1)
//   p even > 0:   ker(sigma - 1) / im(sigma + 1)
inline FGAbelianGroup group_cohomology(const InvolutiveModule& m, long p) {
    if (p < 0) fail(ErrorCode::BadInput, "group_cohomology needs p >= 0");
    m.validate();
    IntMat id = IntMat::identity(m.pres.gens);
    GroupMap s_minus(m.pres, m.pres, m.sigma - id);
    GroupMap s_plus(m.pres, m.pres, m.sigma + id);
    if (p == 0)
        return homology_at(zero_map(trivial_presentation(), m.pres), s_minus);
    if (p % 2 == 1) return homology_at(s_minus, s_plus);
    return homology_at(s_plus, s_minus);
}

// Bounded cochain complex of involutive modules. Differentials commute
// with the involutions (validated) and satisfy d o d = 0.
struct GComplex {
    long lowest = 0;
    std::vector<InvolutiveModule> terms;
    std::vector<IntMat> diffs; // diffs[k] : terms[k] -> terms[k+1]

    long highest() const { return lowest + static_cast<long>(terms.size()) - 1; }
    bool in_range(long n) const {
        return !terms.empty() && n >= lowest && n <= highest();
    }
    Presentation term_pres(long n) const {
        return in_range(n) ? terms[static_cast<size_t>(n - lowest)].pres : trivial_presentation();
    }
    IntMat sigma_at(long n) const {
        return in_range(n) ? terms[static_cast<size_t>(n - lowest)].sigma : IntMat(0, 0);
    }
    GroupMap diff_at(long n) const {
        if (in_range(n) && in_range(n + 1))
            return GroupMap(term_pres(n), term_pres(n + 1), diffs[static_cast<size_t>(n - lowest)]);
        return zero_map(term_pres(n), term_pres(n + 1));
    }

    CochainComplex underlying() const {
        CochainComplex c;
        c.lowest = lowest;
        for (const auto& t : terms) c.terms.push_back(t.pres);
        for (long n = lowest; n < highest(); ++n) c.diffs.push_back(diff_at(n));
        return c;
    }

    void validate() const {
        if (terms.size() >= 2 && diffs.size() + 1 != terms.size())
            fail(ErrorCode::BadInput, "G-complex: differential count mismatch");
        for (size_t k = 0; k < terms.size(); ++k) {
            try {
                terms[k].validate();
            } catch (const Error&) {
                fail(ErrorCode::InvalidInvolution,
                     "G-complex: bad involution in degree " + std::to_string(lowest + (long)k));
            }
        }
        for (long n = lowest; n < highest(); ++n) {
            GroupMap d = diff_at(n);
            d.validate();
            if (n + 1 < highest() && !is_zero_map(compose(diff_at(n + 1), d)))
                fail(ErrorCode::BadInput, "G-complex: d o d != 0 at degree " + std::to_string(n));
            GroupMap ds = compose(d, GroupMap(term_pres(n), term_pres(n), sigma_at(n)));
            GroupMap sd = compose(GroupMap(term_pres(n + 1), term_pres(n + 1), sigma_at(n + 1)), d);
            if (!maps_equal(ds, sd))
                fail(ErrorCode::BadInput,
                     "G-complex: differential not equivariant at degree " + std::to_string(n));
        }
    }
};

inline GComplex single_module_complex(long degree, InvolutiveModule m) {
    GComplex c;
    c.lowest = degree;
    c.terms.push_back(std::move(m));
    return c;
}

namespace detail {

// Hom(periodic resolution, C) as columns p = 0..res_len of C, with
// horizontal map sigma -/+ 1 and vertical map the differential of C.
// Total differential d = d_h + (-1)^p d_v  (p = resolution column).
struct TotalSlice {
    SumLayout layout;
    std::vector<std::pair<long, long>> spots; // (p, q) per summand
};

inline TotalSlice total_term(const GComplex& c, long n, long res_len) {
    TotalSlice s;
    std::vector<Presentation> parts;
    for (long p = 0; p <= res_len; ++p) {
        long q = n - p;
        if (!c.in_range(q)) continue;
        s.spots.emplace_back(p, q);
        parts.push_back(c.term_pres(q));
    }
    s.layout = direct_sum_presentations(parts);
    return s;
}

inline GroupMap total_diff(const GComplex& c, const TotalSlice& from, const TotalSlice& to) {
    IntMat m(to.layout.pres.gens, from.layout.pres.gens);
    for (size_t a = 0; a < from.spots.size(); ++a) {
        auto [p, q] = from.spots[a];
        for (size_t b = 0; b < to.spots.size(); ++b) {
            auto [p2, q2] = to.spots[b];
            if (p2 == p + 1 && q2 == q) {
                IntMat id = IntMat::identity(c.term_pres(q).gens);
                IntMat h = (p % 2 == 0) ? c.sigma_at(q) - id : c.sigma_at(q) + id;
                m.paste(to.layout.gen_offset[b], from.layout.gen_offset[a], h);
            } else if (p2 == p && q2 == q + 1) {
                IntMat v = c.diff_at(q).mat;
                if (p % 2 != 0) v = v.scaled(-1);
                m.paste(to.layout.gen_offset[b], from.layout.gen_offset[a], v);
            }
        }
    }
    return GroupMap(from.layout.pres, to.layout.pres, m);
}

inline FGAbelianGroup hypercohomology_once(const GComplex& c, long n, long res_len) {
    TotalSlice below = total_term(c, n - 1, res_len);
    TotalSlice here = total_term(c, n, res_len);
    TotalSlice above = total_term(c, n + 1, res_len);
    return homology_at(total_diff(c, below, here), total_diff(c, here, above));
}

} // namespace detail

// H^n(G, C) via the standard 2-periodic resolution truncated to
// width(C) + |n| + 2 columns. Recomputed with one extra column; a
// disagreement signals an internal truncation bug, not a user error.
inline FGAbelianGroup hypercohomology(const GComplex& c, long n) {
    c.validate();
    if (c.terms.empty()) return trivial_group();
    long width = static_cast<long>(c.terms.size());
    long reach = std::max(std::abs(n), std::abs(n - c.lowest));
    long res_len = width + reach + 2;
    FGAbelianGroup h = detail::hypercohomology_once(c, n, res_len);
    FGAbelianGroup h2 = detail::hypercohomology_once(c, n, res_len + 1);
    if (!iso_check(h, h2))
        fail(ErrorCode::UnstableTruncation,
             "hypercohomology unstable under resolution padding at n = " + std::to_string(n));
    return h;
}

// Good truncation tau_{<=i}: degrees < i unchanged, degree i replaced by
// cycles, degrees > i zero. Preserves H^n for n <= i.
inline GComplex truncate(const GComplex& c, long i) {
    if (c.terms.empty() || i >= c.highest()) return c;
    GComplex out;
    out.lowest = c.lowest;
    if (i < c.lowest) return out; // empty complex

    for (long n = c.lowest; n < i; ++n) {
        out.terms.push_back(c.terms[static_cast<size_t>(n - c.lowest)]);
        if (n < i - 1) out.diffs.push_back(c.diffs[static_cast<size_t>(n - c.lowest)]);
    }
    // cycles in degree i, with restricted involution and factored d_{i-1}
    Subquotient z = kernel_data(c.diff_at(i));
    IntMat sigma_z = z.express(c.sigma_at(i) * z.gen_lift);
    if (i > c.lowest) out.diffs.push_back(z.express(c.diff_at(i - 1).mat));
    out.terms.emplace_back(z.pres, sigma_z);
    out.validate();
    return out;
}

// Lemma 5.4 at module level: truncation commutes with derived invariants.
// True iff H^n(G, tau_{<=i} C) = H^n(G, C) for every n <= i.
inline bool lemma54_check(const GComplex& c, long i) {
    if (c.terms.empty()) return true;
    GComplex t = truncate(c, i);
    long lo = c.lowest - 1;
    long hi = std::min(i, c.highest() + 1);
    for (long n = lo; n <= hi; ++n) {
        FGAbelianGroup left = t.terms.empty() ? trivial_group() : hypercohomology(t, n);
        FGAbelianGroup right = hypercohomology(c, n);
        if (!iso_check(left, right)) return false;
    }
    return true;
}

} // namespace kr
