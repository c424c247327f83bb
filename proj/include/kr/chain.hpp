#pragma once

#include "kr/presentation.hpp"

#include <optional>
#include <string>
#include <vector>

namespace kr {

// Bounded cochain complex of finitely presented abelian groups.
// terms[k] sits in degree lowest + k; diffs[k] : terms[k] -> terms[k+1].
struct CochainComplex {
    long lowest = 0;
    std::vector<Presentation> terms;
    std::vector<GroupMap> diffs;

    long highest() const { return lowest + static_cast<long>(terms.size()) - 1; }
    bool in_range(long n) const {
        return !terms.empty() && n >= lowest && n <= highest();
    }

    const Presentation& term_raw(long n) const {
        return terms[static_cast<size_t>(n - lowest)];
    }
    Presentation term_at(long n) const {
        return in_range(n) ? term_raw(n) : trivial_presentation();
    }
    GroupMap diff_at(long n) const {
        if (in_range(n) && in_range(n + 1))
            return diffs[static_cast<size_t>(n - lowest)];
        return zero_map(term_at(n), term_at(n + 1));
    }

    void validate() const {
        if (terms.size() >= 2 && diffs.size() + 1 != terms.size())
            fail(ErrorCode::BadInput, "cochain complex: differential count mismatch");
        for (size_t k = 0; k < diffs.size(); ++k) {
            const GroupMap& d = diffs[k];
            if (!(d.src == terms[k]) || !(d.dst == terms[k + 1]))
                fail(ErrorCode::BadInput, "cochain complex: differential endpoints mismatch");
            d.validate();
            if (k + 1 < diffs.size() && !is_zero_map(compose(diffs[k + 1], d)))
                fail(ErrorCode::BadInput,
                     "cochain complex: d o d != 0 at degree " + std::to_string(lowest + (long)k));
        }
    }
};

inline FGAbelianGroup cohomology(const CochainComplex& c, long n) {
    if (!c.in_range(n)) return trivial_group();
    return homology_at(c.diff_at(n - 1), c.diff_at(n));
}

inline Subquotient cohomology_data(const CochainComplex& c, long n) {
    return homology_data(c.diff_at(n - 1), c.diff_at(n));
}

// Chain map between complexes; components indexed by degree of the source.
struct ChainMap {
    CochainComplex src, dst;
    std::vector<IntMat> comps; // comps[k] : src.terms in degree src.lowest+k -> dst same degree

    IntMat comp_at(long n) const {
        if (n >= src.lowest && n - src.lowest < static_cast<long>(comps.size()))
            return comps[static_cast<size_t>(n - src.lowest)];
        return IntMat(dst.term_at(n).gens, src.term_at(n).gens);
    }

    void validate() const {
        if (src.lowest != dst.lowest || src.terms.size() != dst.terms.size())
            fail(ErrorCode::BadInput, "chain map: shape mismatch");
        for (long n = src.lowest; n <= src.highest(); ++n) {
            GroupMap f(src.term_at(n), dst.term_at(n), comp_at(n));
            f.validate();
            GroupMap square1 = compose(GroupMap(src.term_at(n + 1), dst.term_at(n + 1), comp_at(n + 1)),
                                       src.diff_at(n));
            GroupMap square2 = compose(dst.diff_at(n), f);
            if (!maps_equal(square1, square2))
                fail(ErrorCode::BadInput, "chain map does not commute with differentials");
        }
    }
};

// Mapping cone: term^n = src^{n+1} (+) dst^n, d = [-d_src, 0; f, d_dst].
inline CochainComplex mapping_cone(const ChainMap& f) {
    f.validate();
    CochainComplex cone;
    cone.lowest = f.src.lowest - 1;
    long top = f.src.highest();
    for (long n = cone.lowest; n <= top; ++n) {
        SumLayout s = direct_sum_presentations({f.src.term_at(n + 1), f.dst.term_at(n)});
        cone.terms.push_back(s.pres);
    }
    for (long n = cone.lowest; n < top; ++n) {
        const Presentation& a1 = f.src.term_at(n + 1);
        const Presentation& b0 = f.dst.term_at(n);
        const Presentation& a2 = f.src.term_at(n + 2);
        const Presentation& b1 = f.dst.term_at(n + 1);
        IntMat m(a2.gens + b1.gens, a1.gens + b0.gens);
        m.paste(0, 0, f.src.diff_at(n + 1).mat.scaled(-1));
        m.paste(a2.gens, 0, f.comp_at(n + 1));
        m.paste(a2.gens, a1.gens, f.dst.diff_at(n).mat);
        cone.diffs.emplace_back(cone.terms[static_cast<size_t>(n - cone.lowest)],
                                cone.terms[static_cast<size_t>(n + 1 - cone.lowest)], m);
    }
    cone.validate();
    return cone;
}

// ---------------------------------------------------------------------------
// Long-exact-sequence constraint solver.
//
// A template is a finite window of an exact sequence: slots (groups) and
// maps between consecutive slots, each either known or unknown. Exactness
// is asserted at every interior slot; the window ends are unconstrained
// (callers zero-pad where vanishing or periodicity justifies it).

struct ExactSlot {
    std::optional<FGAbelianGroup> group;  // nullopt = unknown
    std::string label;                    // for unknowns
    std::optional<Presentation> pres;     // basis override; default canonical
};

struct ExactTemplate {
    std::vector<ExactSlot> slots;
    // maps[i] : slots[i] -> slots[i+1], matrices on canonical generators
    std::vector<std::optional<IntMat>> maps;

    void check_shape() const {
        if (slots.size() < 2 || maps.size() + 1 != slots.size())
            fail(ErrorCode::BadInput, "exact template: shape mismatch");
        for (size_t i = 0; i < maps.size(); ++i)
            if (maps[i] && (!slots[i].group || !slots[i + 1].group))
                fail(ErrorCode::BadInput, "exact template: known map incident to unknown slot");
    }
};

struct Resolution {
    enum Kind { Determined, GradedPieces, Undetermined } kind = Undetermined;
    FGAbelianGroup value;     // when Determined
    FGAbelianGroup sub, quot; // when GradedPieces (and mirrored for Determined)
};

namespace detail {

inline Presentation slot_pres(const ExactSlot& s) {
    if (s.pres) return *s.pres;
    return canonical_presentation(*s.group);
}

inline GroupMap template_map(const ExactTemplate& t, size_t i) {
    GroupMap f(slot_pres(t.slots[i]), slot_pres(t.slots[i + 1]), *t.maps[i]);
    f.validate();
    return f;
}

// A map flanked by a trivial known slot is knowable: it is zero.
inline ExactTemplate normalize(ExactTemplate t) {
    t.check_shape();
    for (size_t i = 0; i < t.maps.size(); ++i) {
        if (t.maps[i]) continue;
        const auto& a = t.slots[i].group;
        const auto& b = t.slots[i + 1].group;
        if (a && b && (a->is_trivial() || b->is_trivial()))
            t.maps[i] = IntMat(slot_pres(t.slots[i + 1]).gens, slot_pres(t.slots[i]).gens);
    }
    return t;
}

} // namespace detail

// Consistency of the known data with exactness. Only certain violations
// are flagged; unknowable cases pass.
inline void check_template_consistency(const ExactTemplate& raw) {
    ExactTemplate t = detail::normalize(raw);
    const size_t n = t.slots.size();
    // interior exactness wherever both incident maps are known
    for (size_t i = 0; i + 1 < t.maps.size(); ++i) {
        if (!t.maps[i] || !t.maps[i + 1]) continue;
        GroupMap f = detail::template_map(t, i);
        GroupMap g = detail::template_map(t, i + 1);
        if (!is_zero_map(compose(g, f)))
            fail(ErrorCode::InconsistentTemplate,
                 "maps " + std::to_string(i) + "," + std::to_string(i + 1) + " do not compose to zero");
        if (!homology_at(f, g).is_trivial())
            fail(ErrorCode::InconsistentTemplate,
                 "sequence is not exact at slot " + std::to_string(i + 1));
    }
    // zero flanks with unknown maps still force structure
    for (size_t i = 1; i + 1 < n; ++i) {
        if (!t.slots[i].group) continue;
        const auto& cur = *t.slots[i].group;
        const bool left_zero = t.slots[i - 1].group && t.slots[i - 1].group->is_trivial();
        const bool right_zero = t.slots[i + 1].group && t.slots[i + 1].group->is_trivial();
        if (left_zero && !t.maps[i] && t.slots[i + 1].group &&
            !embedding_possible(cur, *t.slots[i + 1].group))
            fail(ErrorCode::InconsistentTemplate,
                 "slot " + std::to_string(i) + " cannot embed into its successor");
        if (right_zero && !t.maps[i - 1] && t.slots[i - 1].group &&
            !surjection_plausible(*t.slots[i - 1].group, cur))
            fail(ErrorCode::InconsistentTemplate,
                 "slot " + std::to_string(i) + " cannot be a quotient of its predecessor");
    }
}

// For each unknown slot U in an exact window
//   ... -> S_{i-1} -> U -> S_{i+1} -> ...
// exactness pins U between sub = coker(map into S_{i-1}) and
// quot = ker(map out of S_{i+1}). The solver claims Determined only when
// the extension is forced (Ext^1(quot, sub) = 0); a genuine extension
// ambiguity is returned as GradedPieces, never guessed.
inline std::vector<std::pair<std::string, Resolution>> solve_exact(const ExactTemplate& raw) {
    ExactTemplate t = detail::normalize(raw);
    check_template_consistency(t);
    const long n = static_cast<long>(t.slots.size());

    std::vector<std::pair<std::string, Resolution>> out;
    for (long i = 0; i < n; ++i) {
        if (t.slots[static_cast<size_t>(i)].group) continue;
        Resolution res;

        std::optional<FGAbelianGroup> sub, quot;
        // image of S_{i-1} -> U, via exactness at S_{i-1}
        if (i >= 1 && t.slots[static_cast<size_t>(i - 1)].group) {
            const auto& left = *t.slots[static_cast<size_t>(i - 1)].group;
            if (left.is_trivial()) sub = trivial_group();
            else if (i >= 2 && t.maps[static_cast<size_t>(i - 2)])
                sub = map_cokernel(detail::template_map(t, static_cast<size_t>(i - 2)));
        }
        // kernel of map out of U, via exactness at S_{i+1}
        if (i + 1 < n && t.slots[static_cast<size_t>(i + 1)].group) {
            const auto& right = *t.slots[static_cast<size_t>(i + 1)].group;
            if (right.is_trivial()) quot = trivial_group();
            else if (i + 1 < n - 1 && t.maps[static_cast<size_t>(i + 1)])
                quot = map_kernel(detail::template_map(t, static_cast<size_t>(i + 1)));
        }

        if (sub && quot) {
            res.sub = *sub;
            res.quot = *quot;
            if (ext_vanishes(*quot, *sub)) {
                res.kind = Resolution::Determined;
                res.value = direct_sum(*sub, *quot);
            } else {
                res.kind = Resolution::GradedPieces;
            }
        }
        out.emplace_back(t.slots[static_cast<size_t>(i)].label, res);
    }
    return out;
}

} // namespace kr
