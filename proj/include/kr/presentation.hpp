#pragma once

#include "kr/abelian.hpp"

#include <vector>

namespace kr {

// A finitely presented abelian group: Z^gens / column-span(rels).
// rels always has exactly `gens` rows.
struct Presentation {
    long gens = 0;
    IntMat rels; // gens x (number of relations)

    Presentation() : rels(0, 0) {}
    explicit Presentation(long g) : gens(g), rels(g, 0) {}
    Presentation(long g, IntMat r) : gens(g), rels(std::move(r)) {
        if (rels.rows() != gens) fail(ErrorCode::BadInput, "relation matrix row count != gens");
    }

    bool operator==(const Presentation& o) const {
        return gens == o.gens && rels == o.rels;
    }
};

inline Presentation trivial_presentation() { return Presentation(); }
inline Presentation free_presentation(long r) { return Presentation(r); }

inline FGAbelianGroup canonical_form(const Presentation& p) { return cokernel(p.rels); }

// Canonical presentation: free generators first, then one generator per
// invariant factor in ascending order. JSON matrices use this basis.
inline Presentation canonical_presentation(const FGAbelianGroup& g) {
    long n = g.rank + static_cast<long>(g.torsion.size());
    IntMat rels(n, static_cast<long>(g.torsion.size()));
    for (size_t j = 0; j < g.torsion.size(); ++j)
        rels.at(g.rank + static_cast<long>(j), static_cast<long>(j)) = g.torsion[j];
    return Presentation(n, rels);
}

// Homomorphism of presented groups, given on generators.
// Well-definedness (matrix carries source relations into target
// relations) is validated, not assumed.
struct GroupMap {
    Presentation src, dst;
    IntMat mat; // dst.gens x src.gens

    GroupMap() : mat(0, 0) {}
    GroupMap(Presentation s, Presentation d, IntMat m)
        : src(std::move(s)), dst(std::move(d)), mat(std::move(m)) {
        if (mat.rows() != dst.gens || mat.cols() != src.gens)
            fail(ErrorCode::BadInput, "map matrix shape mismatch");
    }

    bool is_well_defined() const { return spans(dst.rels, mat * src.rels); }

    void validate() const {
        if (!is_well_defined())
            fail(ErrorCode::BadInput, "map does not respect source relations");
    }
};

inline GroupMap zero_map(const Presentation& src, const Presentation& dst) {
    return GroupMap(src, dst, IntMat(dst.gens, src.gens));
}

inline GroupMap identity_map(const Presentation& p) {
    return GroupMap(p, p, IntMat::identity(p.gens));
}

inline GroupMap compose(const GroupMap& g, const GroupMap& f) {
    if (g.src.gens != f.dst.gens) fail(ErrorCode::BadInput, "composition shape mismatch");
    return GroupMap(f.src, g.dst, g.mat * f.mat);
}

// f == g as maps of presented groups (difference lands in relations).
inline bool maps_equal(const GroupMap& f, const GroupMap& g) {
    return spans(f.dst.rels, f.mat - g.mat);
}

inline bool is_zero_map(const GroupMap& f) {
    return spans(f.dst.rels, f.mat);
}

// A subquotient H = (cycles of d_out) / (boundaries of d_in + relations)
// of the ambient presented group, with enough data to push ambient
// cycles into H-coordinates. This is what spectral-sequence pages carry
// through turns so that induced morphisms stay exact witnesses.
struct Subquotient {
    Presentation pres;
    IntMat gen_lift; // ambient.gens x pres.gens, a lattice basis of the cycles

    // Express an ambient cycle matrix (columns) in H-coordinates.
    IntMat express(const IntMat& ambient_cols) const {
        if (gen_lift.cols() == 0) {
            if (!ambient_cols.is_zero())
                fail(ErrorCode::BadInput, "vector is not a cycle (trivial cycle lattice)");
            return IntMat(0, ambient_cols.cols());
        }
        auto sol = solve_integer(gen_lift, ambient_cols);
        if (!sol) fail(ErrorCode::BadInput, "vector is not a cycle");
        return *sol;
    }
};

// Kernel-side machinery: generators of {x : d_out(x) in relations} as a
// lattice basis, then relations from boundaries and ambient relations.
inline Subquotient homology_data(const GroupMap& d_in, const GroupMap& d_out) {
    if (d_in.dst.gens != d_out.src.gens)
        fail(ErrorCode::BadInput, "homology_data: maps not composable");
    const Presentation& B = d_out.src;

    if (!is_zero_map(compose(d_out, d_in)))
        fail(ErrorCode::CompositionNotZero, "d_out o d_in != 0");

    // cycles: projection of ker [d_out.mat | C.rels] onto ambient coordinates
    IntMat big = IntMat::hstack(d_out.mat, d_out.dst.rels);
    IntMat ker = kernel_lattice(big);
    IntMat proj(B.gens, ker.cols());
    for (long i = 0; i < B.gens; ++i)
        for (long j = 0; j < ker.cols(); ++j) proj.at(i, j) = ker.at(i, j);
    IntMat L = column_lattice_basis(proj);

    Subquotient h;
    h.gen_lift = L;
    IntMat targets = IntMat::hstack(d_in.mat, B.rels);
    h.pres = Presentation(L.cols(), h.express(targets));
    return h;
}

inline FGAbelianGroup homology_at(const GroupMap& d_in, const GroupMap& d_out) {
    return canonical_form(homology_data(d_in, d_out).pres);
}

inline Subquotient kernel_data(const GroupMap& f) {
    return homology_data(zero_map(trivial_presentation(), f.src), f);
}

inline FGAbelianGroup map_kernel(const GroupMap& f) {
    return canonical_form(kernel_data(f).pres);
}

inline FGAbelianGroup map_cokernel(const GroupMap& f) {
    return cokernel(IntMat::hstack(f.mat, f.dst.rels));
}

inline bool map_is_injective(const GroupMap& f) { return map_kernel(f).is_trivial(); }
inline bool map_is_surjective(const GroupMap& f) { return map_cokernel(f).is_trivial(); }
inline bool map_is_iso(const GroupMap& f) {
    return map_is_injective(f) && map_is_surjective(f);
}

// The map H(B) -> H(B') induced by an ambient map commuting with the
// differentials. Columns of the witness matrix are solved exactly.
inline GroupMap induced_on_homology(const Subquotient& h_src, const Subquotient& h_dst,
                                    const IntMat& ambient_map) {
    IntMat images = ambient_map * h_src.gen_lift;
    return GroupMap(h_src.pres, h_dst.pres, h_dst.express(images));
}

// Direct sums of presentations with offset bookkeeping for block maps.
struct SumLayout {
    Presentation pres;
    std::vector<long> gen_offset; // per summand
};

inline SumLayout direct_sum_presentations(const std::vector<Presentation>& parts) {
    SumLayout out;
    long gens = 0, rels = 0;
    for (const auto& p : parts) {
        out.gen_offset.push_back(gens);
        gens += p.gens;
        rels += p.rels.cols();
    }
    IntMat R(gens, rels);
    long c0 = 0;
    for (size_t k = 0; k < parts.size(); ++k) {
        R.paste(out.gen_offset[k], c0, parts[k].rels);
        c0 += parts[k].rels.cols();
    }
    out.pres = Presentation(gens, R);
    return out;
}

} // namespace kr
