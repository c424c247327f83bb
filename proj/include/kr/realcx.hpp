#pragma once

#include "kr/chain.hpp"
#include "kr/gmod.hpp"

#include <algorithm>
#include <array>
#include <complex>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace kr {

/****************************************************
 *       simplicial complexes and Real structure
 ***************************************************/

using Simplex = std::vector<int>; // sorted vertex ids

// Finite simplicial complex. Simplices are stored sorted by
// (dimension, lexicographic) and are closed under faces; every
// incidence sign in the library comes from this global vertex order.
struct SimplicialComplex {
    int n_vertices = 0;
    std::vector<Simplex> simplices;

    void sort_canonical() {
        std::sort(simplices.begin(), simplices.end(), [](const Simplex& a, const Simplex& b) {
            if (a.size() != b.size()) return a.size() < b.size();
            return a < b;
        });
        simplices.erase(std::unique(simplices.begin(), simplices.end()), simplices.end());
    }

    long dim() const {
        long d = -1;
        for (const auto& s : simplices) d = std::max(d, static_cast<long>(s.size()) - 1);
        return d;
    }

    std::vector<Simplex> simplices_of_dim(long p) const {
        std::vector<Simplex> out;
        for (const auto& s : simplices)
            if (static_cast<long>(s.size()) == p + 1) out.push_back(s);
        return out;
    }

    bool has(const Simplex& s) const {
        return std::binary_search(simplices.begin(), simplices.end(), s,
                                  [](const Simplex& a, const Simplex& b) {
                                      if (a.size() != b.size()) return a.size() < b.size();
                                      return a < b;
                                  });
    }

    void check_faces() const {
        for (const auto& s : simplices) {
            if (!std::is_sorted(s.begin(), s.end()) ||
                std::adjacent_find(s.begin(), s.end()) != s.end())
                fail(ErrorCode::InvalidComplex, "simplex not sorted or has repeats");
            for (int v : s)
                if (v < 0 || v >= n_vertices) fail(ErrorCode::InvalidComplex, "vertex out of range");
            if (s.size() > 1)
                for (size_t k = 0; k < s.size(); ++k) {
                    Simplex f = s;
                    f.erase(f.begin() + static_cast<long>(k));
                    if (!has(f)) fail(ErrorCode::InvalidComplex, "complex not closed under faces");
                }
        }
    }

    long euler_characteristic() const {
        long chi = 0;
        for (const auto& s : simplices) chi += (s.size() % 2 == 1) ? 1 : -1;
        return chi;
    }
};

inline SimplicialComplex from_maximal(int n_vertices, const std::vector<Simplex>& maximal) {
    SimplicialComplex c;
    c.n_vertices = n_vertices;
    std::set<Simplex> all;
    // close under faces by enumerating nonempty subsets
    for (Simplex s : maximal) {
        std::sort(s.begin(), s.end());
        size_t n = s.size();
        for (size_t mask = 1; mask < (size_t(1) << n); ++mask) {
            Simplex f;
            for (size_t b = 0; b < n; ++b)
                if (mask & (size_t(1) << b)) f.push_back(s[b]);
            all.insert(f);
        }
    }
    c.simplices.assign(all.begin(), all.end());
    c.sort_canonical();
    return c;
}

inline std::string simplex_str(const Simplex& s) {
    std::string out = "{";
    for (size_t i = 0; i < s.size(); ++i) out += (i ? "," : "") + std::to_string(s[i]);
    return out + "}";
}

// A Real simplicial complex: the involution tau permutes the simplices
// and every tau-invariant simplex is fixed vertexwise (regularity).
struct RealComplex {
    SimplicialComplex cx;
    std::vector<int> tau;

    Simplex tau_simplex(const Simplex& s) const {
        Simplex t;
        for (int v : s) t.push_back(tau[static_cast<size_t>(v)]);
        std::sort(t.begin(), t.end());
        return t;
    }

    // sign of the permutation sorting (tau(s_0), ..., tau(s_p))
    int tau_sign(const Simplex& s) const {
        std::vector<int> im;
        for (int v : s) im.push_back(tau[static_cast<size_t>(v)]);
        int sign = 1;
        for (size_t i = 0; i < im.size(); ++i)
            for (size_t j = i + 1; j < im.size(); ++j)
                if (im[i] > im[j]) sign = -sign;
        return sign;
    }

    bool vertex_fixed(int v) const { return tau[static_cast<size_t>(v)] == v; }

    bool simplex_fixed(const Simplex& s) const {
        for (int v : s)
            if (!vertex_fixed(v)) return false;
        return true;
    }

    bool is_free() const {
        for (int v = 0; v < cx.n_vertices; ++v)
            if (vertex_fixed(v)) return false;
        return true;
    }
};

struct ValidationReport {
    bool ok = true;
    std::string witness;
};

inline ValidationReport validate(const RealComplex& x) {
    x.cx.check_faces();
    if (static_cast<int>(x.tau.size()) != x.cx.n_vertices)
        return {false, "tau has wrong length"};
    for (int v = 0; v < x.cx.n_vertices; ++v) {
        int w = x.tau[static_cast<size_t>(v)];
        if (w < 0 || w >= x.cx.n_vertices) return {false, "tau image out of range"};
        if (x.tau[static_cast<size_t>(w)] != v)
            return {false, "tau is not an involution at vertex " + std::to_string(v)};
    }
    for (const auto& s : x.cx.simplices) {
        Simplex t = x.tau_simplex(s);
        if (!x.cx.has(t))
            return {false, "tau does not permute the simplices: " + simplex_str(s)};
        if (t == s && !x.simplex_fixed(s))
            return {false, "invariant simplex not fixed vertexwise: " + simplex_str(s)};
    }
    return {true, ""};
}

inline void require_valid(const RealComplex& x) {
    ValidationReport r = validate(x);
    if (!r.ok) fail(ErrorCode::InvalidComplex, r.witness);
}

/****************************************************
 *        subdivision, fixed set, quotient
 ***************************************************/

// Barycentric subdivision with the induced involution. One subdivision
// always restores regularity: an invariant flag is fixed levelwise.
inline RealComplex barycentric_subdivide(const RealComplex& x) {
    x.cx.check_faces();
    const auto& simp = x.cx.simplices;
    std::map<Simplex, int> index;
    for (size_t i = 0; i < simp.size(); ++i) index[simp[i]] = static_cast<int>(i);

    std::vector<Simplex> flags;
    // chains of proper inclusions; extend downward over faces
    std::vector<std::vector<int>> below(simp.size());
    for (size_t i = 0; i < simp.size(); ++i)
        for (size_t j = 0; j < simp.size(); ++j)
            if (i != j && simp[j].size() < simp[i].size() &&
                std::includes(simp[i].begin(), simp[i].end(), simp[j].begin(), simp[j].end()))
                below[i].push_back(static_cast<int>(j));

    std::vector<Simplex> stack;
    for (size_t i = 0; i < simp.size(); ++i) {
        std::vector<std::vector<int>> chains{{static_cast<int>(i)}};
        size_t head = 0;
        while (head < chains.size()) {
            std::vector<int> ch = chains[head++];
            Simplex f = ch;
            std::sort(f.begin(), f.end());
            flags.push_back(f);
            for (int j : below[static_cast<size_t>(ch.back())]) {
                std::vector<int> ext = ch;
                ext.push_back(j);
                chains.push_back(ext);
            }
        }
    }

    RealComplex out;
    out.cx.n_vertices = static_cast<int>(simp.size());
    out.cx.simplices = std::move(flags);
    out.cx.sort_canonical();
    out.tau.resize(simp.size());
    for (size_t i = 0; i < simp.size(); ++i)
        out.tau[i] = index.at(x.tau_simplex(simp[i]));
    require_valid(out);
    return out;
}

struct SubcomplexResult {
    SimplicialComplex complex;
    std::vector<int> vertex_map; // old id -> new id, -1 when absent
};

inline SubcomplexResult fixed_subcomplex(const RealComplex& x) {
    SubcomplexResult out;
    out.vertex_map.assign(static_cast<size_t>(x.cx.n_vertices), -1);
    int next = 0;
    for (int v = 0; v < x.cx.n_vertices; ++v)
        if (x.vertex_fixed(v)) out.vertex_map[static_cast<size_t>(v)] = next++;
    out.complex.n_vertices = next;
    for (const auto& s : x.cx.simplices)
        if (x.simplex_fixed(s)) {
            Simplex t;
            for (int v : s) t.push_back(out.vertex_map[static_cast<size_t>(v)]);
            std::sort(t.begin(), t.end());
            out.complex.simplices.push_back(t);
        }
    out.complex.sort_canonical();
    return out;
}

struct QuotientResult {
    SimplicialComplex quotient;
    RealComplex source;            // the complex actually divided (possibly subdivided)
    std::vector<int> vertex_orbit; // source vertex -> quotient vertex
    std::map<Simplex, Simplex> simplex_orbit;
    int subdivisions = 0;
};

namespace detail {

inline bool try_quotient(const RealComplex& x, QuotientResult& out) {
    out.vertex_orbit.assign(static_cast<size_t>(x.cx.n_vertices), -1);
    int next = 0;
    for (int v = 0; v < x.cx.n_vertices; ++v) {
        if (out.vertex_orbit[static_cast<size_t>(v)] >= 0) continue;
        out.vertex_orbit[static_cast<size_t>(v)] = next;
        out.vertex_orbit[static_cast<size_t>(x.tau[static_cast<size_t>(v)])] = next;
        ++next;
    }
    std::map<Simplex, std::vector<Simplex>> preimages;
    for (const auto& s : x.cx.simplices) {
        Simplex img;
        for (int v : s) img.push_back(out.vertex_orbit[static_cast<size_t>(v)]);
        std::sort(img.begin(), img.end());
        if (std::adjacent_find(img.begin(), img.end()) != img.end())
            return false; // a simplex met its own conjugate vertex orbit
        preimages[img].push_back(s);
        out.simplex_orbit[s] = img;
    }
    // each image must be hit by exactly one tau-orbit of simplices
    for (const auto& [img, pre] : preimages) {
        if (pre.size() == 1) {
            if (!x.simplex_fixed(pre[0]) && x.tau_simplex(pre[0]) != pre[0]) return false;
        } else if (pre.size() == 2) {
            if (x.tau_simplex(pre[0]) != pre[1]) return false;
        } else {
            return false;
        }
    }
    out.quotient.n_vertices = next;
    for (const auto& [img, pre] : preimages) out.quotient.simplices.push_back(img);
    out.quotient.sort_canonical();
    out.quotient.check_faces();
    return true;
}

} // namespace detail

// Orbit space with bookkeeping. If the simplicial structure does not
// descend directly, the source is barycentrically subdivided first
// (at most twice is ever needed for a simplicial involution).
inline QuotientResult quotient(const RealComplex& x) {
    require_valid(x);
    RealComplex cur = x;
    for (int round = 0; round <= 2; ++round) {
        QuotientResult out;
        out.source = cur;
        out.subdivisions = round;
        if (detail::try_quotient(cur, out)) return out;
        cur = barycentric_subdivide(cur);
    }
    fail(ErrorCode::InvalidComplex, "quotient did not stabilize after two subdivisions");
}

/****************************************************
 *        cochain complexes (plain and twisted)
 ***************************************************/

namespace detail {

inline std::map<Simplex, long> index_of(const std::vector<Simplex>& v) {
    std::map<Simplex, long> m;
    for (size_t i = 0; i < v.size(); ++i) m[v[i]] = static_cast<long>(i);
    return m;
}

} // namespace detail

// Simplicial cochain complex with Z coefficients; signs from the global
// sorted vertex order.
inline CochainComplex cochain_complex(const SimplicialComplex& c) {
    CochainComplex out;
    out.lowest = 0;
    long d = c.dim();
    if (d < 0) return out;
    std::vector<std::vector<Simplex>> by_dim;
    for (long p = 0; p <= d; ++p) by_dim.push_back(c.simplices_of_dim(p));
    for (long p = 0; p <= d; ++p)
        out.terms.push_back(free_presentation(static_cast<long>(by_dim[static_cast<size_t>(p)].size())));
    for (long p = 0; p + 1 <= d; ++p) {
        auto idx = detail::index_of(by_dim[static_cast<size_t>(p)]);
        const auto& tops = by_dim[static_cast<size_t>(p + 1)];
        IntMat m(static_cast<long>(tops.size()), static_cast<long>(by_dim[static_cast<size_t>(p)].size()));
        for (size_t si = 0; si < tops.size(); ++si) {
            const Simplex& s = tops[si];
            for (size_t k = 0; k < s.size(); ++k) {
                Simplex f = s;
                f.erase(f.begin() + static_cast<long>(k));
                m.at(static_cast<long>(si), idx.at(f)) += (k % 2 == 0) ? 1 : -1;
            }
        }
        out.diffs.emplace_back(out.terms[static_cast<size_t>(p)], out.terms[static_cast<size_t>(p + 1)], m);
    }
    out.validate();
    return out;
}

inline FGAbelianGroup simplicial_cohomology(const SimplicialComplex& c, long n) {
    return cohomology(cochain_complex(c), n);
}

// Parity-only local weight: Z(i) is constant for even i and the sign
// representation along the double cover for odd i.
struct LocalWeight {
    long i = 0;
    bool odd() const { return ((i % 2) + 2) % 2 == 1; }
};

namespace detail {

struct OrbitStructure {
    // per dimension: representatives (lex-least in their orbit), and for
    // every simplex its rep plus the sign of tau on the rep
    std::vector<std::vector<Simplex>> reps;
    std::vector<std::map<Simplex, long>> rep_index;

    const RealComplex* x = nullptr;

    bool is_rep(const Simplex& s) const {
        const Simplex t = x->tau_simplex(s);
        return s <= t;
    }
    Simplex rep_of(const Simplex& s) const {
        Simplex t = x->tau_simplex(s);
        return s <= t ? s : t;
    }
};

inline OrbitStructure orbit_structure(const RealComplex& x) {
    OrbitStructure o;
    o.x = &x;
    long d = x.cx.dim();
    o.reps.resize(static_cast<size_t>(d + 1));
    o.rep_index.resize(static_cast<size_t>(d + 1));
    for (long p = 0; p <= d; ++p) {
        for (const auto& s : x.cx.simplices_of_dim(p))
            if (o.is_rep(s)) o.reps[static_cast<size_t>(p)].push_back(s);
        o.rep_index[static_cast<size_t>(p)] = index_of(o.reps[static_cast<size_t>(p)]);
    }
    return o;
}

} // namespace detail

// Equivariant cochains Hom_{Z[G]}(C_*(X), Z(i)) of a free Real complex;
// sigma acts on Z(i) by (-1)^i. One generator per cell orbit; the value
// on the partner cell is sign-transported.
inline CochainComplex twisted_cochain_complex(const RealComplex& x, LocalWeight w) {
    require_valid(x);
    if (!x.is_free())
        fail(ErrorCode::NotFreeAction, "twisted coefficients need a free action");
    auto orb = detail::orbit_structure(x);
    const long conj = w.odd() ? -1 : 1;
    long d = x.cx.dim();

    CochainComplex out;
    out.lowest = 0;
    for (long p = 0; p <= d; ++p)
        out.terms.push_back(free_presentation(static_cast<long>(orb.reps[static_cast<size_t>(p)].size())));
    for (long p = 0; p + 1 <= d; ++p) {
        const auto& tops = orb.reps[static_cast<size_t>(p + 1)];
        const auto& fidx = orb.rep_index[static_cast<size_t>(p)];
        IntMat m(static_cast<long>(tops.size()), static_cast<long>(orb.reps[static_cast<size_t>(p)].size()));
        for (size_t si = 0; si < tops.size(); ++si) {
            const Simplex& s = tops[si];
            for (size_t k = 0; k < s.size(); ++k) {
                Simplex f = s;
                f.erase(f.begin() + static_cast<long>(k));
                long face_sign = (k % 2 == 0) ? 1 : -1;
                Simplex r = orb.rep_of(f);
                long coef = face_sign;
                if (r != f) coef *= conj * x.tau_sign(r);
                m.at(static_cast<long>(si), fidx.at(r)) += coef;
            }
        }
        out.diffs.emplace_back(out.terms[static_cast<size_t>(p)], out.terms[static_cast<size_t>(p + 1)], m);
    }
    out.validate();
    return out;
}

inline FGAbelianGroup twisted_cohomology(const RealComplex& x, LocalWeight w, long p) {
    return cohomology(twisted_cochain_complex(x, w), p);
}

// Matrix of tau^# on p-cochains: (tau^# f)(s) = tau_sign(s) f(tau s).
inline IntMat cochain_involution_matrix(const RealComplex& x, long p) {
    auto cells = x.cx.simplices_of_dim(p);
    auto idx = detail::index_of(cells);
    IntMat m(static_cast<long>(cells.size()), static_cast<long>(cells.size()));
    for (size_t i = 0; i < cells.size(); ++i) {
        Simplex t = x.tau_simplex(cells[i]);
        m.at(static_cast<long>(i), idx.at(t)) = x.tau_sign(cells[i]);
    }
    return m;
}

// The simplicial cochain complex of X as a bounded complex of
// G-modules, sigma = tau^# twisted by (-1)^i.
inline GComplex equivariant_cochain_gcomplex(const RealComplex& x, LocalWeight w) {
    require_valid(x);
    CochainComplex c = cochain_complex(x.cx);
    GComplex out;
    out.lowest = c.lowest;
    for (long q = c.lowest; q <= c.highest(); ++q) {
        IntMat sigma = cochain_involution_matrix(x, q);
        if (w.odd()) sigma = sigma.scaled(-1);
        out.terms.emplace_back(c.term_at(q), sigma);
        if (q < c.highest()) out.diffs.push_back(c.diff_at(q).mat);
    }
    out.validate();
    return out;
}

// Borel equivariant cohomology H^n(G, C^*(X; Z(i))) by group
// hypercohomology. For a free action this computes H^n(X/G, Z(i)) in
// every degree; it is the derived-functor route the Cartan-Leray
// spectral sequence bookkeeps.
inline FGAbelianGroup borel_equivariant_cohomology(const RealComplex& x, LocalWeight w, long n) {
    return hypercohomology(equivariant_cochain_gcomplex(x, w), n);
}

// H^q(X; Z) as a module over G via the induced action of tau.
inline InvolutiveModule cohomology_with_involution(const RealComplex& x, long q) {
    require_valid(x);
    CochainComplex c = cochain_complex(x.cx);
    if (q < 0 || q > x.cx.dim())
        return trivial_action(trivial_presentation());
    Subquotient h = cohomology_data(c, q);
    GroupMap ind = induced_on_homology(h, h, cochain_involution_matrix(x, q));
    ind.validate();
    InvolutiveModule m(h.pres, ind.mat);
    m.validate();
    return m;
}

/****************************************************
 *        Bredon equivariant cochain complex
 ***************************************************/

// Coefficient system for G = Z/2 in the shape KR needs: one graded
// group at free orbits, one at fixed points, a structure map between
// them and a degreewise involution on the free value. Everything is
// stored over one period of 8 and read mod 8.
struct KRCoefficientSystem {
    std::array<FGAbelianGroup, 8> free_value;  // KU^q at the free orbit
    std::array<FGAbelianGroup, 8> fixed_value; // KO^q at the fixed point
    std::array<IntMat, 8> structure;           // KO^q -> KU^q
    std::array<IntMat, 8> conjugation;         // involution on KU^q

    static size_t slot(long q) { return static_cast<size_t>(((q % 8) + 8) % 8); }

    const FGAbelianGroup& ku(long q) const { return free_value[slot(q)]; }
    const FGAbelianGroup& ko(long q) const { return fixed_value[slot(q)]; }
    Presentation ku_pres(long q) const { return canonical_presentation(ku(q)); }
    Presentation ko_pres(long q) const { return canonical_presentation(ko(q)); }

    void validate() const {
        for (long q = -8; q < 0; ++q) {
            if (ku(q) != ku(q + 2)) fail(ErrorCode::BadInput, "KU table is not 2-periodic");
            Presentation kup = ku_pres(q), kop = ko_pres(q);
            GroupMap c(kop, kup, structure[slot(q)]);
            c.validate();
            GroupMap conj(kup, kup, conjugation[slot(q)]);
            conj.validate();
            if (!maps_equal(compose(conj, conj), identity_map(kup)))
                fail(ErrorCode::BadInput, "conjugation is not an involution");
            // complexified classes are conjugation-invariant
            if (!maps_equal(compose(conj, c), c))
                fail(ErrorCode::BadInput, "structure map is not conjugation-invariant");
        }
    }
};

// C_G^*(X; KR^q): degree-p term is a KU^q summand per free p-cell orbit
// plus a KO^q summand per fixed p-cell; the differential is the
// simplicial coboundary threaded through structure/conjugation maps.
inline CochainComplex bredon_cochain_complex(const RealComplex& x, const KRCoefficientSystem& m,
                                             long q) {
    require_valid(x);
    auto orb = detail::orbit_structure(x);
    long d = x.cx.dim();

    CochainComplex out;
    out.lowest = 0;
    std::vector<SumLayout> layouts;
    std::vector<std::vector<Simplex>> reps = orb.reps;
    for (long p = 0; p <= d; ++p) {
        std::vector<Presentation> parts;
        for (const auto& s : reps[static_cast<size_t>(p)])
            parts.push_back(x.simplex_fixed(s) ? m.ko_pres(q) : m.ku_pres(q));
        layouts.push_back(direct_sum_presentations(parts));
        out.terms.push_back(layouts.back().pres);
    }
    for (long p = 0; p + 1 <= d; ++p) {
        const auto& tops = reps[static_cast<size_t>(p + 1)];
        const auto& faces = reps[static_cast<size_t>(p)];
        const auto& fidx = orb.rep_index[static_cast<size_t>(p)];
        IntMat mat(out.terms[static_cast<size_t>(p + 1)].gens, out.terms[static_cast<size_t>(p)].gens);
        for (size_t si = 0; si < tops.size(); ++si) {
            const Simplex& s = tops[si];
            const bool s_fixed = x.simplex_fixed(s);
            long row0 = layouts[static_cast<size_t>(p + 1)].gen_offset[si];
            for (size_t k = 0; k < s.size(); ++k) {
                Simplex f = s;
                f.erase(f.begin() + static_cast<long>(k));
                Int face_sign = (k % 2 == 0) ? 1 : -1;
                Simplex r = orb.rep_of(f);
                long col0 = layouts[static_cast<size_t>(p)].gen_offset[static_cast<size_t>(fidx.at(r))];
                const bool f_fixed = x.simplex_fixed(f);
                IntMat block(0, 0);
                if (s_fixed) {
                    if (!f_fixed) fail(ErrorCode::InvalidComplex, "fixed cell with non-fixed face");
                    block = IntMat::identity(m.ko_pres(q).gens);
                } else if (f_fixed) {
                    block = m.structure[KRCoefficientSystem::slot(q)];
                } else if (r == f) {
                    block = IntMat::identity(m.ku_pres(q).gens);
                } else {
                    block = m.conjugation[KRCoefficientSystem::slot(q)].scaled(x.tau_sign(r));
                }
                for (long bi = 0; bi < block.rows(); ++bi)
                    for (long bj = 0; bj < block.cols(); ++bj)
                        mat.at(row0 + bi, col0 + bj) += face_sign * block.at(bi, bj);
            }
        }
        out.diffs.emplace_back(out.terms[static_cast<size_t>(p)], out.terms[static_cast<size_t>(p + 1)], mat);
    }
    out.validate();
    return out;
}

inline FGAbelianGroup bredon_cohomology(const RealComplex& x, const KRCoefficientSystem& m,
                                        long q, long p) {
    return cohomology(bredon_cochain_complex(x, m, q), p);
}

/****************************************************
 *               standard model builders
 ***************************************************/

namespace models {

// S^d with the identity involution: boundary of a (d+1)-simplex.
inline RealComplex sphere_trivial(long d) {
    if (d < 0) fail(ErrorCode::UnsupportedParams, "sphere dimension must be >= 0");
    int n = static_cast<int>(d) + 2;
    std::vector<Simplex> maximal;
    for (int omit = 0; omit < n; ++omit) {
        Simplex s;
        for (int v = 0; v < n; ++v)
            if (v != omit) s.push_back(v);
        maximal.push_back(s);
    }
    RealComplex x;
    x.cx = from_maximal(n, maximal);
    x.tau.resize(static_cast<size_t>(n));
    for (int v = 0; v < n; ++v) x.tau[static_cast<size_t>(v)] = v;
    require_valid(x);
    return x;
}

// The octahedral S^{3,0}: two-sphere with the antipodal involution.
// Vertices 0,1,2 and their antipodes 3,4,5.
inline RealComplex sphere_antipodal() {
    std::vector<Simplex> tris;
    for (int a : {0, 3})
        for (int b : {1, 4})
            for (int c : {2, 5}) tris.push_back({a, b, c});
    RealComplex x;
    x.cx = from_maximal(6, tris);
    x.tau = {3, 4, 5, 0, 1, 2};
    require_valid(x);
    return x;
}

// A free orbit of two points.
inline RealComplex free_orbit() {
    RealComplex x;
    x.cx = from_maximal(2, {{0}, {1}});
    x.tau = {1, 0};
    require_valid(x);
    return x;
}

namespace detail_models {

// orientation assignment over the dual graph; nullopt if nonorientable
inline std::optional<std::vector<int>> orient_triangles(const SimplicialComplex& c) {
    auto tris = c.simplices_of_dim(2);
    auto edges = c.simplices_of_dim(1);
    auto eidx = kr::detail::index_of(edges);
    std::vector<std::vector<long>> edge_tris(edges.size());
    for (size_t t = 0; t < tris.size(); ++t)
        for (size_t k = 0; k < 3; ++k) {
            Simplex e = tris[t];
            e.erase(e.begin() + static_cast<long>(k));
            edge_tris[static_cast<size_t>(eidx.at(e))].push_back(static_cast<long>(t));
        }
    // induced orientation of edge {a,b} (a<b) inside oriented triangle:
    // +1 if (a,b) appears in the cyclic sorted order an even permutation away
    auto edge_coeff = [&](const Simplex& tri, size_t omit) { return (omit % 2 == 0) ? 1 : -1; };

    std::vector<int> orient(tris.size(), 0);
    for (size_t seed = 0; seed < tris.size(); ++seed) {
        if (orient[seed] != 0) continue;
        orient[seed] = 1;
        std::vector<long> stack{static_cast<long>(seed)};
        while (!stack.empty()) {
            long t = stack.back();
            stack.pop_back();
            for (size_t k = 0; k < 3; ++k) {
                Simplex e = tris[static_cast<size_t>(t)];
                e.erase(e.begin() + static_cast<long>(k));
                for (long t2 : edge_tris[static_cast<size_t>(eidx.at(e))]) {
                    if (t2 == t) continue;
                    size_t k2 = 0;
                    for (size_t kk = 0; kk < 3; ++kk) {
                        Simplex e2 = tris[static_cast<size_t>(t2)];
                        e2.erase(e2.begin() + static_cast<long>(kk));
                        if (e2 == e) { k2 = kk; break; }
                    }
                    // coherent: the two induced orientations on e are opposite
                    int need = -orient[static_cast<size_t>(t)] * edge_coeff(tris[static_cast<size_t>(t)], k) *
                               edge_coeff(tris[static_cast<size_t>(t2)], k2);
                    if (orient[static_cast<size_t>(t2)] == 0) {
                        orient[static_cast<size_t>(t2)] = need;
                        stack.push_back(t2);
                    } else if (orient[static_cast<size_t>(t2)] != need) {
                        return std::nullopt;
                    }
                }
            }
        }
    }
    return orient;
}

inline bool is_connected(const SimplicialComplex& c) {
    if (c.n_vertices == 0) return true;
    std::vector<int> seen(static_cast<size_t>(c.n_vertices), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    auto edges = c.simplices_of_dim(1);
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (const auto& e : edges) {
            int other = -1;
            if (e[0] == v) other = e[1];
            else if (e[1] == v) other = e[0];
            if (other >= 0 && !seen[static_cast<size_t>(other)]) {
                seen[static_cast<size_t>(other)] = 1;
                stack.push_back(other);
            }
        }
    }
    for (int s : seen)
        if (!s) return false;
    return true;
}

// the minimal 6-vertex triangulation of RP^2
inline SimplicialComplex rp2_six() {
    return from_maximal(6, {{0, 1, 5}, {0, 1, 2}, {0, 2, 3}, {0, 3, 4}, {0, 4, 5},
                            {1, 2, 4}, {1, 3, 4}, {1, 3, 5}, {2, 3, 5}, {2, 4, 5}});
}

// connected sum along the lexicographically first triangles
inline SimplicialComplex connected_sum(const SimplicialComplex& a, const SimplicialComplex& b) {
    auto ta = a.simplices_of_dim(2).front();
    auto tb = b.simplices_of_dim(2).front();
    // relabel b: glued vertices map onto ta, the rest shift up
    std::vector<int> map_b(static_cast<size_t>(b.n_vertices), -1);
    for (int k = 0; k < 3; ++k) map_b[static_cast<size_t>(tb[static_cast<size_t>(k)])] = ta[static_cast<size_t>(k)];
    int next = a.n_vertices;
    for (int v = 0; v < b.n_vertices; ++v)
        if (map_b[static_cast<size_t>(v)] < 0) map_b[static_cast<size_t>(v)] = next++;

    std::vector<Simplex> tris;
    for (const auto& t : a.simplices_of_dim(2))
        if (t != ta) tris.push_back(t);
    for (const auto& t : b.simplices_of_dim(2)) {
        if (t == tb) continue;
        Simplex s;
        for (int v : t) s.push_back(map_b[static_cast<size_t>(v)]);
        std::sort(s.begin(), s.end());
        tris.push_back(s);
    }
    return from_maximal(next, tris);
}

// nonorientable closed surface of Euler characteristic 1 - g
inline SimplicialComplex nonorientable_surface(long g) {
    SimplicialComplex n = rp2_six();
    for (long k = 0; k < g; ++k) n = connected_sum(n, rp2_six());
    if (n.euler_characteristic() != 1 - g)
        fail(ErrorCode::InvalidComplex, "nonorientable surface has wrong Euler characteristic");
    return n;
}

// all Z/2 cocycles vanishing on a spanning tree (one per H^1 class)
inline std::vector<std::vector<int>> z2_cocycles_mod_tree(const SimplicialComplex& c) {
    auto edges = c.simplices_of_dim(1);
    auto tris = c.simplices_of_dim(2);
    auto eidx = kr::detail::index_of(edges);
    // spanning tree via BFS on vertices
    std::vector<int> in_tree(edges.size(), 0);
    std::vector<int> seen(static_cast<size_t>(c.n_vertices), 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (size_t e = 0; e < edges.size(); ++e) {
            int other = -1;
            if (edges[e][0] == v) other = edges[e][1];
            else if (edges[e][1] == v) other = edges[e][0];
            if (other >= 0 && !seen[static_cast<size_t>(other)]) {
                seen[static_cast<size_t>(other)] = 1;
                in_tree[e] = 1;
                stack.push_back(other);
            }
        }
    }
    std::vector<long> free_vars;
    std::vector<long> var_of_edge(edges.size(), -1);
    for (size_t e = 0; e < edges.size(); ++e)
        if (!in_tree[e]) {
            var_of_edge[e] = static_cast<long>(free_vars.size());
            free_vars.push_back(static_cast<long>(e));
        }
    // GF(2) system: each triangle's three edges sum to zero
    std::vector<std::vector<int>> rows;
    for (const auto& t : tris) {
        std::vector<int> row(free_vars.size(), 0);
        for (size_t k = 0; k < 3; ++k) {
            Simplex e = t;
            e.erase(e.begin() + static_cast<long>(k));
            long var = var_of_edge[static_cast<size_t>(eidx.at(e))];
            if (var >= 0) row[static_cast<size_t>(var)] ^= 1;
        }
        rows.push_back(row);
    }
    // nullspace basis by elimination
    size_t nv = free_vars.size();
    std::vector<long> pivot_col;
    size_t r = 0;
    for (size_t col = 0; col < nv && r < rows.size(); ++col) {
        size_t sel = r;
        while (sel < rows.size() && !rows[sel][col]) ++sel;
        if (sel == rows.size()) continue;
        std::swap(rows[r], rows[sel]);
        for (size_t i = 0; i < rows.size(); ++i)
            if (i != r && rows[i][col])
                for (size_t j = 0; j < nv; ++j) rows[i][j] ^= rows[r][j];
        pivot_col.push_back(static_cast<long>(col));
        ++r;
    }
    std::vector<std::vector<int>> basis;
    std::vector<int> is_pivot(nv, 0);
    for (long pc : pivot_col) is_pivot[static_cast<size_t>(pc)] = 1;
    for (size_t col = 0; col < nv; ++col) {
        if (is_pivot[col]) continue;
        std::vector<int> sol(nv, 0);
        sol[col] = 1;
        for (size_t i = 0; i < pivot_col.size(); ++i)
            if (rows[i][col]) sol[static_cast<size_t>(pivot_col[i])] = 1;
        basis.push_back(sol);
    }
    // expand every nonzero combination into an edge-indexed cocycle
    std::vector<std::vector<int>> out;
    size_t count = size_t(1) << basis.size();
    if (basis.size() > 12) fail(ErrorCode::UnsupportedParams, "H^1 too large to enumerate");
    for (size_t mask = 1; mask < count; ++mask) {
        std::vector<int> w(edges.size(), 0);
        for (size_t b = 0; b < basis.size(); ++b)
            if (mask & (size_t(1) << b))
                for (size_t v = 0; v < nv; ++v)
                    if (basis[b][v]) w[static_cast<size_t>(free_vars[v])] ^= 1;
        out.push_back(w);
    }
    return out;
}

// double cover defined by an edge cocycle, with the deck involution
inline RealComplex double_cover(const SimplicialComplex& base, const std::vector<int>& w) {
    auto edges = base.simplices_of_dim(1);
    auto eidx = kr::detail::index_of(edges);
    auto wsign = [&](int u, int v) {
        Simplex e{std::min(u, v), std::max(u, v)};
        return w[static_cast<size_t>(eidx.at(e))];
    };
    int n = base.n_vertices;
    std::vector<Simplex> tris;
    for (const auto& t : base.simplices_of_dim(2)) {
        int a = t[0], b = t[1], c = t[2];
        for (int s = 0; s < 2; ++s) {
            int sa = s, sb = s ^ wsign(a, b), sc = s ^ wsign(a, c);
            tris.push_back({a + sa * n, b + sb * n, c + sc * n});
            std::sort(tris.back().begin(), tris.back().end());
        }
    }
    RealComplex x;
    x.cx = from_maximal(2 * n, tris);
    x.tau.resize(static_cast<size_t>(2 * n));
    for (int v = 0; v < n; ++v) {
        x.tau[static_cast<size_t>(v)] = v + n;
        x.tau[static_cast<size_t>(v + n)] = v;
    }
    require_valid(x);
    return x;
}

// triangulated rectangle grid with g punched interior holes
inline SimplicialComplex planar_with_holes(long g) {
    const int R = 5;
    const int C = static_cast<int>(std::max<long>(3, 3 * g + 2));
    auto vid = [&](int r, int c) { return r * C + c; };
    std::set<int> removed;
    for (long j = 1; j <= g; ++j) removed.insert(vid(2, static_cast<int>(3 * j - 1)));
    std::vector<Simplex> tris;
    for (int r = 0; r + 1 < R; ++r)
        for (int c = 0; c + 1 < C; ++c) {
            std::array<Simplex, 2> two = {Simplex{vid(r, c), vid(r + 1, c), vid(r, c + 1)},
                                          Simplex{vid(r + 1, c), vid(r, c + 1), vid(r + 1, c + 1)}};
            for (Simplex s : two) {
                bool keep = true;
                for (int v : s)
                    if (removed.count(v)) keep = false;
                if (keep) {
                    std::sort(s.begin(), s.end());
                    tris.push_back(s);
                }
            }
        }
    // compact the vertex ids
    std::map<int, int> remap;
    for (const auto& t : tris)
        for (int v : t) remap.emplace(v, 0);
    int next = 0;
    for (auto& [v, nv] : remap) nv = next++;
    for (auto& t : tris) {
        for (int& v : t) v = remap.at(v);
        std::sort(t.begin(), t.end());
    }
    SimplicialComplex out = from_maximal(next, tris);
    if (out.euler_characteristic() != 1 - g)
        fail(ErrorCode::InvalidComplex, "planar piece has wrong Euler characteristic");
    return out;
}

} // namespace detail_models

// Genus-g orientable surface with a free orientation-reversing
// involution: the orientation double cover of the nonorientable closed
// surface of Euler characteristic 1 - g, with its deck involution.
inline RealComplex surface_free(long g) {
    if (g < 0) fail(ErrorCode::UnsupportedParams, "genus must be >= 0");
    SimplicialComplex base = detail_models::nonorientable_surface(g);
    for (const auto& w : detail_models::z2_cocycles_mod_tree(base)) {
        RealComplex cover = detail_models::double_cover(base, w);
        if (!detail_models::is_connected(cover.cx)) continue;
        if (!detail_models::orient_triangles(cover.cx)) continue;
        if (cover.cx.euler_characteristic() != 2 - 2 * g)
            fail(ErrorCode::InvalidComplex, "double cover has wrong Euler characteristic");
        return cover;
    }
    fail(ErrorCode::InvalidComplex, "no orientation double cover found");
}

// Genus-g surface with the top-bottom reflection: the double of a disk
// with g holes across its full boundary. X^G is g+1 circles and the
// quotient is the planar piece itself. The planar piece is subdivided
// once so no triangle has all three vertices on the boundary.
inline RealComplex surface_reflection(long g) {
    if (g < 0) fail(ErrorCode::UnsupportedParams, "genus must be >= 0");
    SimplicialComplex p0 = detail_models::planar_with_holes(g);
    RealComplex p_id;
    p_id.cx = p0;
    p_id.tau.resize(static_cast<size_t>(p0.n_vertices));
    for (int v = 0; v < p0.n_vertices; ++v) p_id.tau[static_cast<size_t>(v)] = v;
    SimplicialComplex p = barycentric_subdivide(p_id).cx;
    auto tris = p.simplices_of_dim(2);
    auto edges = p.simplices_of_dim(1);
    // boundary vertices: endpoints of edges lying in exactly one triangle
    std::map<Simplex, int> edge_count;
    for (const auto& t : tris)
        for (size_t k = 0; k < 3; ++k) {
            Simplex e = t;
            e.erase(e.begin() + static_cast<long>(k));
            edge_count[e]++;
        }
    std::set<int> boundary;
    for (const auto& [e, cnt] : edge_count)
        if (cnt == 1) { boundary.insert(e[0]); boundary.insert(e[1]); }

    std::vector<int> top(static_cast<size_t>(p.n_vertices)), bot(static_cast<size_t>(p.n_vertices));
    int next = 0;
    for (int v = 0; v < p.n_vertices; ++v)
        if (boundary.count(v)) top[static_cast<size_t>(v)] = bot[static_cast<size_t>(v)] = next++;
        else top[static_cast<size_t>(v)] = next++;
    for (int v = 0; v < p.n_vertices; ++v)
        if (!boundary.count(v)) bot[static_cast<size_t>(v)] = next++;

    std::vector<Simplex> dtris;
    for (const auto& t : tris) {
        Simplex a, b;
        for (int v : t) { a.push_back(top[static_cast<size_t>(v)]); b.push_back(bot[static_cast<size_t>(v)]); }
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        dtris.push_back(a);
        dtris.push_back(b);
    }
    RealComplex x;
    x.cx = from_maximal(next, dtris);
    x.tau.resize(static_cast<size_t>(next));
    for (int v = 0; v < p.n_vertices; ++v) {
        x.tau[static_cast<size_t>(top[static_cast<size_t>(v)])] = bot[static_cast<size_t>(v)];
        x.tau[static_cast<size_t>(bot[static_cast<size_t>(v)])] = top[static_cast<size_t>(v)];
    }
    require_valid(x);
    if (x.cx.euler_characteristic() != 2 - 2 * g)
        fail(ErrorCode::InvalidComplex, "reflection surface has wrong Euler characteristic");
    return x;
}

// Affine-curve 1-complex with lambda fixed circles: lambda hexagons of
// fixed vertices joined through one free hub orbit; for lambda = 0 a
// free square circle.
inline RealComplex graph_model(long lambda) {
    if (lambda < 0) fail(ErrorCode::UnsupportedParams, "lambda must be >= 0");
    if (lambda == 0) {
        RealComplex x;
        x.cx = from_maximal(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
        x.tau = {2, 3, 0, 1};
        require_valid(x);
        return x;
    }
    std::vector<Simplex> edges;
    int n = 0;
    std::vector<int> anchors;
    for (long j = 0; j < lambda; ++j) {
        for (int k = 0; k < 6; ++k) edges.push_back({n + k, n + (k + 1) % 6});
        anchors.push_back(n);
        n += 6;
    }
    int hub_a = n, hub_b = n + 1;
    n += 2;
    for (int a : anchors) {
        edges.push_back({a, hub_a});
        edges.push_back({a, hub_b});
    }
    for (auto& e : edges) std::sort(e.begin(), e.end());
    RealComplex x;
    x.cx = from_maximal(n, edges);
    x.tau.resize(static_cast<size_t>(n));
    for (int v = 0; v < n - 2; ++v) x.tau[static_cast<size_t>(v)] = v;
    x.tau[static_cast<size_t>(hub_a)] = hub_b;
    x.tau[static_cast<size_t>(hub_b)] = hub_a;
    require_valid(x);
    return x;
}

} // namespace models

/****************************************************
 *      the sphere retraction of the coordinate ring
 ***************************************************/

// h_t(z) = (a_j + i t b_j) / R(t), R(t) = sqrt(sum a^2 - t^2 sum b^2),
// the equivariant deformation retraction of V(C) onto S^d. The only
// floating-point computation in the library.
inline std::vector<std::complex<double>> sphere_retraction(
    const std::vector<std::complex<double>>& z, double t) {
    if (t < 0.0 || t > 1.0) fail(ErrorCode::BadInput, "t must lie in [0,1]");
    std::complex<double> sum_zz{0.0, 0.0};
    double sum_a2 = 0.0, sum_b2 = 0.0;
    for (const auto& c : z) {
        sum_zz += c * c;
        sum_a2 += c.real() * c.real();
        sum_b2 += c.imag() * c.imag();
    }
    if (std::abs(sum_zz - std::complex<double>(1.0, 0.0)) > 1e-12)
        fail(ErrorCode::NotOnVariety, "sum z_j^2 != 1");
    double r2 = sum_a2 - t * t * sum_b2;
    if (r2 <= 0.0) fail(ErrorCode::DegenerateRadius, "R(t)^2 <= 0 cannot happen on the variety");
    double r = std::sqrt(r2);
    std::vector<std::complex<double>> h;
    h.reserve(z.size());
    for (const auto& c : z) h.emplace_back(c.real() / r, t * c.imag() / r);
    return h;
}

/****************************************************
 *                Euler characteristic
 ***************************************************/

inline long euler_characteristic(const RealComplex& x) { return x.cx.euler_characteristic(); }

} // namespace kr
