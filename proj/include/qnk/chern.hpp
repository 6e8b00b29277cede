#pragma once

#include <cstdlib>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>

#include "qnk/numeric.hpp"

namespace qnk {

enum class SurfaceKind { DelPezzo, K3, Abelian, Other };

/* A surface enters every formula in this library only through its numerical
 * invariants, so that is all we store. */
struct SurfaceInvariants {
    long long euler = 0;
    long long chi_O = 0;
    long long h1_O = 0;
    SurfaceKind kind = SurfaceKind::Other;

    static SurfaceInvariants k3() { return {24, 2, 0, SurfaceKind::K3}; }
    static SurfaceInvariants abelian() { return {0, 0, 2, SurfaceKind::Abelian}; }

    // Degree 9 is the plane (euler 3); each degree step down blows up a point.
    static SurfaceInvariants del_pezzo(int degree) {
        if (degree < 1 || degree > 9) {
            throw std::invalid_argument("del Pezzo degree must be between 1 and 9");
        }
        return {12 - degree, 1, 0, SurfaceKind::DelPezzo};
    }

    static SurfaceInvariants other(long long euler, long long chi_O, long long h1_O) {
        return {euler, chi_O, h1_O, SurfaceKind::Other};
    }

    friend bool operator==(const SurfaceInvariants&, const SurfaceInvariants&) = default;
};

// A class w = (w0, w1, w2) on the base surface, stored through the numbers
// the formulas consume: rank, H.w1, w1^2 and the exact rational ch2.
struct BaseClass {
    long long rank = 0;
    long long h_dot_c1 = 0;
    long long c1_sq = 0;
    Rat ch2 = 0;

    friend bool operator==(const BaseClass&, const BaseClass&) = default;
};

struct AssumptionCheck {
    bool ok;
    std::string clause;
};

/* Admissibility of (w, S) for the moduli-space formulas: positive rank,
 * rank coprime to H.w1, and either the ideal-sheaf shape (rank 1, w1 = 0)
 * or a surface from the supported trio. The returned clause names either
 * the satisfied branch or the first violated condition. */
inline AssumptionCheck validate_assumption(const BaseClass& w, const SurfaceInvariants& s) {
    if (w.rank <= 0) return {false, "positivity clause"};
    if (std::gcd(w.rank, std::llabs(w.h_dot_c1)) != 1) return {false, "gcd clause"};
    if (w.rank == 1 && w.h_dot_c1 == 0 && w.c1_sq == 0) return {true, "clause 3-a"};
    if (s.kind == SurfaceKind::DelPezzo || s.kind == SurfaceKind::K3 ||
        s.kind == SurfaceKind::Abelian) {
        return {true, "clause 3-b"};
    }
    return {false, "surface clause"};
}

// w1^2 - 2*w0*w2
inline Rat discriminant(const BaseClass& w) {
    return Rat(w.c1_sq) - Rat(2) * w.rank * w.ch2;
}

/* Expected dimension of the moduli space labelled by (w, d):
 * disc - (w0^2 - 1)chi(O) + h1(O) - d(w0 + d). Inconsistent input classes
 * surface as a non-integral value and are rejected. */
inline Int moduli_dimension(const BaseClass& w, long long d, const SurfaceInvariants& s) {
    const Rat dim = discriminant(w) - Rat(w.rank * w.rank - 1) * s.chi_O + s.h1_O -
                    Rat(d) * (w.rank + d);
    if (!is_integral(dim)) {
        throw std::domain_error("moduli dimension is not an integer: " + to_string(dim));
    }
    return to_integer(dim);
}

// Expected dimensions (dim X + delta*d - d^2, dim X - delta*d - d^2) of the
// two Quot schemes over a base of dimension dim X.
inline std::pair<long long, long long> quot_expected_dims(long long dim_x, long long delta,
                                                          long long d) {
    return {dim_x + delta * d - d * d, dim_x - delta * d - d * d};
}

/* Intersection theory on the blow-up, C the exceptional curve: C^2 = -1,
 * pullbacks meet C in zero, pullbacks meet as downstairs. K.C = -1 follows
 * from adjunction on a rational curve and is derived, not hardcoded. */
inline long long canonical_dot_exceptional() {
    const long long genus = 0;
    const long long c_self = -1;
    return (2 * genus - 2) - c_self;
}

// ch2 of the twisted structure sheaf O_C(m), pinned by Riemann-Roch:
// chi(O_C(m)) = m + 1 must equal ch2 + (1/2)(-K).C for the class (0, C, ch2).
inline Rat exceptional_ch2(long long m) {
    const Rat chi = Rat(m) + 1;
    return chi - Rat(-canonical_dot_exceptional(), 2);
}

/* A class on the blow-up with first Chern part f^*w1 + c_coeff*C. The
 * pullback part `base` is redundant but kept explicit: the decomposition
 * v = f^*base + c_coeff*(0, C, -1/2) forces base.ch2 = ch2 + c_coeff/2,
 * and every constructor and operation preserves that identity. */
struct BlowupClass {
    BaseClass base;
    long long c_coeff = 0;
    Rat ch2 = 0;

    friend bool operator==(const BlowupClass&, const BlowupClass&) = default;
};

inline bool decomposition_consistent(const BlowupClass& v) {
    return v.base.ch2 == v.ch2 + Rat(v.c_coeff, 2) && is_half_integral(v.ch2) &&
           is_half_integral(v.base.ch2);
}

inline BlowupClass pullback(const BaseClass& w) { return {w, 0, w.ch2}; }

// f^*w - d*ch(O_C(-1)) with ch(O_C(-1)) = (0, C, -1/2); d may be negative.
inline BlowupClass class_with_deficit(const BaseClass& w, long long d) {
    return {w, -d, w.ch2 - Rat(d) * exceptional_ch2(-1)};
}

inline BlowupClass class_vd(const BaseClass& w, long long d) {
    return class_with_deficit(w, d);
}

// Units of twisting: c_coeff counts -C directions still to absorb.
inline long long deficit(const BlowupClass& v) { return -v.c_coeff; }

/* Multiplication by e^{-kC} = (1, -kC, -k^2/2). Rank and the pullback
 * curve class are untouched; c_coeff and ch2 transform with C^2 = -1 and
 * the stored pullback ch2 is recomputed from the decomposition identity. */
inline BlowupClass twist(const BlowupClass& v, long long k) {
    BlowupClass out = v;
    out.c_coeff = v.c_coeff - k * v.base.rank;
    out.ch2 = v.ch2 + Rat(k) * v.c_coeff - Rat(v.base.rank) * k * k / 2;
    out.base.ch2 = out.ch2 + Rat(out.c_coeff, 2);
    return out;
}

}  // namespace qnk
