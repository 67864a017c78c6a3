#pragma once

// Indices of inseparability and the generalized Hasse-Herbrand functions.

#include <cstdint>
#include <optional>
#include <vector>

#include "ramify/extnat.hpp"
#include "ramify/plfun.hpp"
#include "ramify/series.hpp"

namespace ramify {

/// tilde-i_0 .. tilde-i_nu. INFINITY means no qualifying nonzero digit below
/// `horizon`.
struct TildeIndices {
    std::vector<ExtNat> values;
    std::int64_t horizon = 0;
};

struct InsepProfile {
    std::uint32_t p = 2;
    std::int64_t n = 0;
    std::int64_t a = 0;  // n = a p^nu
    int nu = 0;
    std::vector<ExtNat> tilde;
    std::vector<std::int64_t> i;
    ExtNat vLp;
    std::int64_t horizon = 0;
};

TildeIndices tilde_indices(const DigitSeries& s, int nu);

/// Downward recursion i_nu = 0, i_j = min(tilde_j, i_{j+1} + v_L(p)).
/// Throws IndexUnresolved when some i_j cannot be certified below the horizon.
std::vector<std::int64_t> indices(const TildeIndices& tilde, ExtNat vLp);

/// min over j <= j1 <= nu of tilde_{j1} + (j1 - j) v_L(p), all ExtNat.
std::vector<ExtNat> closed_form_indices(const std::vector<ExtNat>& tilde, ExtNat vLp);

InsepProfile resolve_profile(const DigitSeries& s, ExtNat vLp);

/// Checks 0 = i_nu < i_{nu-1} <= ... <= i_0, i_j <= i_{j+1} + v_L(p), and the
/// closed form. Throws TheoremViolation naming the failed link.
void check_chain(const InsepProfile& prof);

/// i_j + p^j x.
Line phi_tilde(const InsepProfile& prof, int j);

/// min over j0 <= j of phi_tilde(j0).
PLFunction phi(const InsepProfile& prof, int j);

struct BinomVal {
    int value = 0;          // v_p(binom(b, c))
    int lower_bound = 0;    // v_p(b) - v_p(c)
    bool equality = false;  // v_p(b) >= v_p(c) and c a power of p
};

/// v_p(binom(b, c)) for b >= c >= 1, with the lower bound certificate.
BinomVal binom_val(std::int64_t b, std::int64_t c, std::uint32_t p);

/// min over h with a_h != 0 and j0 <= j of h + v_L(binom(h+n, p^j0)) + p^j0 x.
Rational phi_binomial(const DigitSeries& s, ExtNat vLp, int j, const Rational& x);

/// Relative extension top/base with its digit series and resolved profile.
struct ExtensionAnalysis {
    const Floor* top = nullptr;
    const Floor* base = nullptr;
    DigitSeries digits;
    InsepProfile profile;
};

/// Expands pi_base in powers of pi_top (default horizon unless given) and
/// resolves the indices.
ExtensionAnalysis analyze_extension(const Floor& top, const Floor& base, std::optional<std::int64_t> horizon = {});

} // namespace ramify
