#pragma once

#include <random>

#include "padicsub/mask.hpp"

namespace padicsub::testing {

/// Random mask on the grid {k/p^{N+1}} with small complex-rational
/// coefficients, normalized exactly to sum p via the k = 0 entry.
/// With top_coset = false the support keeps away from [(p-1)/p, 1), so no
/// subdivision index ever overflows the unit interval.
inline Mask random_mask(std::mt19937& rng, long p, long N, bool top_coset = true) {
    long L = pow_z(p, N + 1).get_si();
    long kmax = top_coset ? L : pow_z(p, N).get_si() * (p - 1) + 1;
    std::uniform_int_distribution<long> numd(-3, 3);
    std::uniform_int_distribution<int> keep(0, 3);
    Sequence coeffs(p);
    GaussianRational partial;
    for (long k = 1; k < kmax; ++k) {
        if (keep(rng) == 0) continue;  // sparse supports too
        mpq_class re(numd(rng), 2), im(numd(rng), 2);
        re.canonicalize();
        im.canonicalize();
        GaussianRational v{re, im};
        coeffs.add(IpElement::canonical(p, k, N + 1), v);
        partial += v;
    }
    coeffs.add(IpElement(p), GaussianRational(p) - partial);
    return Mask(p, N, coeffs);
}

/// Random mask constant on the cosets of {0, 1/p, ..., (p-1)/p}: one value
/// per residue class k mod p^N, class values summing to 1. This is the class
/// on which the word-product identities are exact under the mod-1
/// convention; every shipped fixture belongs to it.
inline Mask random_coset_invariant_mask(std::mt19937& rng, long p, long N) {
    long classes = pow_z(p, N).get_si();
    std::uniform_int_distribution<long> numd(-3, 3);
    std::vector<GaussianRational> w(static_cast<std::size_t>(classes));
    GaussianRational partial;
    for (long r = 1; r < classes; ++r) {
        mpq_class re(numd(rng), 2), im(numd(rng), 2);
        re.canonicalize();
        im.canonicalize();
        w[static_cast<std::size_t>(r)] = GaussianRational(re, im);
        partial += w[static_cast<std::size_t>(r)];
    }
    w[0] = GaussianRational(1) - partial;
    Sequence coeffs(p);
    long L = pow_z(p, N + 1).get_si();
    for (long k = 0; k < L; ++k)
        coeffs.add(IpElement::canonical(p, k, N + 1), w[static_cast<std::size_t>(k % classes)]);
    return Mask(p, N, coeffs);
}

inline Mask fixture(const char* name) {
    return load_mask(std::string(FIXTURES_DIR) + "/" + name);
}

}  // namespace padicsub::testing
