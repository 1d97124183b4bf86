#pragma once

#include "zoom/numeric.hpp"
#include "zoom/quadratic.hpp"

#include <cstdint>
#include <map>
#include <vector>

namespace zoom {

// prod_{p <= cutoff} (1-1/p)^3 (1 + 3/p - 1/p^2 - 6/(p(p+1)))
long double c1_constant(std::uint32_t prime_cutoff);
Rat c1_factor(u64 p);
// 9/(2 pi^2) (eta (1 - 2/r))^3 C1, for 0 <= eta < 1/35 and 2 <= r < 144/55
long double c2_constant(Ratio r, const Rat& eta, std::uint32_t prime_cutoff);

// Psi(n) for n in [0, X] (Psi(0) unused)
std::vector<Rat> psi_table(std::uint32_t X);

// sum over primitive (x1, x2), max <= X, tau2 <= x2/x1 <= tau1 of Psi(x1) Psi(x2) Psi(x2 - x1)
Rat sum_psi_region(std::uint32_t X, const Rat& tau1, const Rat& tau2, unsigned threads = 1);
// same sum in double precision, for X where the exact version is too slow
long double sum_psi_region_approx(std::uint32_t X, const Rat& tau1, const Rat& tau2, unsigned threads = 1);
long double psi_region_main_term(std::uint32_t X, const Rat& tau1, const Rat& tau2, std::uint32_t prime_cutoff = 1000000);

// sum of Psi(x1)Psi(x2)Psi(x2-x1) / (x2 sqrt(x1)) = sum_k coeff[k] / sqrt(k), k squarefree
struct PsiWeighted {
    std::map<u64, Rat> coeff;

    Enclosure value(unsigned bits = 64) const;
};

PsiWeighted sum_psi_weighted(std::uint32_t X, const Rat& tau1, const Rat& tau2);
long double sum_psi_weighted_approx(std::uint32_t X, const Rat& tau1, const Rat& tau2, unsigned threads = 1);
long double psi_weighted_main_term(std::uint32_t X, const Rat& tau1, const Rat& tau2, std::uint32_t prime_cutoff = 1000000);

} // namespace zoom
