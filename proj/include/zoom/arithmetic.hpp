#pragma once

#include "zoom/numeric.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace zoom {

struct PrimePower {
    u64 p;
    unsigned e;
    bool operator==(const PrimePower&) const = default;
};

// Sorted by prime, exponents >= 1. Empty for n = 1.
struct Factorization {
    std::vector<PrimePower> terms;

    u64 value() const;
    u64 radical() const;
    bool squarefree() const;
    bool operator==(const Factorization&) const = default;
};

Factorization factor(u64 n);

// smallest-prime-factor table on [0, n]
class SpfSieve {
public:
    explicit SpfSieve(std::uint32_t n);
    std::uint32_t limit() const { return n_; }
    std::uint32_t spf(std::uint32_t k) const { return spf_[k]; }
    Factorization factor(std::uint32_t k) const;
    // squarefree divisors of k with their Mobius sign, e.g. 12 -> (1,+1),(2,-1),(3,-1),(6,+1)
    void signed_squarefree_divisors(std::uint32_t k, std::vector<std::pair<std::uint32_t, int>>& out) const;
    const std::vector<std::uint32_t>& primes() const { return primes_; }

private:
    std::uint32_t n_;
    std::vector<std::uint32_t> spf_;
    std::vector<std::uint32_t> primes_;
};

std::vector<std::uint32_t> primes_up_to(std::uint32_t n);

int mobius(const Factorization& f);
u64 euler_phi(const Factorization& f);
u64 tau(const Factorization& f);
Rat phi_ratio(const Factorization& f);
std::pair<u64, u64> squarefree_decompose(const Factorization& f);
Rat psi1(const Factorization& f);
Rat psi(const Factorization& f);
Rat h_function(const Factorization& f);

int mobius(u64 n);
u64 euler_phi(u64 n);
u64 tau(u64 n);
Rat phi_ratio(u64 n);
std::pair<u64, u64> squarefree_decompose(u64 n);
Rat psi1(u64 n);
Rat psi(u64 n);
Rat h_function(u64 n);

// sum of phi(n) over n <= floor(x)
u64 sigma_pagelot(const Rat& x);
// prefix[k] = sum_{n<=k} phi(n)
std::vector<u64> totient_prefix(std::uint32_t n);

// squarefree divisors of n with Mobius signs
std::vector<std::pair<u64, int>> signed_squarefree_divisors(const Factorization& f);
std::vector<u64> divisors(const Factorization& f);

} // namespace zoom
