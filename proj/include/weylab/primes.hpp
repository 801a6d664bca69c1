#pragma once

#include <cstdint>
#include <vector>

namespace weylab {

// a*b mod m and a^e mod m for 64-bit moduli.
unsigned long long mulmod_u64(unsigned long long a, unsigned long long b, unsigned long long m);
unsigned long long powmod_u64(unsigned long long a, unsigned long long e, unsigned long long m);

// Deterministic Miller-Rabin with the standard 12-base certificate,
// correct for all 64-bit inputs.
bool is_prime_u64(unsigned long long n);

// All primes in [lo, hi]; empty when the range is.
std::vector<long long> primes_in(long long lo, long long hi);

// First prime >= n; throws if the search leaves 63-bit range.
long long next_prime(long long n);

}  // namespace weylab
