#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <gmpxx.h>

namespace wpa {

enum class PrimalityEvidence { Deterministic, StrongProbablePrime };
const char* to_string(PrimalityEvidence e);

inline constexpr int kProbablePrimeRounds = 40;
inline constexpr unsigned long kPrimeSeed = 0x5eed2024UL;

struct PrimalityResult {
  bool prime = false;
  PrimalityEvidence evidence = PrimalityEvidence::Deterministic;
  int rounds = 0;  // Miller-Rabin bases tried
};

/// Miller-Rabin with the first twelve prime bases: exact for n < 2^64.
bool is_prime_u64(std::uint64_t n);

/// Deterministic below 2^64; above, `rounds` strong-probable-prime rounds
/// with bases drawn from a generator seeded by `seed`.
PrimalityResult test_prime(const mpz_class& n, int rounds = kProbablePrimeRounds,
                           unsigned long seed = kPrimeSeed);
inline bool is_prime(const mpz_class& n) { return test_prime(n).prime; }

/// Least prime >= x.
mpz_class next_prime(const mpz_class& x);

}  // namespace wpa
