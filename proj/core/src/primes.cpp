#include "wpa/primes.hpp"

#include <array>
#include <vector>

namespace wpa {
namespace {

constexpr std::array<std::uint64_t, 12> kBases{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

// Strong probable-prime test to base a; n odd, n > 3, n - 1 = d * 2^s.
bool sprp(const mpz_class& n, const mpz_class& a, const mpz_class& d, unsigned long s) {
  const mpz_class nm1 = n - 1;
  mpz_class x;
  mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  if (x == 1 || x == nm1) return true;
  for (unsigned long i = 1; i < s; ++i) {
    x = x * x % n;
    if (x == nm1) return true;
    if (x == 1) return false;
  }
  return false;
}

// Odd primes below 4096, for trial division ahead of Miller-Rabin.
const std::vector<unsigned>& small_primes() {
  static const std::vector<unsigned> primes = [] {
    std::vector<bool> composite(4096, false);
    std::vector<unsigned> out;
    for (unsigned i = 3; i < 4096; i += 2) {
      if (composite[i]) continue;
      out.push_back(i);
      for (unsigned j = i * i; j < 4096; j += 2 * i) composite[j] = true;
    }
    return out;
  }();
  return primes;
}

}  // namespace

const char* to_string(PrimalityEvidence e) {
  return e == PrimalityEvidence::Deterministic ? "deterministic" : "strong-probable-prime";
}

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : kBases) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : kBases) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

PrimalityResult test_prime(const mpz_class& n, int rounds, unsigned long seed) {
  if (n < 2) return {false, PrimalityEvidence::Deterministic, 0};
  if (mpz_sizeinbase(n.get_mpz_t(), 2) <= 64) {
    static_assert(sizeof(unsigned long) >= 8);
    return {is_prime_u64(mpz_get_ui(n.get_mpz_t())), PrimalityEvidence::Deterministic,
            static_cast<int>(kBases.size())};
  }
  if (mpz_even_p(n.get_mpz_t())) return {false, PrimalityEvidence::StrongProbablePrime, 0};
  for (unsigned p : small_primes())
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return {false, PrimalityEvidence::StrongProbablePrime, 0};
  mpz_class d = n - 1;
  unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
  mpz_fdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);

  gmp_randclass rng(gmp_randinit_mt);
  rng.seed(seed);
  const mpz_class span = n - 3;
  for (int i = 0; i < rounds; ++i) {
    mpz_class a = rng.get_z_range(span) + 2;  // a in [2, n-2]
    if (!sprp(n, a, d, s)) return {false, PrimalityEvidence::StrongProbablePrime, i + 1};
  }
  return {true, PrimalityEvidence::StrongProbablePrime, rounds};
}

mpz_class next_prime(const mpz_class& x) {
  if (x <= 2) return 2;
  mpz_class c = x;
  if (mpz_even_p(c.get_mpz_t())) ++c;
  while (!is_prime(c)) c += 2;
  return c;
}

}  // namespace wpa
