#include "wpa/lattice.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <sstream>
#include <unordered_map>

#include "wpa/error.hpp"

namespace wpa {

std::vector<std::size_t> Subgroup::elements() const {
  std::vector<std::size_t> out;
  out.reserve(order);
  for (std::size_t w = 0; w < bits.size(); ++w) {
    std::uint64_t word = bits[w];
    while (word) {
      out.push_back(w * 64 + static_cast<std::size_t>(std::countr_zero(word)));
      word &= word - 1;
    }
  }
  return out;
}

GroupTable::GroupTable(const PermGroup& G) {
  const auto& els = G.elements();
  n_ = els.size();
  if (n_ > 65535) throw CapExceeded("cap exceeded: multiplication table needs order < 65536");
  const std::size_t deg = G.degree();

  // Greedy base: add points until the images on the base separate all elements.
  std::vector<Point> base;
  std::vector<std::vector<Point>> keys(n_);
  std::size_t distinct = 1;
  for (Point b = 0; b < deg && distinct < n_; ++b) {
    std::vector<std::vector<Point>> trial = keys;
    for (std::size_t i = 0; i < n_; ++i) trial[i].push_back(els[i](b));
    std::vector<std::vector<Point>> sorted = trial;
    std::sort(sorted.begin(), sorted.end());
    std::size_t d = static_cast<std::size_t>(std::unique(sorted.begin(), sorted.end()) - sorted.begin());
    if (d > distinct) {
      distinct = d;
      keys = std::move(trial);
      base.push_back(b);
    }
  }

  bool packed = true;
  {
    long double span = 1;
    for (std::size_t i = 0; i < base.size(); ++i) span *= static_cast<long double>(deg);
    packed = span < 1.8e19L;
  }
  auto pack = [&](const std::vector<Point>& key) {
    std::uint64_t v = 0;
    for (Point x : key) v = v * deg + x;
    return v;
  };
  std::unordered_map<std::uint64_t, std::uint16_t> packed_index;
  std::map<std::vector<Point>, std::uint16_t> key_index;
  for (std::size_t i = 0; i < n_; ++i) {
    if (packed)
      packed_index.emplace(pack(keys[i]), static_cast<std::uint16_t>(i));
    else
      key_index.emplace(keys[i], static_cast<std::uint16_t>(i));
  }

  table_.resize(n_ * n_);
  std::vector<Point> key(base.size());
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) {
      for (std::size_t b = 0; b < base.size(); ++b) key[b] = els[i](els[j](base[b]));
      table_[i * n_ + j] = packed ? packed_index.at(pack(key)) : key_index.at(key);
    }
  }

  for (std::size_t i = 0; i < n_; ++i)
    if (els[i].is_identity()) id_ = static_cast<std::uint16_t>(i);
  inv_.resize(n_);
  ord_.resize(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    std::size_t k = 1;
    std::uint16_t x = static_cast<std::uint16_t>(i);
    while (x != id_) {
      if (mul(x, i) == id_) inv_[i] = x;
      x = mul(x, i);
      ++k;
    }
    if (k == 1) inv_[i] = id_;
    ord_[i] = k;
  }
}

namespace {

struct BitsHash {
  std::size_t operator()(const std::vector<std::uint64_t>& b) const noexcept {
    std::uint64_t h = 1469598103934665603ULL;
    for (std::uint64_t w : b) {
      h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
      h *= 1099511628211ULL;
    }
    return static_cast<std::size_t>(h);
  }
};

bool test_bit(const std::vector<std::uint64_t>& b, std::size_t i) { return (b[i / 64] >> (i % 64)) & 1U; }
void set_bit(std::vector<std::uint64_t>& b, std::size_t i) { b[i / 64] |= std::uint64_t{1} << (i % 64); }

// Mask order: the mask holding the lowest differing element index first.
bool canonical_less(const Subgroup& a, const Subgroup& b) {
  if (a.order != b.order) return a.order < b.order;
  for (std::size_t w = 0; w < a.bits.size(); ++w) {
    std::uint64_t x = a.bits[w] ^ b.bits[w];
    if (x) return (a.bits[w] >> std::countr_zero(x)) & 1U;
  }
  return false;
}

}  // namespace

SubgroupLattice::SubgroupLattice(const PermGroup& G, const LatticeOptions& opts)
    : parent_(G), table_((parent_.materialize(opts.order_cap), parent_)) {
  const std::size_t n = table_.size();
  if (n > opts.order_cap)
    throw CapExceeded("cap exceeded: group order " + std::to_string(n) + " exceeds the lattice cap " +
                      std::to_string(opts.order_cap));
  const std::size_t words = (n + 63) / 64;

  std::unordered_map<std::vector<std::uint64_t>, std::size_t, BitsHash> seen;
  std::vector<Subgroup> all;

  Subgroup trivial;
  trivial.bits.assign(words, 0);
  set_bit(trivial.bits, table_.identity());
  trivial.order = 1;
  seen.emplace(trivial.bits, 0);
  all.push_back(trivial);

  std::vector<std::size_t> layer{0};
  std::vector<std::uint16_t> queue;
  std::vector<std::uint64_t> done;
  for (std::size_t depth = 1; !layer.empty(); ++depth) {
    std::vector<std::size_t> next;
    for (std::size_t hi : layer) {
      const std::vector<std::uint64_t> hbits = all[hi].bits;
      const std::vector<std::uint16_t> hgens = all[hi].generators;
      const std::vector<std::size_t> helems = all[hi].elements();
      done = hbits;
      for (std::size_t y = 0; y < n; ++y) {
        if (test_bit(done, y)) continue;
        std::vector<std::uint16_t> gens = hgens;
        gens.push_back(static_cast<std::uint16_t>(y));

        std::vector<std::uint64_t> jbits(words, 0);
        queue.clear();
        queue.push_back(table_.identity());
        set_bit(jbits, table_.identity());
        for (std::size_t head = 0; head < queue.size(); ++head) {
          for (std::uint16_t g : gens) {
            std::uint16_t z = table_.mul(queue[head], g);
            if (!test_bit(jbits, z)) {
              set_bit(jbits, z);
              queue.push_back(z);
            }
          }
        }

        // <H, h y^j> = <H, y> whenever gcd(j, ord y) = 1.
        const std::size_t oy = table_.order_of(y);
        std::uint16_t yj = static_cast<std::uint16_t>(y);
        for (std::size_t j = 1; j < oy; ++j, yj = table_.mul(yj, static_cast<std::uint16_t>(y))) {
          if (std::gcd(j, oy) != 1) continue;
          for (std::size_t h : helems) set_bit(done, table_.mul(static_cast<std::uint16_t>(h), yj));
        }

        auto [it, fresh] = seen.emplace(jbits, all.size());
        if (!fresh) continue;
        if (all.size() >= opts.subgroup_cap)
          throw CapExceeded("cap exceeded: more than " + std::to_string(opts.subgroup_cap) + " subgroups");
        Subgroup J;
        J.bits = std::move(jbits);
        J.order = queue.size();
        J.generators = std::move(gens);
        J.rank = depth;
        next.push_back(all.size());
        all.push_back(std::move(J));
      }
    }
    layer = std::move(next);
  }

  std::sort(all.begin(), all.end(), canonical_less);
  subgroups_ = std::move(all);
}

SubgroupLattice subgroup_lattice(const PermGroup& G, const LatticeOptions& opts) { return SubgroupLattice(G, opts); }

mpz_class s_n(const SubgroupLattice& L, const mpz_class& n) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < L.size(); ++i)
    if (n >= static_cast<unsigned long>(L.index(i))) ++count;
  return static_cast<unsigned long>(count);
}

std::size_t minimal_index(const SubgroupLattice& L) {
  if (L.group_order() == 1) throw PreconditionError("the trivial group has no proper subgroup");
  std::size_t best = 0;
  for (std::size_t i = 0; i < L.size(); ++i)
    if (L.subgroups()[i].order < L.group_order()) best = std::max(best, L.subgroups()[i].order);
  return L.group_order() / best;
}

std::size_t rank_witness(const SubgroupLattice& L) {
  std::size_t w = 0;
  for (std::size_t i = 0; i < L.size(); ++i)
    if (L.subgroups()[i].rank > L.subgroups()[w].rank) w = i;
  return w;
}

std::size_t rank(const SubgroupLattice& L) { return L.subgroups()[rank_witness(L)].rank; }

std::vector<ElemAbelianInfo> elem_abelian_max(const SubgroupLattice& L) {
  std::vector<unsigned long> primes;
  {
    std::size_t m = L.group_order();
    for (std::size_t p = 2; p * p <= m; ++p) {
      if (m % p) continue;
      primes.push_back(p);
      while (m % p == 0) m /= p;
    }
    if (m > 1) primes.push_back(m);
  }
  const GroupTable& T = L.table();
  std::vector<ElemAbelianInfo> out;
  for (unsigned long p : primes) {
    ElemAbelianInfo best{p, 0, 0};
    for (std::size_t i = 0; i < L.size(); ++i) {
      const Subgroup& H = L.subgroups()[i];
      std::size_t o = H.order, e = 0;
      while (o % p == 0) {
        o /= p;
        ++e;
      }
      if (o != 1 || e <= best.e) continue;
      bool ok = true;
      for (std::size_t x : H.elements())
        if (x != T.identity() && T.order_of(x) != p) ok = false;
      for (std::size_t a = 0; ok && a < H.generators.size(); ++a)
        for (std::size_t b = a + 1; ok && b < H.generators.size(); ++b)
          if (T.mul(H.generators[a], H.generators[b]) != T.mul(H.generators[b], H.generators[a])) ok = false;
      if (ok) best = {p, e, i};
    }
    out.push_back(best);
  }
  return out;
}

mpz_class gaussian_binomial(unsigned long e, unsigned long k, unsigned long p) {
  if (k > e) throw PreconditionError("gaussian_binomial needs 0 <= k <= e");
  mpz_class num = 1, den = 1, q;
  for (unsigned long i = 0; i < k; ++i) {
    mpz_ui_pow_ui(q.get_mpz_t(), p, e - i);
    num *= q - 1;
    mpz_ui_pow_ui(q.get_mpz_t(), p, i + 1);
    den *= q - 1;
  }
  return num / den;
}

mpz_class galois_number(unsigned long e, unsigned long p) {
  mpz_class total = 0;
  for (unsigned long k = 0; k <= e; ++k) total += gaussian_binomial(e, k, p);
  return total;
}

std::vector<std::pair<std::size_t, mpz_class>> s_table(const SubgroupLattice& L) {
  std::vector<std::size_t> per_index(L.group_order() + 1, 0);
  for (std::size_t i = 0; i < L.size(); ++i) ++per_index[L.index(i)];
  std::vector<std::pair<std::size_t, mpz_class>> out;
  unsigned long running = 0;
  for (std::size_t n = 1; n <= L.group_order(); ++n) {
    running += per_index[n];
    out.emplace_back(n, mpz_class(running));
  }
  return out;
}

std::string s_table_csv(const SubgroupLattice& L) {
  std::ostringstream os;
  os << "n,s_n\n";
  for (const auto& [n, s] : s_table(L)) os << n << ',' << s.get_str() << '\n';
  return os.str();
}

nlohmann::ordered_json lattice_summary(const SubgroupLattice& L) {
  nlohmann::ordered_json j;
  j["group"] = L.parent().label();
  j["order"] = L.group_order();
  j["subgroups"] = L.size();
  j["rank"] = rank(L);
  if (L.group_order() > 1) j["mu"] = minimal_index(L);
  std::map<std::size_t, std::size_t> per_index;
  for (std::size_t i = 0; i < L.size(); ++i) ++per_index[L.index(i)];
  nlohmann::ordered_json by_index = nlohmann::ordered_json::array();
  for (const auto& [idx, c] : per_index) by_index.push_back({{"index", idx}, {"order", L.group_order() / idx}, {"count", c}});
  j["by_index"] = by_index;
  return j;
}

}  // namespace wpa
