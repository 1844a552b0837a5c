#include "wpa/wreath.hpp"

#include <algorithm>
#include <set>

#include "wpa/error.hpp"

namespace wpa {

const char* to_string(ActionKind k) { return k == ActionKind::Product ? "product" : "imprimitive"; }

std::size_t PointCodec::degree() const {
  if (kind == ActionKind::Imprimitive) return omega * delta;
  std::size_t d = 1;
  for (std::size_t i = 0; i < delta; ++i) d *= omega;
  return d;
}

Point PointCodec::encode(const std::vector<Point>& coords) const {
  if (kind == ActionKind::Imprimitive) {
    if (coords.size() != 2 || coords[0] >= omega || coords[1] >= delta)
      throw PreconditionError("imprimitive point must be a pair (w, d) in range");
    return static_cast<Point>(coords[0] + omega * coords[1]);
  }
  if (coords.size() != delta) throw PreconditionError("product point needs one coordinate per element of Delta");
  std::size_t code = 0, weight = 1;
  for (std::size_t d = 0; d < delta; ++d) {
    if (coords[d] >= omega) throw PreconditionError("coordinate out of range");
    code += coords[d] * weight;
    weight *= omega;
  }
  return static_cast<Point>(code);
}

std::vector<Point> PointCodec::decode(Point x) const {
  if (x >= degree()) throw PreconditionError("point out of range");
  if (kind == ActionKind::Imprimitive)
    return {static_cast<Point>(x % omega), static_cast<Point>(x / omega)};
  std::vector<Point> coords(delta);
  std::size_t rest = x;
  for (std::size_t d = 0; d < delta; ++d) {
    coords[d] = static_cast<Point>(rest % omega);
    rest /= omega;
  }
  return coords;
}

std::vector<Permutation> WreathProduct::base_generators() const {
  const auto& g = result.generators();
  return {g.begin(), g.begin() + static_cast<std::ptrdiff_t>(base_generator_count)};
}

namespace {

std::optional<mpz_class> formula_order(const PermGroup& A, const PermGroup& B) {
  if (!A.order() || !B.order()) return std::nullopt;
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), A.order()->get_mpz_t(), B.degree());
  return r * *B.order();
}

std::string wreath_label(const PermGroup& A, const PermGroup& B, ActionKind kind) {
  auto name = [](const PermGroup& g) {
    return g.label().empty() ? "<degree " + std::to_string(g.degree()) + ">" : g.label();
  };
  return "(" + name(A) + ") wr_" + (kind == ActionKind::Product ? "pa" : "imp") + " (" + name(B) + ")";
}

void check_degree(const mpz_class& degree, std::size_t cap) {
  if (degree > cap)
    throw CapExceeded("degree " + degree.get_str() + " exceeds the representable-degree cap " +
                      std::to_string(cap));
}

}  // namespace

WreathProduct product_action(const PermGroup& A, const PermGroup& B, std::size_t degree_cap) {
  const std::size_t m = A.degree(), D = B.degree();
  mpz_class deg;
  mpz_ui_pow_ui(deg.get_mpz_t(), m, D);
  check_degree(deg, degree_cap);
  const std::size_t N = deg.get_ui();
  PointCodec codec{ActionKind::Product, m, D};

  std::vector<std::size_t> weight(D);
  for (std::size_t d = 0, w = 1; d < D; ++d, w *= m) weight[d] = w;

  std::vector<Permutation> gens;
  for (std::size_t d = 0; d < D; ++d) {
    for (const auto& a : A.generators()) {
      std::vector<Point> img(N);
      for (std::size_t x = 0; x < N; ++x) {
        std::size_t c = (x / weight[d]) % m;
        img[x] = static_cast<Point>(x + (a(static_cast<Point>(c)) - c) * weight[d]);
      }
      gens.emplace_back(std::move(img));
    }
  }
  const std::size_t base_count = gens.size();
  std::vector<Point> digits(D);
  for (const auto& b : B.generators()) {
    std::vector<Point> img(N);
    std::fill(digits.begin(), digits.end(), 0);
    for (std::size_t x = 0; x < N; ++x) {
      std::size_t y = 0;
      for (std::size_t d = 0; d < D; ++d) y += digits[d] * weight[b(static_cast<Point>(d))];
      img[x] = static_cast<Point>(y);
      for (std::size_t d = 0; d < D && ++digits[d] == m; ++d) digits[d] = 0;
    }
    gens.emplace_back(std::move(img));
  }
  PermGroup result(N, std::move(gens));
  if (auto o = formula_order(A, B)) result.set_known_order(*o);
  result.set_label(wreath_label(A, B, ActionKind::Product));
  return {A, B, ActionKind::Product, std::move(result), codec, base_count};
}

WreathProduct imprimitive_action(const PermGroup& A, const PermGroup& B, std::size_t degree_cap) {
  const std::size_t m = A.degree(), D = B.degree();
  check_degree(mpz_class(static_cast<unsigned long>(m)) * static_cast<unsigned long>(D), degree_cap);
  const std::size_t N = m * D;
  PointCodec codec{ActionKind::Imprimitive, m, D};
  std::vector<Permutation> gens;
  for (std::size_t d = 0; d < D; ++d) {
    for (const auto& a : A.generators()) {
      std::vector<Point> img(N);
      for (std::size_t x = 0; x < N; ++x)
        img[x] = x / m == d ? static_cast<Point>(a(static_cast<Point>(x % m)) + m * d) : static_cast<Point>(x);
      gens.emplace_back(std::move(img));
    }
  }
  const std::size_t base_count = gens.size();
  for (const auto& b : B.generators()) {
    std::vector<Point> img(N);
    for (std::size_t x = 0; x < N; ++x) img[x] = static_cast<Point>(x % m + m * b(static_cast<Point>(x / m)));
    gens.emplace_back(std::move(img));
  }
  PermGroup result(N, std::move(gens));
  if (auto o = formula_order(A, B)) result.set_known_order(*o);
  result.set_label(wreath_label(A, B, ActionKind::Imprimitive));
  return {A, B, ActionKind::Imprimitive, std::move(result), codec, base_count};
}

const WreathLevel& IteratedWreath::level(std::size_t k) const {
  if (k < 1 || k > levels.size())
    throw PreconditionError("level " + std::to_string(k) + " outside 1.." + std::to_string(levels.size()));
  return levels[k - 1];
}

IteratedWreath iterated_wpa(const std::vector<PermGroup>& seq, std::size_t n, const WreathOptions& opts) {
  if (n < 1) throw PreconditionError("iterated_wpa needs n >= 1");
  if (n > seq.size())
    throw PreconditionError("level " + std::to_string(n) + " needs " + std::to_string(n) + " groups, got " +
                            std::to_string(seq.size()));
  IteratedWreath W;
  W.sequence.assign(seq.begin(), seq.begin() + static_cast<std::ptrdiff_t>(n));
  for (auto& S : W.sequence) {
    if (!S.order()) S.materialize(opts.element_cap);
  }
  W.degrees.emplace_back(1L);
  for (std::size_t k = 1; k <= n; ++k) {
    const PermGroup& S = W.sequence[k - 1];
    WreathLevel lvl;
    lvl.k = k;
    const TowerInt omega(static_cast<long>(S.degree()));
    const TowerInt prev_deg = W.degrees.back();
    lvl.degree = k == 1 ? omega : TowerInt::pow(omega, prev_deg);
    lvl.order = k == 1 ? TowerInt(*S.order())
                       : TowerInt::pow(TowerInt(*S.order()), prev_deg) * W.levels.back().order;

    const bool fits = lvl.degree.is_exact() && lvl.degree.exact() <= opts.degree_cap;
    if (k == 1) {
      lvl.group = S;
    } else if (fits && W.levels.back().group) {
      WreathProduct wp = product_action(S, *W.levels.back().group, opts.degree_cap);
      lvl.base_generator_count = wp.base_generator_count;
      lvl.group = std::move(wp.result);
    }
    if (lvl.group && opts.materialize && lvl.order.is_exact() && lvl.order.exact() <= opts.element_cap &&
        !lvl.group->materialized())
      lvl.group->materialize(opts.element_cap);
    W.degrees.push_back(lvl.degree);
    W.levels.push_back(std::move(lvl));
  }
  return W;
}

Permutation top_component(const Permutation& g, std::size_t omega, std::size_t D) {
  std::vector<Point> img(D);
  const Point origin = g(0);
  std::size_t weight = 1;
  for (std::size_t d = 0; d < D; ++d, weight *= omega) {
    const std::size_t diff_code = g(static_cast<Point>(weight));
    std::size_t a = origin, b = diff_code, found = D;
    for (std::size_t e = 0; e < D; ++e) {
      if (a % omega != b % omega) {
        if (found != D) throw PreconditionError("element does not preserve the product structure");
        found = e;
      }
      a /= omega;
      b /= omega;
    }
    if (found == D) throw PreconditionError("element does not preserve the product structure");
    img[d] = static_cast<Point>(found);
  }
  return Permutation(std::move(img));
}

ProjectionCheck project(const IteratedWreath& W, std::size_t k) {
  if (k < 2) throw PreconditionError("project needs k >= 2 (W_0 is trivial)");
  const WreathLevel& hi = W.level(k);
  const WreathLevel& lo = W.level(k - 1);
  if (!hi.group || !hi.group->materialized() || !lo.group || !lo.group->materialized())
    throw PreconditionError("project needs W_" + std::to_string(k) + " and W_" + std::to_string(k - 1) +
                            " materialized");
  const PermGroup& G = *hi.group;
  const PermGroup& H = *lo.group;
  const std::size_t omega = W.sequence[k - 1].degree();
  const std::size_t D = H.degree();

  ProjectionCheck out;
  out.k = k;
  out.source_order = G.elements().size();

  std::vector<Permutation> image_of;
  image_of.reserve(G.elements().size());
  for (const auto& g : G.elements()) image_of.push_back(top_component(g, omega, D));

  out.homomorphism = true;
  for (std::size_t i = 0; i < G.elements().size() && out.homomorphism; ++i) {
    for (const auto& s : G.generators()) {
      const Permutation gs = compose(G.elements()[i], s);
      if (top_component(gs, omega, D) != compose(image_of[i], top_component(s, omega, D))) {
        out.homomorphism = false;
        break;
      }
    }
  }

  std::set<Permutation> image(image_of.begin(), image_of.end());
  out.image_order = image.size();
  out.surjective = std::equal(image.begin(), image.end(), H.elements().begin(), H.elements().end());

  std::vector<Permutation> kernel;
  for (std::size_t i = 0; i < image_of.size(); ++i)
    if (image_of[i].is_identity()) kernel.push_back(G.elements()[i]);
  out.kernel_order = kernel.size();

  const auto& gens = G.generators();
  std::vector<Permutation> base_gens(gens.begin(), gens.begin() + static_cast<std::ptrdiff_t>(hi.base_generator_count));
  PermGroup base = generate_or_throw(base_gens, G.elements().size());
  out.kernel_is_base = base.elements() == kernel;
  return out;
}

}  // namespace wpa
