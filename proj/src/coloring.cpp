#include "rado/coloring.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>
#include <json.hpp>

namespace rado {

using boost::multiprecision::cpp_int;

Coloring::Coloring(int k, std::vector<int> colors) : k_(k), colors_(std::move(colors)) {
  if (k < 1) throw std::invalid_argument("coloring needs at least one color");
  for (int c : colors_)
    if (c < 1 || c > k) throw std::invalid_argument("color out of range [1, k]");
}

int Coloring::used_colors() const {
  std::set<int> seen(colors_.begin(), colors_.end());
  return static_cast<int>(seen.size());
}

VerifyResult verify_coloring(const LinearEquation& eq, const Coloring& coloring) {
  std::optional<Witness> found;
  enumerate_solutions(eq, coloring.size(), [&](std::span<const std::int64_t> s) {
    int c = coloring(s[0]);
    for (std::size_t i = 1; i < s.size(); ++i)
      if (coloring(s[i]) != c) return true;
    found = Witness{SolutionTuple(s.begin(), s.end()), c};
    return false;
  });
  if (found) return *found;
  return Valid{};
}

Coloring va_coloring(std::int64_t a, int k, std::int64_t n) {
  if (a < 2) throw std::invalid_argument("va_coloring needs a >= 2");
  if (k < 1) throw std::invalid_argument("va_coloring needs k >= 1");
  std::int64_t limit = 1;
  for (int i = 0; i < k; ++i) limit *= a;
  if (n > limit - 1)
    throw std::invalid_argument("va_coloring domain exceeds a^k - 1");
  std::vector<int> colors(static_cast<std::size_t>(n));
  for (std::int64_t i = 1; i <= n; ++i)
    colors[static_cast<std::size_t>(i - 1)] = valuation(i, a) % k + 1;
  return Coloring(k, std::move(colors));
}

int chi_aminus1_class(std::int64_t a, std::int64_t i) {
  int v = valuation(i, a);
  if (v == 2 || (v == 0 && (i < a * a - a || i > a * a * a - a))) return 0;
  if (v == 1) return 1;
  return 2;
}

Coloring chi_aminus1_coloring(std::int64_t a) {
  if (a < 3) throw std::invalid_argument("chi coloring needs a >= 3");
  std::int64_t n = a * a * a + (a - 1) * (a - 1) - 1;
  std::vector<int> colors(static_cast<std::size_t>(n));
  for (std::int64_t i = 1; i <= n; ++i)
    colors[static_cast<std::size_t>(i - 1)] = chi_aminus1_class(a, i) + 1;
  return Coloring(3, std::move(colors));
}

std::int64_t OneSidedForm::sum() const {
  return std::accumulate(lhs.begin(), lhs.end(), std::int64_t{0});
}

std::optional<OneSidedForm> one_sided_form(const LinearEquation& eq) {
  std::vector<std::int64_t> pos, neg;
  for (auto c : eq.coeffs()) (c > 0 ? pos : neg).push_back(c > 0 ? c : -c);
  OneSidedForm form;
  if (neg.size() == 1 && !pos.empty()) {
    form.lhs = pos;
    form.rhs = neg[0];
  } else if (pos.size() == 1 && !neg.empty()) {
    form.lhs = neg;
    form.rhs = pos[0];
  } else {
    return std::nullopt;
  }
  std::sort(form.lhs.begin(), form.lhs.end());
  return form;
}

bool log_hypothesis_holds(const OneSidedForm& form, int k, LogVariant variant) {
  if (k < 2) return false;
  const cpp_int s = form.sum(), a1 = form.lhs.front(), am = form.rhs;
  if (variant == LogVariant::I)
    return s * boost::multiprecision::pow(am, k - 2) <=
           boost::multiprecision::pow(a1, k - 1);
  return boost::multiprecision::pow(s, k - 1) <=
         a1 * boost::multiprecision::pow(am, k - 2);
}

Coloring logd_coloring(const LinearEquation& eq, int k, LogVariant variant,
                       std::int64_t n) {
  auto form = one_sided_form(eq);
  if (!form) throw std::invalid_argument("equation is not of the form a_1x_1+...=a_mx_m");
  if (k < 2) throw std::invalid_argument("log coloring needs k >= 2");
  if (!log_hypothesis_holds(*form, k, variant))
    throw std::invalid_argument(variant == LogVariant::I
                                    ? "hypothesis fails: S > a_1^(k-1) / a_m^(k-2)"
                                    : "hypothesis fails: S > a_1^(1/(k-1)) a_m^(1-1/(k-1))");
  const cpp_int s = form->sum(), a1 = form->lhs.front(), am = form->rhs;
  std::vector<int> colors(static_cast<std::size_t>(std::max<std::int64_t>(n, 0)));

  if (variant == LogVariant::I) {
    // d^{k-1} = S/a_m > 1; t(n) = min t with S^t >= n^{k-1} a_m^t.
    if (s <= am) throw std::invalid_argument("log base d must exceed 1");
    cpp_int st = 1, at = 1;
    int t = 0;
    for (std::int64_t i = 1; i <= n; ++i) {
      cpp_int lhs = boost::multiprecision::pow(cpp_int(i), k - 1);
      while (st < lhs * at) {
        st *= s;
        at *= am;
        ++t;
      }
      colors[static_cast<std::size_t>(i - 1)] = t % k + 1;
    }
  } else {
    // 1/d = D with D^{k-1} = a_m/a_1 > 1; ceil(log_d n) = -floor(log_D n).
    if (am <= a1) throw std::invalid_argument("log base d must be below 1");
    cpp_int mt = am, ft = a1;  // a_m^{t+1}, a_1^{t+1}
    int t = 0;
    for (std::int64_t i = 1; i <= n; ++i) {
      cpp_int lhs = boost::multiprecision::pow(cpp_int(i), k - 1);
      while (mt <= lhs * ft) {
        mt *= am;
        ft *= a1;
        ++t;
      }
      int idx = (-t) % k;
      if (idx < 0) idx += k;
      colors[static_cast<std::size_t>(i - 1)] = idx + 1;
    }
  }
  return Coloring(k, std::move(colors));
}

Coloring vp_modk_coloring(std::int64_t p, int k, std::int64_t n) {
  if (!is_prime(p)) throw std::invalid_argument("vp_modk_coloring needs prime p");
  if (k < 1) throw std::invalid_argument("vp_modk_coloring needs k >= 1");
  std::vector<int> colors(static_cast<std::size_t>(n));
  for (std::int64_t i = 1; i <= n; ++i)
    colors[static_cast<std::size_t>(i - 1)] = valuation(i, p) % k + 1;
  return Coloring(k, std::move(colors));
}

std::int64_t mod_inverse(std::int64_t a, std::int64_t m) {
  std::int64_t old_r = ((a % m) + m) % m, r = m, old_s = 1, s = 0;
  while (r != 0) {
    std::int64_t q = old_r / r;
    std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
    std::tie(old_s, s) = std::make_pair(s, old_s - q * s);
  }
  if (old_r != 1) throw std::domain_error("element is not a unit");
  return ((old_s % m) + m) % m;
}

std::int64_t multiplicative_order(std::int64_t g, std::int64_t m) {
  g = ((g % m) + m) % m;
  if (std::gcd(g, m) != 1) throw std::domain_error("order of a non-unit");
  std::int64_t x = g, order = 1;
  while (x != 1 % m) {
    x = x * g % m;
    ++order;
  }
  return order;
}

CycleGraph CycleGraph::build(std::int64_t modulus, std::int64_t multiplier) {
  CycleGraph graph;
  graph.modulus = modulus;
  graph.multiplier = ((multiplier % modulus) + modulus) % modulus;
  graph.vertex_colors.assign(static_cast<std::size_t>(modulus - 1), 0);
  for (std::int64_t start = 1; start < modulus; ++start) {
    if (graph.color(start) != 0) continue;
    std::vector<std::int64_t> cycle;
    std::int64_t y = start;
    do {
      cycle.push_back(y);
      y = y * graph.multiplier % modulus;
    } while (y != start);
    if (cycle.size() == 1)
      throw std::domain_error("cycle graph has a loop; multiplier fixes a residue");
    for (std::size_t i = 0; i < cycle.size(); ++i)
      graph.vertex_colors[static_cast<std::size_t>(cycle[i] - 1)] = i % 2 == 0 ? 1 : 2;
    if (cycle.size() % 2 == 1)
      graph.vertex_colors[static_cast<std::size_t>(cycle.back() - 1)] = 3;
  }
  return graph;
}

int CycleGraph::palette() const {
  return vertex_colors.empty() ? 0 : *std::max_element(vertex_colors.begin(), vertex_colors.end());
}

bool CycleGraph::is_proper() const {
  for (std::int64_t y = 1; y < modulus; ++y) {
    std::int64_t x = y * multiplier % modulus;
    if (x == 0 || color(x) == color(y)) return false;
  }
  return true;
}

namespace {

std::int64_t ipow(std::int64_t b, int e) {
  std::int64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

}  // namespace

std::optional<ProductHypothesis> find_product_hypothesis(const LinearEquation& eq,
                                                         ProductCase which,
                                                         std::int64_t prime_bound) {
  if (eq.arity() != 3 || is_regular(eq)) return std::nullopt;
  std::optional<ProductHypothesis> first;
  const auto c = eq.coeffs();
  for (std::int64_t p : primes_up_to(prime_bound)) {
    for (int s = 0; s < 3; ++s) {
      const std::int64_t single = c[s];
      const std::int64_t u = c[(s + 1) % 3], w = c[(s + 2) % 3];
      ProductHypothesis h;
      h.which = which;
      h.p = p;
      h.single = single;
      h.pair_first = u;
      h.pair_second = w;
      if (which == ProductCase::UniquePrime) {
        // 0 = v_p(u) = v_p(w) = v_p(u + w) < v_p(single) = r
        if (u + w == 0 || valuation(u, p) != 0 || valuation(w, p) != 0 ||
            valuation(u + w, p) != 0)
          continue;
        h.r = valuation(single, p);
        if (h.r == 0) continue;
        h.modulus = ipow(p, h.r);
        h.multiplier = ((-u % h.modulus) * mod_inverse(w, h.modulus)) % h.modulus;
      } else {
        // 0 = v_p(single) < v_p(u) = v_p(w) = v_p(u + w) = r
        if (u + w == 0 || valuation(single, p) != 0) continue;
        int r = valuation(u, p);
        if (r == 0 || valuation(w, p) != r || valuation(u + w, p) != r) continue;
        h.r = r;
        h.modulus = ipow(p, r);
        std::int64_t u1 = u / h.modulus, w1 = w / h.modulus;
        h.multiplier = ((-u1 % h.modulus) * mod_inverse(w1, h.modulus)) % h.modulus;
      }
      h.multiplier = ((h.multiplier % h.modulus) + h.modulus) % h.modulus;
      h.order = multiplicative_order(h.multiplier, h.modulus);
      if (h.even_order()) return h;
      if (!first) first = h;
    }
  }
  return first;
}

Coloring product_coloring(const ProductHypothesis& h, std::int64_t n) {
  const CycleGraph graph = CycleGraph::build(h.modulus, h.multiplier);
  const int palette = h.even_order() ? 2 : 3;
  const std::int64_t q = h.modulus * h.modulus;
  std::vector<int> colors(static_cast<std::size_t>(n));
  for (std::int64_t i = 1; i <= n; ++i) {
    std::int64_t reduced = i;
    while (reduced % q == 0) reduced /= q;
    int color;
    if (reduced % h.modulus != 0)
      color = graph.color(reduced % h.modulus);
    else
      color = graph.color((reduced / h.modulus) % h.modulus) + palette;
    colors[static_cast<std::size_t>(i - 1)] = color;
  }
  return Coloring(2 * palette, std::move(colors));
}

Coloring product_coloring_unique_prime(const LinearEquation& eq, ProductCase which,
                                       std::int64_t n) {
  auto h = find_product_hypothesis(eq, which);
  if (!h) throw NotApplicable("no prime p <= 100 satisfies the valuation hypothesis");
  return product_coloring(*h, n);
}

std::string coloring_to_json(const Coloring& c) {
  nlohmann::json j;
  j["n"] = c.size();
  j["k"] = c.colors();
  j["colors"] = c.assignment();
  return j.dump();
}

Coloring coloring_from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  auto colors = j.at("colors").get<std::vector<int>>();
  if (j.at("n").get<std::int64_t>() != static_cast<std::int64_t>(colors.size()))
    throw std::invalid_argument("coloring file: n does not match colors length");
  return Coloring(j.at("k").get<int>(), std::move(colors));
}

}  // namespace rado
