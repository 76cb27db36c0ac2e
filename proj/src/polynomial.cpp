#include "critline/polynomial.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace critline::arith {

namespace {

u64 prime_power(u64 p, int alpha) {
    u64 m = 1;
    for (int i = 0; i < alpha; ++i) m *= p;
    return m;
}

i128 abs128(i128 x) { return x < 0 ? -x : x; }

u64 gcd_with(u64 m, i128 value) {
    return std::gcd(m, static_cast<u64>(abs128(value) % static_cast<i128>(m)));
}

// Determinant of an integer matrix by Bareiss fraction-free elimination.
i128 bareiss_determinant(std::vector<std::vector<i128>> a) {
    const std::size_t n = a.size();
    i128 sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t swap = k + 1;
            while (swap < n && a[swap][k] == 0) ++swap;
            if (swap == n) return 0;
            std::swap(a[k], a[swap]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
        }
        prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}

}  // namespace

IntPolynomial::IntPolynomial(std::vector<i64> coefficients_low_first) : coeffs_(std::move(coefficients_low_first)) {
    while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

IntPolynomial::IntPolynomial(std::initializer_list<i64> coefficients_low_first)
    : IntPolynomial(std::vector<i64>(coefficients_low_first)) {}

u64 IntPolynomial::eval_mod(u64 x, u64 m) const {
    if (m == 1) return 0;
    u128 acc = 0;
    const u64 xr = x % m;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
        acc = (acc * xr + reduce(*it, m)) % m;
    }
    return static_cast<u64>(acc);
}

i128 IntPolynomial::eval(i64 x) const {
    i128 acc = 0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

IntPolynomial IntPolynomial::derivative() const {
    std::vector<i64> d;
    for (std::size_t k = 1; k < coeffs_.size(); ++k) d.push_back(static_cast<i64>(k) * coeffs_[k]);
    return IntPolynomial(std::move(d));
}

u64 IntPolynomial::content() const {
    u64 g = 0;
    for (i64 c : coeffs_) g = std::gcd(g, gcd_signed(c, 0));
    return g;
}

IntPolynomial IntPolynomial::divided(i64 d) const {
    std::vector<i64> out;
    for (i64 c : coeffs_) {
        if (c % d != 0) throw std::invalid_argument("IntPolynomial::divided: inexact division");
        out.push_back(c / d);
    }
    return IntPolynomial(std::move(out));
}

i128 IntPolynomial::discriminant() const {
    const int r = degree();
    if (r < 1) throw std::invalid_argument("IntPolynomial::discriminant: degree must be at least 1");
    if (r == 1) return 1;
    if (r == 2) {
        const i128 a = coeffs_[2], b = coeffs_[1], c = coeffs_[0];
        return b * b - 4 * a * c;
    }
    // Sylvester matrix of F (degree r) and F' (degree r - 1), size 2r - 1.
    const IntPolynomial d = derivative();
    const std::size_t n = static_cast<std::size_t>(2 * r - 1);
    std::vector<std::vector<i128>> s(n, std::vector<i128>(n, 0));
    for (int i = 0; i < r - 1; ++i)
        for (int k = 0; k <= r; ++k) s[i][i + k] = coeffs_[r - k];
    for (int i = 0; i < r; ++i)
        for (int k = 0; k <= r - 1; ++k) s[r - 1 + i][i + k] = d.coeffs_[r - 1 - k];
    const i128 res = bareiss_determinant(std::move(s));
    const i128 sign = ((r * (r - 1) / 2) % 2 == 0) ? 1 : -1;
    return sign * res / coeffs_[r];
}

bool IntPolynomial::vanishes_mod(u64 m) const {
    for (i64 c : coeffs_)
        if (reduce(c, m) != 0) return false;
    return true;
}

RootCount count_roots_exhaustive(const IntPolynomial& f, u64 p, int alpha) {
    if (alpha < 1) throw std::invalid_argument("count_roots_exhaustive: alpha must be positive");
    const u64 m = prime_power(p, alpha);
    if (f.vanishes_mod(m)) return {m, true};
    u64 count = 0;
    for (u64 x = 0; x < m; ++x)
        if (f.eval_mod(x, m) == 0) ++count;
    return {count, false};
}

RootCount count_roots_lifting(const IntPolynomial& f, u64 p, int alpha) {
    if (alpha < 1) throw std::invalid_argument("count_roots_lifting: alpha must be positive");
    const u64 m = prime_power(p, alpha);
    if (f.vanishes_mod(m)) return {m, true};
    const IntPolynomial df = f.derivative();
    u64 nonsingular = 0;
    std::vector<u64> singular;
    for (u64 x = 0; x < p; ++x) {
        if (f.eval_mod(x, p) != 0) continue;
        if (df.eval_mod(x, p) != 0)
            ++nonsingular;
        else
            singular.push_back(x);
    }
    u64 pk = p;
    for (int k = 1; k < alpha && !singular.empty(); ++k) {
        const u64 next_mod = pk * p;
        std::vector<u64> next;
        for (u64 r : singular) {
            for (u64 j = 0; j < p; ++j) {
                const u64 x = r + j * pk;
                if (f.eval_mod(x, next_mod) == 0) next.push_back(x);
            }
        }
        singular = std::move(next);
        pk = next_mod;
    }
    return {nonsingular + singular.size(), false};
}

RootCount count_poly_roots_mod_pk(const IntPolynomial& f, u64 p, int alpha) {
    if (alpha < 1) throw std::invalid_argument("count_poly_roots_mod_pk: alpha must be positive");
    if (!is_prime(p)) throw std::invalid_argument("count_poly_roots_mod_pk: p must be prime");
    const long double size = std::pow(static_cast<long double>(p), alpha);
    if (size <= static_cast<long double>(kExhaustiveRootThreshold)) return count_roots_exhaustive(f, p, alpha);
    return count_roots_lifting(f, p, alpha);
}

HuxleyReport huxley_bound_check(const IntPolynomial& f, u64 p, int alpha) {
    const int r = f.degree();
    if (r < 2) throw std::invalid_argument("huxley_bound_check: degree must be at least 2");
    const i128 disc = f.discriminant();
    if (disc == 0) throw std::invalid_argument("huxley_bound_check: zero discriminant");

    HuxleyReport rep;
    rep.p = p;
    rep.alpha = alpha;
    rep.discriminant = disc;
    const u64 m = prime_power(p, alpha);
    const RootCount raw = count_poly_roots_mod_pk(f, p, alpha);
    rep.roots = raw.count;
    const u64 g_lit = gcd_with(m, disc);
    rep.literal_bound = r * std::sqrt(static_cast<double>(g_lit));
    rep.literal_pass = static_cast<u128>(raw.count) * raw.count <= static_cast<u128>(r) * r * g_lit;

    rep.content_valuation = valuation(static_cast<i128>(f.content()), p);
    if (rep.content_valuation >= alpha) {
        rep.skipped = true;
        rep.pass = true;
        return rep;
    }
    const i64 pc = static_cast<i64>(prime_power(p, rep.content_valuation));
    const IntPolynomial reduced = f.divided(pc);
    const int reduced_alpha = alpha - rep.content_valuation;
    const u64 rm = prime_power(p, reduced_alpha);
    rep.reduced_roots = count_poly_roots_mod_pk(reduced, p, reduced_alpha).count;
    const u64 g = gcd_with(rm, reduced.discriminant());
    rep.bound = r * std::sqrt(static_cast<double>(g));
    rep.pass = static_cast<u128>(rep.reduced_roots) * rep.reduced_roots <= static_cast<u128>(r) * r * g;
    return rep;
}

}  // namespace critline::arith
