#include "critline/characters.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace critline::arith {

// ---------------------------------------------------------------- RootOfUnitySum

RootOfUnitySum::RootOfUnitySum(u64 order) : counts_(order, 0) {
    if (order == 0) throw std::invalid_argument("RootOfUnitySum: order must be positive");
}

void RootOfUnitySum::add(u64 index, i64 multiplicity) { counts_[index % counts_.size()] += multiplicity; }

i64 RootOfUnitySum::terms() const { return std::accumulate(counts_.begin(), counts_.end(), i64{0}); }

std::complex<double> RootOfUnitySum::value() const {
    const double n = static_cast<double>(counts_.size());
    double re = 0.0, im = 0.0;
    for (std::size_t k = 0; k < counts_.size(); ++k) {
        if (counts_[k] == 0) continue;
        const double theta = 2.0 * std::numbers::pi * static_cast<double>(k) / n;
        re += static_cast<double>(counts_[k]) * std::cos(theta);
        im += static_cast<double>(counts_[k]) * std::sin(theta);
    }
    return {re, im};
}

RootOfUnitySum RootOfUnitySum::lifted(u64 order) const {
    if (order % counts_.size() != 0)
        throw std::invalid_argument("RootOfUnitySum::lifted: order must be a multiple");
    RootOfUnitySum out(order);
    const u64 scale = order / counts_.size();
    for (std::size_t k = 0; k < counts_.size(); ++k) out.counts_[k * scale] = counts_[k];
    return out;
}

RootOfUnitySum RootOfUnitySum::conj() const {
    RootOfUnitySum out(order());
    const u64 n = order();
    for (u64 k = 0; k < n; ++k) out.counts_[(n - k) % n] = counts_[k];
    return out;
}

RootOfUnitySum operator*(const RootOfUnitySum& a, const RootOfUnitySum& b) {
    const u64 n = std::lcm(a.order(), b.order());
    const RootOfUnitySum la = a.lifted(n), lb = b.lifted(n);
    RootOfUnitySum out(n);
    for (u64 i = 0; i < n; ++i) {
        if (la.counts_[i] == 0) continue;
        for (u64 j = 0; j < n; ++j) {
            if (lb.counts_[j] == 0) continue;
            out.counts_[(i + j) % n] += la.counts_[i] * lb.counts_[j];
        }
    }
    return out;
}

bool operator==(const RootOfUnitySum& a, const RootOfUnitySum& b) {
    const u64 n = std::lcm(a.order(), b.order());
    return a.lifted(n).counts_ == b.lifted(n).counts_;
}

namespace {

std::vector<i64> cyclotomic(u64 n);

std::vector<i64> cyclotomic_uncached(u64 n) {
    std::vector<i64> p(n + 1, 0);
    p[0] = -1;
    p[n] = 1;
    for (u64 d = 1; d < n; ++d) {
        if (n % d != 0) continue;
        const std::vector<i64> f = cyclotomic(d);
        // Exact division of p by the monic f.
        const std::size_t df = f.size() - 1;
        std::vector<i64> quot(p.size() - df, 0);
        for (std::size_t k = p.size(); k-- > df;) {
            const i64 c = p[k];
            quot[k - df] = c;
            for (std::size_t j = 0; j <= df; ++j) p[k - df + j] -= c * f[j];
        }
        p = std::move(quot);
    }
    return p;
}

// Coefficients of the n-th cyclotomic polynomial, lowest degree first.
std::vector<i64> cyclotomic(u64 n) {
    static std::mutex mu;
    static std::map<u64, std::vector<i64>> cache;
    {
        std::lock_guard lock(mu);
        if (const auto it = cache.find(n); it != cache.end()) return it->second;
    }
    auto p = cyclotomic_uncached(n);
    std::lock_guard lock(mu);
    return cache.emplace(n, std::move(p)).first->second;
}

}  // namespace

bool RootOfUnitySum::is_zero() const {
    const u64 n = order();
    const std::vector<i64> f = cyclotomic(n);
    std::vector<i64> r = counts_;
    const std::size_t df = f.size() - 1;
    for (std::size_t k = r.size(); k-- > df;) {
        const i64 c = r[k];
        if (c == 0) continue;
        for (std::size_t j = 0; j <= df; ++j) r[k - df + j] -= c * f[j];
    }
    return std::all_of(r.begin(), r.end(), [](i64 c) { return c == 0; });
}

// ---------------------------------------------------------------- LocalUnitGroup

u64 LocalUnitGroup::smallest_primitive_root(PrimePower pp) {
    const u64 p = pp.p;
    if (p == 2) throw std::invalid_argument("smallest_primitive_root: p must be odd");
    const u64 m = pp.value();
    std::vector<u64> ell;
    const FactoredModulus fm = factorize(p - 1);
    for (const auto& f : fm.factors()) ell.push_back(f.p);
    for (u64 g = 2; g < m; ++g) {
        if (g % p == 0) continue;
        bool ok = true;
        for (u64 l : ell) {
            if (powmod(g, (p - 1) / l, p) == 1) {
                ok = false;
                break;
            }
        }
        if (ok && pp.alpha >= 2 && powmod(g, p - 1, p * p) == 1) ok = false;
        if (ok) return g;
    }
    return 1;  // p^a = 2 handled by caller; unreachable for odd p
}

LocalUnitGroup::LocalUnitGroup(PrimePower pp) : prime_power(pp), modulus(pp.value()) {
    const u64 m = modulus;
    if (pp.p == 2) {
        if (pp.alpha == 2) {
            generators = {3};
            orders = {2};
        } else if (pp.alpha >= 3) {
            generators = {m - 1, 5};
            orders = {2, m / 4};
        }
    } else {
        generators = {smallest_primitive_root(pp)};
        orders = {m / pp.p * (pp.p - 1)};
    }
    const std::size_t g = generators.size();
    logs.assign(m * std::max<std::size_t>(g, 1), -1);
    if (g == 0) {
        logs.assign(m, -1);
        logs[1 % m] = 0;  // modulus 2: the unit 1 has empty exponent data
        return;
    }
    if (g == 1) {
        u64 x = 1 % m;
        for (u64 e = 0; e < orders[0]; ++e) {
            logs[x] = static_cast<std::int32_t>(e);
            x = mulmod(x, generators[0], m);
        }
    } else {
        u64 sign = 1;
        for (u64 e1 = 0; e1 < 2; ++e1) {
            u64 x = sign;
            for (u64 e2 = 0; e2 < orders[1]; ++e2) {
                logs[x * 2] = static_cast<std::int32_t>(e1);
                logs[x * 2 + 1] = static_cast<std::int32_t>(e2);
                x = mulmod(x, 5, m);
            }
            sign = m - 1;
        }
    }
}

// ---------------------------------------------------------------- group data

namespace detail {

struct GroupData {
    FactoredModulus q;
    std::vector<LocalUnitGroup> locals;
    std::vector<std::size_t> first_generator;  // per local group
    std::vector<u64> orders;                   // all generators, flattened
    u64 exponent = 1;
    u64 size = 1;
    std::size_t generator_count = 0;
    std::vector<std::int32_t> logs;  // q * generator_count, -1 for non-units
    std::vector<std::complex<double>> roots;

    explicit GroupData(u64 modulus) : q(factorize(modulus)) {
        for (const auto& pp : q.factors()) {
            first_generator.push_back(orders.size());
            locals.emplace_back(pp);
            for (u64 o : locals.back().orders) {
                orders.push_back(o);
                exponent = std::lcm(exponent, o);
                size *= o;
            }
        }
        generator_count = orders.size();
        const u64 m = q.modulus();
        const std::size_t g = generator_count;
        logs.assign(m * std::max<std::size_t>(g, 1), -1);
        std::vector<bool> unit(m, true);
        for (u64 r = 0; r < m; ++r) {
            if (std::gcd(r, m) != 1 && m != 1) {
                unit[r] = false;
                continue;
            }
            for (std::size_t i = 0; i < locals.size(); ++i) {
                const auto& L = locals[i];
                const u64 rr = r % L.modulus;
                for (std::size_t j = 0; j < L.generators.size(); ++j)
                    logs[r * g + first_generator[i] + j] = L.logs[rr * L.generators.size() + j];
            }
        }
        // A zero log marks units when there are no generators at all (q = 1, 2).
        if (g == 0) {
            logs.assign(m, -1);
            for (u64 r = 0; r < m; ++r)
                if (unit[r]) logs[r] = 0;
        }
        roots.resize(exponent);
        for (u64 k = 0; k < exponent; ++k) {
            const double theta = 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(exponent);
            roots[k] = {std::cos(theta), std::sin(theta)};
        }
    }

    std::vector<u64> exponents_of(u64 index) const {
        std::vector<u64> e(generator_count, 0);
        for (std::size_t j = generator_count; j-- > 0;) {
            e[j] = index % orders[j];
            index /= orders[j];
        }
        return e;
    }

    u64 index_of(std::span<const u64> e) const {
        u64 idx = 0;
        for (std::size_t j = 0; j < generator_count; ++j) idx = idx * orders[j] + e[j] % orders[j];
        return idx;
    }

    bool is_unit(u64 r) const {
        if (generator_count == 0) return logs[r] == 0;
        return logs[r * generator_count] >= 0;
    }
};

}  // namespace detail

// ---------------------------------------------------------------- DirichletCharacter

DirichletCharacter::DirichletCharacter(std::shared_ptr<const detail::GroupData> group, u64 index)
    : group_(std::move(group)), index_(index) {
    const auto& G = *group_;
    if (index >= G.size) throw std::out_of_range("DirichletCharacter: index out of range");
    exponents_ = G.exponents_of(index);
    const u64 m = G.q.modulus();
    const std::size_t g = G.generator_count;
    std::vector<u64> weight(g);
    for (std::size_t j = 0; j < g; ++j) weight[j] = exponents_[j] * (G.exponent / G.orders[j]) % G.exponent;
    auto table = std::make_shared<std::vector<std::int32_t>>(m, -1);
    for (u64 r = 0; r < m; ++r) {
        if (!G.is_unit(r)) continue;
        u128 k = 0;
        for (std::size_t j = 0; j < g; ++j) k += static_cast<u128>(weight[j]) * static_cast<u64>(G.logs[r * g + j]);
        (*table)[r] = static_cast<std::int32_t>(k % G.exponent);
    }
    table_ = std::move(table);
}

u64 DirichletCharacter::modulus() const { return group_->q.modulus(); }
const FactoredModulus& DirichletCharacter::factored_modulus() const { return group_->q; }
u64 DirichletCharacter::value_order() const { return group_->exponent; }

std::optional<u64> DirichletCharacter::log(i64 n) const {
    const std::int32_t k = (*table_)[reduce(n, modulus())];
    if (k < 0) return std::nullopt;
    return static_cast<u64>(k);
}

std::complex<double> DirichletCharacter::operator()(i64 n) const {
    const std::int32_t k = (*table_)[reduce(n, modulus())];
    if (k < 0) return {0.0, 0.0};
    return group_->roots[static_cast<std::size_t>(k)];
}

std::complex<double> DirichletCharacter::root(u64 k) const { return group_->roots[k % group_->exponent]; }

u64 DirichletCharacter::conductor() const {
    if (conductor_) return *conductor_;
    const auto& G = *group_;
    u64 f = 1;
    for (std::size_t i = 0; i < G.locals.size(); ++i) {
        const auto& L = G.locals[i];
        const std::size_t gl = L.generators.size();
        u64 le = 1;
        for (u64 o : L.orders) le = std::lcm(le, o);
        auto trivial_on = [&](u64 n) {
            u128 k = 0;
            for (std::size_t j = 0; j < gl; ++j) {
                const u64 e = exponents_[G.first_generator[i] + j];
                k += static_cast<u128>(e * (le / L.orders[j])) * static_cast<u64>(L.logs[n * gl + j]);
            }
            return k % le == 0;
        };
        // Smallest c with the local character trivial on units congruent to 1 mod p^c.
        u64 pc = 1;
        for (int c = 0; c <= L.prime_power.alpha; ++c) {
            bool trivial = true;
            for (u64 n = 1; n < L.modulus; n += pc) {
                if (n % L.prime_power.p == 0) continue;
                if (!trivial_on(n)) {
                    trivial = false;
                    break;
                }
            }
            if (trivial) break;
            pc *= L.prime_power.p;
        }
        f *= pc;
    }
    conductor_ = f;
    return f;
}

u64 DirichletCharacter::order() const {
    const auto& G = *group_;
    u64 ord = 1;
    for (std::size_t j = 0; j < G.generator_count; ++j) {
        const u64 o = G.orders[j];
        ord = std::lcm(ord, o / std::gcd(o, exponents_[j]));
    }
    return ord;
}

DirichletCharacter DirichletCharacter::conj() const {
    const auto& G = *group_;
    std::vector<u64> e(exponents_.size());
    for (std::size_t j = 0; j < e.size(); ++j) e[j] = (G.orders[j] - exponents_[j]) % G.orders[j];
    return DirichletCharacter(group_, G.index_of(e));
}

DirichletCharacter DirichletCharacter::operator*(const DirichletCharacter& other) const {
    if (other.group_ != group_ && other.modulus() != modulus())
        throw std::invalid_argument("DirichletCharacter: product of characters with different moduli");
    const auto& G = *group_;
    std::vector<u64> e(exponents_.size());
    for (std::size_t j = 0; j < e.size(); ++j) e[j] = (exponents_[j] + other.exponents_[j]) % G.orders[j];
    return DirichletCharacter(group_, G.index_of(e));
}

DirichletCharacter DirichletCharacter::local(std::size_t factor) const {
    const auto& G = *group_;
    if (factor >= G.locals.size()) throw std::out_of_range("DirichletCharacter::local: factor index");
    CharacterGroup lg(G.locals[factor].modulus);
    const std::size_t first = G.first_generator[factor];
    const std::size_t count = G.locals[factor].generators.size();
    return lg.character_from_exponents(std::span<const u64>(exponents_).subspan(first, count));
}

// ---------------------------------------------------------------- CharacterGroup

CharacterGroup::CharacterGroup(u64 q) {
    if (q == 0) throw std::invalid_argument("CharacterGroup: q must be positive");
    data_ = std::make_shared<const detail::GroupData>(q);
}

u64 CharacterGroup::modulus() const { return data_->q.modulus(); }
const FactoredModulus& CharacterGroup::factored_modulus() const { return data_->q; }
u64 CharacterGroup::size() const { return data_->size; }
u64 CharacterGroup::exponent() const { return data_->exponent; }
std::span<const u64> CharacterGroup::generator_orders() const { return data_->orders; }

DirichletCharacter CharacterGroup::character(u64 index) const { return DirichletCharacter(data_, index); }

DirichletCharacter CharacterGroup::character_from_exponents(std::span<const u64> exponents) const {
    if (exponents.size() != data_->generator_count)
        throw std::invalid_argument("character_from_exponents: wrong number of exponents");
    return DirichletCharacter(data_, data_->index_of(exponents));
}

std::vector<DirichletCharacter> CharacterGroup::characters() const {
    std::vector<DirichletCharacter> out;
    out.reserve(size());
    for (u64 i = 0; i < size(); ++i) out.push_back(character(i));
    return out;
}

std::vector<DirichletCharacter> CharacterGroup::primitive_characters() const {
    std::vector<DirichletCharacter> out;
    for (u64 i = 0; i < size(); ++i) {
        auto chi = character(i);
        if (chi.is_primitive()) out.push_back(std::move(chi));
    }
    return out;
}

nlohmann::json CharacterGroup::to_json() const {
    nlohmann::json j;
    j["modulus"] = modulus();
    auto& factors = j["factors"] = nlohmann::json::array();
    for (const auto& f : data_->q.factors()) factors.push_back({f.p, f.alpha});
    auto& gens = j["generators"] = nlohmann::json::array();
    for (const auto& L : data_->locals)
        for (std::size_t k = 0; k < L.generators.size(); ++k)
            gens.push_back({{"modulus", L.modulus}, {"generator", L.generators[k]}, {"order", L.orders[k]}});
    j["value_order"] = exponent();
    auto& chars = j["characters"] = nlohmann::json::array();
    for (const auto& chi : characters()) {
        chars.push_back({{"index", chi.index()},
                         {"exponents", std::vector<u64>(chi.exponents().begin(), chi.exponents().end())},
                         {"conductor", chi.conductor()}});
    }
    return j;
}

std::vector<DirichletCharacter> enumerate_characters(u64 q) { return CharacterGroup(q).characters(); }

}  // namespace critline::arith
