#include "nichols/unitgroup.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <tuple>

namespace nichols {

namespace detail {

int64_t floor_mod(int64_t a, int64_t m) {
    int64_t r = a % m;
    return r < 0 ? r + m : r;
}

int64_t gcd(int64_t a, int64_t b) { return std::gcd(a, b); }

int64_t lcm(int64_t a, int64_t b) { return std::lcm(a, b); }

}  // namespace detail

namespace {

bool is_prime(int64_t n) {
    if (n < 2) return false;
    for (int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// x with a*x = 1 mod m, for gcd(a, m) = 1.
int64_t mod_inverse(int64_t a, int64_t m) {
    int64_t old_r = detail::floor_mod(a, m), r = m;
    int64_t old_s = 1, s = 0;
    while (r != 0) {
        int64_t quot = old_r / r;
        std::tie(old_r, r) = std::make_pair(r, old_r - quot * r);
        std::tie(old_s, s) = std::make_pair(s, old_s - quot * s);
    }
    return detail::floor_mod(old_s, m);
}

struct Congruence {
    int64_t residue;
    int64_t modulus;
};

// Solutions of e*m = t (mod d) as a single congruence on m.
std::optional<Congruence> solve_linear(int64_t e, int64_t t, int64_t d) {
    e = detail::floor_mod(e, d);
    t = detail::floor_mod(t, d);
    int64_t g = std::gcd(e, d);
    if (t % g != 0) return std::nullopt;
    int64_t md = d / g;
    if (md == 1) return Congruence{0, 1};
    int64_t m0 = static_cast<int64_t>((static_cast<__int128>(t / g) * mod_inverse(e / g, md)) % md);
    return Congruence{m0, md};
}

void require_same(const FieldUnit &a, const FieldUnit &b) {
    if (!a.valid() || !b.valid()) throw GroupError("uninitialized field unit");
    if (!same_group(a.spec(), b.spec())) throw GroupError("field units belong to different groups");
}

}  // namespace

GroupSpec::GroupSpec(int64_t p, std::vector<Generator> gens, std::optional<std::size_t> sign)
    : p_(p), gens_(std::move(gens)), sign_(sign) {
    for (const auto &g : gens_) {
        if (g.order == 0) {
            slot_.push_back(static_cast<int64_t>(free_rank_++));
        } else {
            slot_.push_back(-1);
            torsion_ = detail::lcm(torsion_, g.order);
        }
    }
}

GroupSpecPtr GroupSpec::make(int64_t p, std::vector<Generator> generators) {
    if (p != 0 && !is_prime(p))
        throw GroupError("characteristic must be 0 or a prime, got " + std::to_string(p));
    std::vector<Generator> gens;
    std::optional<std::size_t> sign;
    if (p != 2) {
        gens.push_back({sign_name, 2});
        sign = 0;
    }
    for (auto &g : generators) {
        if (g.name.empty() || g.name == sign_name)
            throw GroupError("reserved or empty generator name '" + g.name + "'");
        if (g.order < 0 || g.order == 1)
            throw GroupError("generator " + g.name + " has invalid order " + std::to_string(g.order));
        if (g.order > 0 && p > 0 && g.order % p == 0)
            throw GroupError("order of " + g.name + " divisible by p");
        for (const auto &h : gens)
            if (h.name == g.name) throw GroupError("duplicate generator " + g.name);
        gens.push_back(std::move(g));
    }
    return GroupSpecPtr(new GroupSpec(p, std::move(gens), sign));
}

std::optional<std::size_t> GroupSpec::find(const std::string &name) const {
    for (std::size_t k = 0; k < gens_.size(); ++k)
        if (gens_[k].name == name) return k;
    return std::nullopt;
}

std::optional<std::size_t> GroupSpec::free_slot(std::size_t k) const {
    if (slot_.at(k) < 0) return std::nullopt;
    return static_cast<std::size_t>(slot_[k]);
}

bool GroupSpec::operator==(const GroupSpec &other) const {
    if (p_ != other.p_ || gens_.size() != other.gens_.size()) return false;
    for (std::size_t k = 0; k < gens_.size(); ++k)
        if (gens_[k].name != other.gens_[k].name || gens_[k].order != other.gens_[k].order)
            return false;
    return true;
}

bool same_group(const GroupSpecPtr &a, const GroupSpecPtr &b) {
    return a == b || (a && b && *a == *b);
}

FieldUnit::FieldUnit(GroupSpecPtr spec, std::vector<int64_t> coords)
    : spec_(std::move(spec)), exps_(std::move(coords)) {
    if (!spec_) throw GroupError("null group");
    if (exps_.size() != spec_->free_rank() + 1) throw GroupError("coordinate vector has wrong length");
    canonicalize();
}

void FieldUnit::canonicalize() { torsion() = detail::floor_mod(torsion(), spec_->torsion_order()); }

FieldUnit FieldUnit::identity(GroupSpecPtr spec) {
    auto n = spec->free_rank() + 1;
    return FieldUnit(std::move(spec), std::vector<int64_t>(n, 0));
}

FieldUnit FieldUnit::minus_one(GroupSpecPtr spec) {
    auto s = spec->sign_index();
    FieldUnit u = identity(spec);
    if (s) u.torsion() = spec->torsion_order() / 2;
    return u;
}

FieldUnit FieldUnit::generator(GroupSpecPtr spec, std::size_t k) {
    if (k >= spec->size()) throw GroupError("generator index out of range");
    FieldUnit u = identity(spec);
    if (auto slot = spec->free_slot(k))
        u.exps_[*slot] = 1;
    else
        u.torsion() = spec->torsion_order() / spec->generator(k).order;
    u.canonicalize();
    return u;
}

FieldUnit FieldUnit::generator(GroupSpecPtr spec, const std::string &name) {
    auto k = spec->find(name);
    if (!k) throw GroupError("unknown generator " + name);
    return generator(std::move(spec), *k);
}

FieldUnit FieldUnit::from_exponents(GroupSpecPtr spec, const std::vector<int64_t> &exps) {
    if (exps.size() != spec->size()) throw GroupError("exponent vector has wrong length");
    FieldUnit u = identity(spec);
    for (std::size_t k = 0; k < exps.size(); ++k)
        if (exps[k] != 0) u = u * generator(spec, k).pow(exps[k]);
    return u;
}

FieldUnit FieldUnit::from_coordinates(GroupSpecPtr spec, std::vector<int64_t> coords) {
    return FieldUnit(std::move(spec), std::move(coords));
}

bool FieldUnit::is_identity() const {
    return std::all_of(exps_.begin(), exps_.end(), [](int64_t e) { return e == 0; });
}

FieldUnit FieldUnit::inverse() const { return pow(-1); }

FieldUnit FieldUnit::pow(int64_t k) const {
    std::vector<int64_t> out(exps_.size());
    for (std::size_t i = 0; i + 1 < exps_.size(); ++i) out[i] = exps_[i] * k;
    const int64_t n = spec_->torsion_order();
    out.back() = static_cast<int64_t>(static_cast<__int128>(torsion()) * detail::floor_mod(k, n) % n);
    return FieldUnit(spec_, std::move(out));
}

FieldUnit FieldUnit::operator*(const FieldUnit &rhs) const {
    require_same(*this, rhs);
    std::vector<int64_t> out(exps_.size());
    for (std::size_t i = 0; i < exps_.size(); ++i) out[i] = exps_[i] + rhs.exps_[i];
    return FieldUnit(spec_, std::move(out));
}

bool FieldUnit::operator==(const FieldUnit &rhs) const {
    require_same(*this, rhs);
    return exps_ == rhs.exps_;
}

namespace {

struct TorsionWord {
    bool negative = false;
    std::vector<std::pair<std::size_t, int64_t>> factors;  // (generator, exponent)
};

// Shortest rendering of w^t as +-prod g^e over the torsion generators:
// fewest total |e|, then fewest negative exponents, then no sign.
std::optional<TorsionWord> torsion_word(const GroupSpec &spec, int64_t t) {
    const int64_t n = spec.torsion_order();
    std::vector<std::size_t> gens;
    std::size_t combos = 1;
    for (std::size_t k = 0; k < spec.size(); ++k)
        if (!spec.free_slot(k) && spec.sign_index() != k) {
            gens.push_back(k);
            combos *= static_cast<std::size_t>(spec.generator(k).order);
            if (combos > 200000) return std::nullopt;
        }
    std::optional<TorsionWord> best;
    std::tuple<int64_t, int64_t, int> best_cost;
    std::vector<int64_t> e(gens.size());
    for (std::size_t c = 0; c < combos; ++c) {
        std::size_t rest = c;
        int64_t sum = 0, size = 0, neg = 0;
        for (std::size_t g = 0; g < gens.size(); ++g) {
            int64_t d = spec.generator(gens[g]).order;
            int64_t v = static_cast<int64_t>(rest % static_cast<std::size_t>(d));
            rest /= static_cast<std::size_t>(d);
            e[g] = v > d / 2 ? v - d : v;  // (-d/2, d/2]
            sum = detail::floor_mod(sum + e[g] * (n / d), n);
            size += e[g] < 0 ? -e[g] : e[g];
            neg += e[g] < 0;
        }
        for (int sign = 0; sign < (spec.sign_index() ? 2 : 1); ++sign) {
            if (detail::floor_mod(sum + sign * (n / 2), n) != t) continue;
            auto cost = std::make_tuple(size, neg, sign);
            if (best && cost >= best_cost) continue;
            TorsionWord w;
            w.negative = sign == 1;
            for (std::size_t g = 0; g < gens.size(); ++g)
                if (e[g] != 0) w.factors.emplace_back(gens[g], e[g]);
            best = w;
            best_cost = cost;
        }
    }
    return best;
}

std::string power(const std::string &name, int64_t e) {
    return e == 1 ? name : name + "^" + std::to_string(e);
}

}  // namespace

std::string FieldUnit::to_string() const {
    const auto &spec = *spec_;
    bool negative = false;
    std::vector<std::pair<std::size_t, std::string>> factors;  // ordered by generator
    if (torsion() != 0) {
        if (auto w = torsion_word(spec, torsion())) {
            negative = w->negative;
            for (auto [k, e] : w->factors) factors.emplace_back(k, power(spec.generator(k).name, e));
        } else {
            factors.emplace_back(0, power("w" + std::to_string(spec.torsion_order()), torsion()));
        }
    }
    for (std::size_t k = 0; k < spec.size(); ++k)
        if (auto slot = spec.free_slot(k); slot && exps_[*slot] != 0)
            factors.emplace_back(k, power(spec.generator(k).name, exps_[*slot]));
    std::sort(factors.begin(), factors.end());
    if (factors.empty()) return negative ? "-1" : "1";
    std::ostringstream os;
    if (negative) os << '-';
    for (std::size_t k = 0; k < factors.size(); ++k) os << (k ? "*" : "") << factors[k].second;
    return os.str();
}

std::optional<int64_t> element_order(const FieldUnit &u) {
    const auto &c = u.coordinates();
    for (std::size_t i = 0; i + 1 < c.size(); ++i)
        if (c[i] != 0) return std::nullopt;
    const int64_t n = u.spec()->torsion_order();
    return n / detail::gcd(c.back(), n);
}

std::optional<int64_t> min_power_hitting(const FieldUnit &q, const FieldUnit &target) {
    require_same(q, target);
    const auto &qe = q.coordinates();
    const auto &te = target.coordinates();

    // Free components pin m exactly unless q has no free part.
    std::optional<int64_t> pinned;
    for (std::size_t k = 0; k + 1 < qe.size(); ++k) {
        if (qe[k] == 0) {
            if (te[k] != 0) return std::nullopt;
            continue;
        }
        if (te[k] % qe[k] != 0) return std::nullopt;
        int64_t m = te[k] / qe[k];
        if (m < 0 || (pinned && *pinned != m)) return std::nullopt;
        pinned = m;
    }

    auto c = solve_linear(qe.back(), te.back(), q.spec()->torsion_order());
    if (!c) return std::nullopt;
    if (pinned) {
        if (detail::floor_mod(*pinned - c->residue, c->modulus) != 0) return std::nullopt;
        return pinned;
    }
    return c->residue;
}

bool qint_vanishes(const FieldUnit &q, int64_t k) {
    if (k < 1) throw std::invalid_argument("quantum integer index must be positive");
    if (q.is_identity()) {
        int64_t p = q.spec()->characteristic();
        return p > 0 && k % p == 0;
    }
    return q.pow(k).is_identity();
}

std::vector<FieldUnit> roots_of(const FieldUnit &target, int64_t k) {
    if (k == 0) throw std::invalid_argument("roots_of: exponent must be nonzero");
    FieldUnit t = k > 0 ? target : target.inverse();
    k = k > 0 ? k : -k;
    const auto &spec = target.spec();
    std::vector<int64_t> base = t.coordinates();
    for (std::size_t i = 0; i + 1 < base.size(); ++i) {
        if (base[i] % k != 0) return {};
        base[i] /= k;
    }
    const int64_t n = spec->torsion_order();
    auto c = solve_linear(k, base.back(), n);
    if (!c) return {};
    std::vector<FieldUnit> out;
    for (int64_t x = c->residue; x < n; x += c->modulus) {
        base.back() = x;
        out.push_back(FieldUnit::from_coordinates(spec, base));
    }
    return out;
}

}  // namespace nichols
