#pragma once

// Exact arithmetic in a finitely generated model of the unit group k* of a
// field of characteristic p.  Generators of infinite order are independent;
// the torsion part is the cyclic group of N-th roots of unity, N the lcm of
// all declared orders, and a generator of order d is w^(N/d) for one fixed
// primitive N-th root w.  So two generators of equal order are equal, and a
// generator of even order d satisfies g^(d/2) = -1, as in any field.
// When p != 2 a built-in order-2 generator stands for -1.

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace nichols {

/// Raised when elements of different groups are combined, or when a group
/// declaration violates the characteristic constraints.
class GroupError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

struct Generator {
    std::string name;
    int64_t order = 0;  // 0 = infinite order
};

class GroupSpec;
using GroupSpecPtr = std::shared_ptr<const GroupSpec>;

class GroupSpec {
public:
    static constexpr const char *sign_name = "-1";

    /// Builds the group for characteristic p (0 or a prime) on the given
    /// user generators.  The sign generator is prepended when p != 2.
    /// Throws GroupError on a bad characteristic, an order of 1, an order
    /// divisible by p, or a duplicate / reserved name.
    static GroupSpecPtr make(int64_t p, std::vector<Generator> generators);

    int64_t characteristic() const { return p_; }
    std::size_t size() const { return gens_.size(); }
    const Generator &generator(std::size_t k) const { return gens_.at(k); }
    const std::vector<Generator> &generators() const { return gens_; }
    std::optional<std::size_t> sign_index() const { return sign_; }
    std::optional<std::size_t> find(const std::string &name) const;

    /// N: the order of the torsion subgroup generated by the declared
    /// finite-order generators (1 when there are none).
    int64_t torsion_order() const { return torsion_; }
    std::size_t free_rank() const { return free_rank_; }
    /// Coordinate slot of a free generator, or nullopt for a torsion one.
    std::optional<std::size_t> free_slot(std::size_t k) const;

    bool operator==(const GroupSpec &other) const;

private:
    GroupSpec(int64_t p, std::vector<Generator> gens, std::optional<std::size_t> sign);

    int64_t p_;
    std::vector<Generator> gens_;
    std::optional<std::size_t> sign_;
    int64_t torsion_ = 1;
    std::size_t free_rank_ = 0;
    std::vector<int64_t> slot_;  // free slot per generator, -1 for torsion
};

bool same_group(const GroupSpecPtr &a, const GroupSpecPtr &b);

class FieldUnit {
public:
    FieldUnit() = default;  // empty; only valid as an assignment target

    static FieldUnit identity(GroupSpecPtr spec);
    /// The element -1; the identity when p = 2.
    static FieldUnit minus_one(GroupSpecPtr spec);
    static FieldUnit generator(GroupSpecPtr spec, std::size_t k);
    static FieldUnit generator(GroupSpecPtr spec, const std::string &name);
    /// prod_k g_k^exps[k] over the declared generators (sign included).
    static FieldUnit from_exponents(GroupSpecPtr spec, const std::vector<int64_t> &exps);

    /// Inverse of coordinates(); the torsion entry is reduced mod N.
    static FieldUnit from_coordinates(GroupSpecPtr spec, std::vector<int64_t> coords);

    const GroupSpecPtr &spec() const { return spec_; }
    /// Canonical coordinates: one exponent per free generator, then the
    /// torsion exponent t in [0, N) of w^t.
    const std::vector<int64_t> &coordinates() const { return exps_; }
    bool valid() const { return spec_ != nullptr; }

    bool is_identity() const;
    FieldUnit inverse() const;
    FieldUnit pow(int64_t k) const;

    FieldUnit operator*(const FieldUnit &rhs) const;
    FieldUnit &operator*=(const FieldUnit &rhs) { return *this = *this * rhs; }

    /// Coordinate equality; canonical form makes this group equality.
    bool operator==(const FieldUnit &rhs) const;
    bool operator!=(const FieldUnit &rhs) const { return !(*this == rhs); }

    std::string to_string() const;

private:
    FieldUnit(GroupSpecPtr spec, std::vector<int64_t> coords);
    void canonicalize();
    int64_t &torsion() { return exps_.back(); }
    int64_t torsion() const { return exps_.back(); }

    GroupSpecPtr spec_;
    std::vector<int64_t> exps_;
};

/// Least d >= 1 with u^d = 1; nullopt when u has infinite order.
std::optional<int64_t> element_order(const FieldUnit &u);

/// Least m >= 0 with q^m = target, or nullopt when there is none.
std::optional<int64_t> min_power_hitting(const FieldUnit &q, const FieldUnit &target);

/// Whether the quantum integer (k)_q = 1 + q + ... + q^(k-1) vanishes.
bool qint_vanishes(const FieldUnit &q, int64_t k);

/// All x with x^k = target (k != 0) inside the modelled group.  Finite
/// because torsion is finite and free components have at most one k-th root.
std::vector<FieldUnit> roots_of(const FieldUnit &target, int64_t k);

namespace detail {
int64_t floor_mod(int64_t a, int64_t m);
int64_t gcd(int64_t a, int64_t b);
int64_t lcm(int64_t a, int64_t b);
}  // namespace detail

}  // namespace nichols
