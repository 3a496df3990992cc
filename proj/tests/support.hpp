#pragma once

// Shared helpers for the test binaries: random group specs and braiding
// matrices, row instantiation, and a concrete finite-field model used as
// an oracle for the symbolic unit group.

#include "nichols/classification.hpp"

#include <complex>
#include <map>
#include <random>

namespace testsupport {

using namespace nichols;

inline GroupSpecPtr spec_with(int64_t p, std::vector<Generator> gens) { return GroupSpec::make(p, std::move(gens)); }

inline FieldUnit gen(const GroupSpecPtr &s, const std::string &name) { return FieldUnit::generator(s, name); }

/// p from {0,2,3,5,7}; up to two free and two torsion generators.
inline GroupSpecPtr random_spec(std::mt19937 &rng, int64_t p) {
    static const int64_t orders[] = {2, 3, 4, 5, 6, 8, 10, 12};
    std::vector<Generator> gens;
    int nfree = std::uniform_int_distribution<int>(0, 2)(rng);
    int ntors = std::uniform_int_distribution<int>(nfree == 0 ? 1 : 0, 2)(rng);
    for (int k = 0; k < nfree; ++k) gens.push_back({"g" + std::to_string(k), 0});
    for (int k = 0; k < ntors; ++k) {
        int64_t d;
        do d = orders[std::uniform_int_distribution<int>(0, 7)(rng)];
        while (p > 0 && d % p == 0);
        gens.push_back({"z" + std::to_string(k), d});
    }
    return GroupSpec::make(p, gens);
}

inline FieldUnit random_unit(std::mt19937 &rng, const GroupSpecPtr &s, int spread = 3) {
    std::vector<int64_t> e(s->size());
    std::uniform_int_distribution<int> d(-spread, spread);
    for (auto &x : e) x = d(rng);
    return FieldUnit::from_exponents(s, e);
}

/// A random matrix that is i-finite at `i`: each product q_ij q_ji is
/// usually forced to q_ii^-m, otherwise left random and rejected later.
inline BraidingMatrix random_matrix(std::mt19937 &rng, const GroupSpecPtr &s, int rank, int i) {
    BraidingMatrix m(s, rank);
    for (int a = 0; a < rank; ++a)
        for (int b = 0; b < rank; ++b) m.set(a, b, random_unit(rng, s));
    std::uniform_int_distribution<int> coin(0, 3), power(0, 3);
    for (int j = 0; j < rank; ++j) {
        if (j == i || coin(rng) == 0) continue;
        if (coin(rng) == 0) {
            m.set(j, i, m.at(i, j).inverse());  // no edge
            continue;
        }
        FieldUnit r = m.at(i, i).pow(-power(rng));
        m.set(j, i, r * m.at(i, j).inverse());
    }
    return m;
}

inline bool i_finite(const DynkinDiagram &d, int i) { return std::holds_alternative<std::vector<int>>(cartan_row(d, i)); }

struct Instance {
    const RowTemplate *row = nullptr;
    CanonicalAssignment assignment;
    RowInstance data;
    CartanGraph graph;
};

/// Every row under every canonical assignment, graph built.
inline const std::vector<Instance> &all_instances() {
    static const std::vector<Instance> all = [] {
        std::vector<Instance> out;
        for (const auto &row : builtin_rows())
            for (const auto &a : canonical_assignments(row)) {
                Instance in;
                in.row = &row;
                in.assignment = a;
                in.data = instantiate_row(row, a.spec, a.parameter);
                in.graph = std::get<CartanGraph>(build_graph(lift(in.data.printed[0])));
                out.push_back(std::move(in));
            }
        return out;
    }();
    return all;
}

inline const Instance &first_instance(const std::string &id) {
    for (const auto &in : all_instances())
        if (in.row->id == id) return in;
    throw std::out_of_range("no row " + id);
}

/// The concrete multiplicative group of GF(p^m) (or of C when p = 0).  The
/// torsion generator w of the symbolic model maps to an element of exact
/// order N; free generators have no image, so callers only evaluate units
/// with zero free part.
class ConcreteField {
public:
    explicit ConcreteField(const GroupSpec &s) : p_(s.characteristic()), n_(s.torsion_order()) {
        if (p_ == 0) return;
        for (int m = 1; m <= 12; ++m) {
            int64_t q = 1;
            for (int k = 0; k < m; ++k) q *= p_;
            if (q > 20000) break;
            if ((q - 1) % n_ == 0) {
                build(m, q);
                return;
            }
        }
        throw std::runtime_error("no small extension field");
    }

    bool realizable() const { return p_ == 0 || !log_.empty(); }

    /// 1 + u + ... + u^(k-1) == 0 for u = w^t.
    bool qint_zero(int64_t t, int64_t k) const {
        if (p_ == 0) {
            std::complex<double> w = std::polar(1.0, 2 * M_PI * static_cast<double>(t) / static_cast<double>(n_)), acc = 0,
                                 pw = 1;
            for (int64_t j = 0; j < k; ++j, pw *= w) acc += pw;
            return std::abs(acc) < 1e-9;
        }
        int64_t step = (order_ / n_) * t % order_;
        std::vector<int64_t> acc(static_cast<std::size_t>(m_), 0);
        for (int64_t j = 0; j < k; ++j) {
            const auto &e = elem_[static_cast<std::size_t>((step * j) % order_)];
            for (int c = 0; c < m_; ++c) acc[c] = (acc[c] + e[c]) % p_;
        }
        for (auto c : acc)
            if (c) return false;
        return true;
    }

    /// Whether w^t equals -1 in the field.
    bool is_minus_one(int64_t t) const {
        if (p_ == 0) return (2 * t) % n_ == 0 && t % n_ != 0;
        int64_t e = (order_ / n_) * t % order_;
        const auto &v = elem_[static_cast<std::size_t>(e)];
        if (((v[0] + 1) % p_) != 0) return false;
        for (int c = 1; c < m_; ++c)
            if (v[c]) return false;
        return true;
    }

private:
    using Poly = std::vector<int64_t>;

    Poly mulx(const Poly &a, const Poly &f) const {
        // a * x mod f, f monic of degree m (f[m] = 1 implied)
        Poly r(static_cast<std::size_t>(m_), 0);
        int64_t top = a[m_ - 1];
        for (int c = m_ - 1; c > 0; --c) r[c] = a[c - 1];
        r[0] = 0;
        for (int c = 0; c < m_; ++c) r[c] = ((r[c] - top * f[c]) % p_ + p_) % p_;
        return r;
    }

    void build(int m, int64_t q) {
        m_ = m;
        order_ = q - 1;
        Poly f(static_cast<std::size_t>(m), 0);
        for (int64_t code = 0; code < q; ++code) {
            int64_t c = code;
            for (int k = 0; k < m; ++k, c /= p_) f[k] = c % p_;
            if (f[0] == 0) continue;
            std::vector<Poly> pw;
            std::map<Poly, int64_t> seen;
            Poly cur(static_cast<std::size_t>(m), 0);
            cur[0] = 1;
            bool ok = true;
            for (int64_t e = 0; e < order_; ++e) {
                if (!seen.emplace(cur, e).second) {
                    ok = false;
                    break;
                }
                pw.push_back(cur);
                cur = mulx(cur, f);
            }
            if (ok) {
                elem_ = std::move(pw);
                log_ = std::move(seen);
                return;
            }
        }
    }

    int64_t p_;
    int64_t n_;
    int m_ = 0;
    int64_t order_ = 0;
    std::vector<Poly> elem_;
    std::map<Poly, int64_t> log_;
};

}  // namespace testsupport
