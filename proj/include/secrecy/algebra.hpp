#pragma once

// Combinatorial and rational-function machinery behind the closed forms:
// multi-index enumeration, product-of-sums expansion with like-term merging,
// partial fractions, and the carrier types for sums of
//     c * x^p * exp(-a x) / prod_q (x + b_q)^{m_q}.

#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "secrecy/real.hpp"
#include "secrecy/specialfn.hpp"

namespace secrecy::algebra {

using Coeff = specialfn::SignedLogValue<Real>;

inline constexpr std::uint64_t kDefaultTermCap = 10'000'000;

/// Raised when an expansion would exceed the configured term cap.
class CapacityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Multi-index sets

/// Vectors of length kappa whose slot q ranges over 0..bound(q, prefix),
/// where prefix holds the values already chosen for slots 0..q-1.
struct MultiIndexSpec {
    int kappa = 1;
    std::function<int(std::size_t slot, std::span<const int> prefix)> bound;

    static MultiIndexSpec uniform(int kappa, int bound);
    static MultiIndexSpec independent(std::vector<int> bounds);
};

/// Visits every vector in lexicographic order (slot 0 most significant) and
/// returns how many were visited.
std::uint64_t for_each_multi_index(const MultiIndexSpec& spec, const std::function<void(std::span<const int>)>& visit);

std::vector<std::vector<int>> enumerate_multi_indices(const MultiIndexSpec& spec);

// ---------------------------------------------------------------------------
// Product-of-sums expansion

/// c * x^x_power * y^y_power.
struct PolyTerm {
    Coeff coeff;
    int x_power = 0;
    int y_power = 0;
};

namespace detail {
std::uint64_t checked_power_count(std::size_t base, int kappa, std::uint64_t cap);
}

/// Expands (sum_i inner_i)^kappa into a flat sum of products, one product
/// per multi-index of length kappa, merging terms whose key() coincides.
/// `product` receives the kappa selected factors; terms must expose `coeff`.
template <class Term, class Product, class KeyFn>
std::vector<Term> expand_power(std::span<const Term> inner, int kappa, Product&& product, KeyFn&& key,
                               std::uint64_t cap = kDefaultTermCap) {
    if (kappa < 1) throw std::invalid_argument("expand_power: kappa must be >= 1");
    if (inner.empty()) return {};
    detail::checked_power_count(inner.size(), kappa, cap);
    using Key = std::decay_t<decltype(key(inner[0]))>;
    std::map<Key, Term> merged;
    std::vector<const Term*> chosen(static_cast<std::size_t>(kappa));
    for_each_multi_index(MultiIndexSpec::uniform(kappa, static_cast<int>(inner.size()) - 1),
                         [&](std::span<const int> idx) {
                             for (std::size_t q = 0; q < idx.size(); ++q) chosen[q] = &inner[idx[q]];
                             Term t = product(std::span<const Term* const>(chosen));
                             if (t.coeff.is_zero()) return;
                             auto k = key(t);
                             auto it = merged.find(k);
                             if (it == merged.end())
                                 merged.emplace(std::move(k), std::move(t));
                             else
                                 it->second.coeff += t.coeff;
                         });
    std::vector<Term> out;
    out.reserve(merged.size());
    for (auto& [k, t] : merged)
        if (!t.coeff.is_zero()) out.push_back(std::move(t));
    return out;
}

/// (sum of c x^i y^j)^kappa with like powers merged.
std::vector<PolyTerm> expand_power_of_sum(std::span<const PolyTerm> inner, int kappa,
                                          std::uint64_t cap = kDefaultTermCap);

/// Merges PolyTerms with equal (x_power, y_power); zero coefficients dropped.
std::vector<PolyTerm> merge_like_terms(std::span<const PolyTerm> terms);

// ---------------------------------------------------------------------------
// Partial fractions

struct PoleSpec {
    Real location;  // b in (x + b)
    int multiplicity = 1;
};

struct PartialFractionEntry {
    Real location;
    std::vector<Real> coeffs;  // coeffs[t-1] multiplies 1/(x+b)^t
};

/// Coefficients c_{j,t} with
///     x^numerator_power / prod_j (x+b_j)^{m_j} = sum_j sum_{t=1}^{m_j} c_{j,t} / (x+b_j)^t.
/// Requires distinct locations and numerator_power < total degree. Each
/// c_{j,t} is a Taylor coefficient of the co-factor around x = -b_j, built
/// from exact binomial series of the other factors.
std::vector<PartialFractionEntry> partial_fractions(std::span<const PoleSpec> poles, int numerator_power = 0);

/// Rational function value x^numerator_power / prod (x+b)^m, for checks.
Real rational_value(std::span<const PoleSpec> poles, int numerator_power, const Real& x);

/// Value of a partial-fraction table at x.
Real partial_fraction_value(std::span<const PartialFractionEntry> table, const Real& x);

// ---------------------------------------------------------------------------
// Repeated-pole grouping

/// Partition of positions 0..k-1 by equal value: sets of positions whose value
/// occurs more than once (in order of first occurrence) and the positions
/// whose value is unique.
struct PoleGrouping {
    int repeated_count = 0;                     // Z
    std::vector<std::vector<int>> repeated;     // Q_1..Q_Z
    std::vector<int> singles;                   // Q-bar
};

PoleGrouping group_poles(std::span<const int> values);

// ---------------------------------------------------------------------------
// Rational-exponential terms

/// Exact identity of a pole location: num/den times a common real scale.
/// Locations are compared through this key, never through floating point.
struct PoleKey {
    std::int64_t num = 0;
    std::int64_t den = 1;

    static PoleKey make(std::int64_t num, std::int64_t den);
    auto operator<=>(const PoleKey&) const = default;
};

struct Pole {
    PoleKey key;
    Real location;
    int multiplicity = 1;
};

/// coeff * x^poly_power * exp(-exp_rate x) / prod (x + location)^multiplicity.
/// exp_rate is rate_multiple times the owning sum's rate unit.
struct RationalExpTerm {
    Coeff coeff;
    int poly_power = 0;
    int rate_multiple = 0;
    Real exp_rate{0};
    std::vector<Pole> poles;  // sorted by key, distinct keys

    int total_degree() const;
    Real value(const Real& x) const;
};

using TermKey = std::tuple<int, int, std::vector<std::pair<PoleKey, int>>>;
TermKey term_key(const RationalExpTerm& t);

/// Product of terms; coincident pole locations are merged via group_poles.
RationalExpTerm multiply_terms(std::span<const RationalExpTerm* const> factors);

/// constant - sum(terms). Every closed-form CDF in this project is a TermSum.
struct TermSum {
    std::vector<RationalExpTerm> terms;
    Real constant{1};

    std::size_t size() const { return terms.size(); }
    Real sum_terms(const Real& x) const;
    Real eval(const Real& x) const { return constant - sum_terms(x); }

    /// Multiplies every term coefficient by `factor`.
    void scale_terms(const Coeff& factor);
    void append(std::vector<RationalExpTerm> more);
    /// Merges terms with equal TermKey and drops exact zeros.
    void merge_like_terms();
};

/// Sum of values with pairwise (tree) reduction; order-deterministic.
Real pairwise_sum(std::span<const Real> values);

}  // namespace secrecy::algebra
