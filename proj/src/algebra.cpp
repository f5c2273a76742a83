#include "secrecy/algebra.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>

namespace secrecy::algebra {

// ---------------------------------------------------------------------------
// Multi-index sets

MultiIndexSpec MultiIndexSpec::uniform(int kappa, int bound) {
    return {kappa, [bound](std::size_t, std::span<const int>) { return bound; }};
}

MultiIndexSpec MultiIndexSpec::independent(std::vector<int> bounds) {
    const int kappa = static_cast<int>(bounds.size());
    return {kappa, [b = std::move(bounds)](std::size_t slot, std::span<const int>) { return b[slot]; }};
}

namespace {

void visit_slot(const MultiIndexSpec& spec, std::vector<int>& current, std::size_t slot,
                const std::function<void(std::span<const int>)>& visit, std::uint64_t& count) {
    if (slot == current.size()) {
        ++count;
        visit(current);
        return;
    }
    const int hi = spec.bound(slot, std::span<const int>(current.data(), slot));
    for (int v = 0; v <= hi; ++v) {
        current[slot] = v;
        visit_slot(spec, current, slot + 1, visit, count);
    }
}

}  // namespace

std::uint64_t for_each_multi_index(const MultiIndexSpec& spec,
                                   const std::function<void(std::span<const int>)>& visit) {
    if (spec.kappa < 1) throw std::invalid_argument("multi-index length must be >= 1");
    std::vector<int> current(static_cast<std::size_t>(spec.kappa), 0);
    std::uint64_t count = 0;
    visit_slot(spec, current, 0, visit, count);
    return count;
}

std::vector<std::vector<int>> enumerate_multi_indices(const MultiIndexSpec& spec) {
    std::vector<std::vector<int>> out;
    for_each_multi_index(spec, [&](std::span<const int> v) { out.emplace_back(v.begin(), v.end()); });
    return out;
}

// ---------------------------------------------------------------------------
// Expansion

std::uint64_t detail::checked_power_count(std::size_t base, int kappa, std::uint64_t cap) {
    std::uint64_t count = 1;
    for (int i = 0; i < kappa; ++i) {
        if (count > cap / std::max<std::uint64_t>(base, 1)) {
            throw CapacityError("expansion of a " + std::to_string(base) + "-term sum to power " +
                                std::to_string(kappa) + " exceeds the term cap of " + std::to_string(cap));
        }
        count *= base;
    }
    if (count > cap)
        throw CapacityError("expansion needs " + std::to_string(count) + " products, cap is " + std::to_string(cap));
    return count;
}

std::vector<PolyTerm> expand_power_of_sum(std::span<const PolyTerm> inner, int kappa, std::uint64_t cap) {
    return expand_power(
        inner, kappa,
        [](std::span<const PolyTerm* const> f) {
            PolyTerm t{Coeff::from_log(Real(0), 1), 0, 0};
            for (const PolyTerm* p : f) {
                t.coeff *= p->coeff;
                t.x_power += p->x_power;
                t.y_power += p->y_power;
            }
            return t;
        },
        [](const PolyTerm& t) { return std::pair{t.x_power, t.y_power}; }, cap);
}

std::vector<PolyTerm> merge_like_terms(std::span<const PolyTerm> terms) {
    std::map<std::pair<int, int>, Coeff> acc;
    for (const auto& t : terms) acc[{t.x_power, t.y_power}] += t.coeff;
    std::vector<PolyTerm> out;
    for (auto& [k, c] : acc)
        if (!c.is_zero()) out.push_back({c, k.first, k.second});
    return out;
}

// ---------------------------------------------------------------------------
// Partial fractions

namespace {

// Truncated power-series product, both series and the result of length n.
std::vector<Real> series_mul(const std::vector<Real>& a, const std::vector<Real>& b, std::size_t n) {
    std::vector<Real> out(n, Real(0));
    for (std::size_t i = 0; i < std::min(n, a.size()); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; i + j < n && j < b.size(); ++j) out[i + j] += a[i] * b[j];
    }
    return out;
}

}  // namespace

std::vector<PartialFractionEntry> partial_fractions(std::span<const PoleSpec> poles, int numerator_power) {
    int degree = 0;
    for (const auto& p : poles) {
        if (p.multiplicity < 1) throw std::invalid_argument("partial_fractions: multiplicity must be >= 1");
        if (p.location < 0) throw std::invalid_argument("partial_fractions: pole locations must be >= 0");
        degree += p.multiplicity;
    }
    if (degree < 1) throw std::invalid_argument("partial_fractions: empty denominator");
    if (numerator_power < 0 || numerator_power >= degree)
        throw std::invalid_argument("partial_fractions: numerator degree must be below the denominator degree");
    for (std::size_t i = 0; i < poles.size(); ++i)
        for (std::size_t j = i + 1; j < poles.size(); ++j)
            if (poles[i].location == poles[j].location)
                throw std::invalid_argument("partial_fractions: coincident poles must be grouped first");

    std::vector<PartialFractionEntry> table;
    table.reserve(poles.size());
    for (std::size_t j = 0; j < poles.size(); ++j) {
        const Real& bj = poles[j].location;
        const auto len = static_cast<std::size_t>(poles[j].multiplicity);

        // With u = x + b_j the co-factor is (u - b_j)^q * prod_{i != j} (u + d_i)^{-m_i}.
        std::vector<Real> series(len, Real(0));
        for (int r = 0; r <= numerator_power && static_cast<std::size_t>(r) < len; ++r) {
            using boost::multiprecision::pow;
            const Real c = specialfn::binomial_real<Real>(static_cast<unsigned>(numerator_power), static_cast<unsigned>(r));
            const int e = numerator_power - r;
            series[static_cast<std::size_t>(r)] = e == 0 ? c : Real(c * pow(-bj, e));
        }
        for (std::size_t i = 0; i < poles.size(); ++i) {
            if (i == j) continue;
            const Real d = poles[i].location - bj;
            const int m = poles[i].multiplicity;
            // (u + d)^{-m} = d^{-m} sum_s C(m+s-1, s) (-u/d)^s
            std::vector<Real> factor(len);
            Real lead = Real(1) / boost::multiprecision::pow(d, m);
            for (std::size_t s = 0; s < len; ++s) {
                factor[s] = lead * specialfn::binomial_real<Real>(static_cast<unsigned>(m + static_cast<int>(s) - 1),
                                                                  static_cast<unsigned>(s));
                lead *= -Real(1) / d;
            }
            series = series_mul(series, factor, len);
        }
        PartialFractionEntry e{bj, std::vector<Real>(len)};
        for (std::size_t t = 1; t <= len; ++t) e.coeffs[t - 1] = series[len - t];
        table.push_back(std::move(e));
    }
    return table;
}

Real rational_value(std::span<const PoleSpec> poles, int numerator_power, const Real& x) {
    Real v = boost::multiprecision::pow(x, numerator_power);
    for (const auto& p : poles) v /= boost::multiprecision::pow(x + p.location, p.multiplicity);
    return v;
}

Real partial_fraction_value(std::span<const PartialFractionEntry> table, const Real& x) {
    Real v(0);
    for (const auto& e : table) {
        Real inv = Real(1) / (x + e.location);
        Real pw = inv;
        for (const auto& c : e.coeffs) {
            v += c * pw;
            pw *= inv;
        }
    }
    return v;
}

// ---------------------------------------------------------------------------
// Grouping

PoleGrouping group_poles(std::span<const int> values) {
    std::vector<int> order;  // distinct values in order of first occurrence
    std::map<int, std::vector<int>> positions;
    for (int i = 0; i < static_cast<int>(values.size()); ++i) {
        auto [it, fresh] = positions.try_emplace(values[static_cast<std::size_t>(i)]);
        if (fresh) order.push_back(values[static_cast<std::size_t>(i)]);
        it->second.push_back(i);
    }
    PoleGrouping g;
    for (int v : order) {
        auto& pos = positions[v];
        if (pos.size() > 1)
            g.repeated.push_back(pos);
        else
            g.singles.push_back(pos.front());
    }
    std::sort(g.singles.begin(), g.singles.end());
    g.repeated_count = static_cast<int>(g.repeated.size());
    return g;
}

// ---------------------------------------------------------------------------
// Terms

PoleKey PoleKey::make(std::int64_t num, std::int64_t den) {
    if (den == 0) throw std::invalid_argument("PoleKey: zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    return {num / g, den / g};
}

int RationalExpTerm::total_degree() const {
    int d = 0;
    for (const auto& p : poles) d += p.multiplicity;
    return d;
}

Real RationalExpTerm::value(const Real& x) const {
    using boost::multiprecision::exp;
    using boost::multiprecision::log;
    if (coeff.is_zero()) return Real(0);
    Real lg = coeff.log_magnitude - exp_rate * x;
    if (poly_power != 0) lg += poly_power * log(x);
    for (const auto& p : poles) lg -= p.multiplicity * log(x + p.location);
    return coeff.sign > 0 ? Real(exp(lg)) : Real(-exp(lg));
}

TermKey term_key(const RationalExpTerm& t) {
    std::vector<std::pair<PoleKey, int>> pk;
    pk.reserve(t.poles.size());
    for (const auto& p : t.poles) pk.emplace_back(p.key, p.multiplicity);
    return {t.poly_power, t.rate_multiple, std::move(pk)};
}

RationalExpTerm multiply_terms(std::span<const RationalExpTerm* const> factors) {
    RationalExpTerm out;
    out.coeff = Coeff::from_log(Real(0), 1);
    std::vector<const Pole*> all;
    for (const RationalExpTerm* f : factors) {
        out.coeff *= f->coeff;
        out.poly_power += f->poly_power;
        out.rate_multiple += f->rate_multiple;
        out.exp_rate += f->exp_rate;
        for (const auto& p : f->poles) all.push_back(&p);
    }
    // Label each pole by its exact key, then merge repeated labels.
    std::vector<PoleKey> distinct;
    std::vector<int> labels;
    labels.reserve(all.size());
    for (const Pole* p : all) {
        auto it = std::find(distinct.begin(), distinct.end(), p->key);
        if (it == distinct.end()) {
            distinct.push_back(p->key);
            labels.push_back(static_cast<int>(distinct.size()) - 1);
        } else {
            labels.push_back(static_cast<int>(it - distinct.begin()));
        }
    }
    const PoleGrouping g = group_poles(labels);
    for (const auto& set : g.repeated) {
        Pole merged = *all[static_cast<std::size_t>(set.front())];
        merged.multiplicity = 0;
        for (int q : set) merged.multiplicity += all[static_cast<std::size_t>(q)]->multiplicity;
        out.poles.push_back(std::move(merged));
    }
    for (int q : g.singles) out.poles.push_back(*all[static_cast<std::size_t>(q)]);
    std::sort(out.poles.begin(), out.poles.end(), [](const Pole& a, const Pole& b) { return a.key < b.key; });
    return out;
}

Real pairwise_sum(std::span<const Real> values) {
    if (values.empty()) return Real(0);
    if (values.size() <= 8) {
        Real s(0);
        for (const auto& v : values) s += v;
        return s;
    }
    const std::size_t half = values.size() / 2;
    return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

Real TermSum::sum_terms(const Real& x) const {
    using boost::multiprecision::exp;
    using boost::multiprecision::log;
    if (terms.empty()) return Real(0);
    const Real log_x = log(x);
    std::map<PoleKey, Real> log_shifted;
    std::vector<Real> vals;
    vals.reserve(terms.size());
    for (const auto& t : terms) {
        Real lg = t.coeff.log_magnitude - t.exp_rate * x;
        if (t.poly_power != 0) lg += t.poly_power * log_x;
        for (const auto& p : t.poles) {
            auto it = log_shifted.find(p.key);
            if (it == log_shifted.end()) it = log_shifted.emplace(p.key, log(x + p.location)).first;
            lg -= p.multiplicity * it->second;
        }
        vals.push_back(t.coeff.sign > 0 ? Real(exp(lg)) : Real(-exp(lg)));
    }
    return pairwise_sum(vals);
}

void TermSum::scale_terms(const Coeff& factor) {
    for (auto& t : terms) t.coeff *= factor;
    std::erase_if(terms, [](const RationalExpTerm& t) { return t.coeff.is_zero(); });
}

void TermSum::append(std::vector<RationalExpTerm> more) {
    for (auto& t : more)
        if (!t.coeff.is_zero()) terms.push_back(std::move(t));
}

void TermSum::merge_like_terms() {
    std::map<TermKey, RationalExpTerm> merged;
    for (auto& t : terms) {
        auto k = term_key(t);
        auto it = merged.find(k);
        if (it == merged.end())
            merged.emplace(std::move(k), std::move(t));
        else
            it->second.coeff += t.coeff;
    }
    terms.clear();
    for (auto& [k, t] : merged)
        if (!t.coeff.is_zero()) terms.push_back(std::move(t));
}

}  // namespace secrecy::algebra
