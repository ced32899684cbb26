#pragma once

// Antichain bases of upward-closed sets and the backward coverability
// saturation engine for labelled well-structured transition systems.

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "wsbn/common.hpp"

namespace wsbn {

/// Drops every element that lies above another kept element. Among mutually
/// equivalent elements the earliest occurrence survives; survivors keep their
/// input order.
template <class Config, class Leq>
std::vector<Config> minimize(std::span<const Config> configs, Leq&& leq) {
    std::vector<bool> dead(configs.size(), false);
    std::vector<std::size_t> kept;
    for (std::size_t i = 0; i < configs.size(); ++i) {
        bool covered = false;
        for (std::size_t k : kept) {
            if (!dead[k] && leq(configs[k], configs[i])) {
                covered = true;
                break;
            }
        }
        if (covered) {
            dead[i] = true;
            continue;
        }
        for (std::size_t k : kept) {
            if (!dead[k] && leq(configs[i], configs[k])) dead[k] = true;
        }
        kept.push_back(i);
    }
    std::vector<Config> out;
    for (std::size_t i = 0; i < configs.size(); ++i) {
        if (!dead[i]) out.push_back(configs[i]);
    }
    return out;
}

template <class Config, class Leq>
std::vector<Config> minimize(const std::vector<Config>& configs, Leq&& leq) {
    return minimize(std::span<const Config>(configs), std::forward<Leq>(leq));
}

/// True iff the upward closure of `upper` contains the upward closure of `lower`.
template <class Config, class Leq>
bool basis_subsumes(std::span<const Config> upper, std::span<const Config> lower, Leq&& leq) {
    return std::all_of(lower.begin(), lower.end(), [&](const Config& c) {
        return std::any_of(upper.begin(), upper.end(), [&](const Config& b) { return leq(b, c); });
    });
}

template <class Config, class Leq>
bool basis_subsumes(const std::vector<Config>& upper, const std::vector<Config>& lower, Leq&& leq) {
    return basis_subsumes(std::span<const Config>(upper), std::span<const Config>(lower),
                          std::forward<Leq>(leq));
}

template <class Config, class Leq>
bool is_antichain(std::span<const Config> basis, Leq&& leq) {
    for (std::size_t i = 0; i < basis.size(); ++i) {
        for (std::size_t j = 0; j < basis.size(); ++j) {
            if (i != j && leq(basis[i], basis[j])) return false;
        }
    }
    return true;
}

/// The contract a configuration space must satisfy to be saturated backwards.
/// Labels are dense indices `0 .. label_count()-1` in declaration order;
/// `pre_basis(l, c)` returns a finite basis of the one-step predecessors of
/// the upward closure of `c` restricted to transitions labelled `l`.
template <class S>
concept OrderedSpace = requires(const S& s, const typename S::Config& c, std::size_t label) {
    typename S::Config;
    { s.leq(c, c) } -> std::convertible_to<bool>;
    { s.covered_by_initial(c) } -> std::convertible_to<bool>;
    { s.label_count() } -> std::convertible_to<std::size_t>;
    { s.pre_basis(label, c) } -> std::convertible_to<std::vector<typename S::Config>>;
};

template <class Config>
struct Verdict {
    Outcome outcome = Outcome::NotCoverable;
    std::size_t iterations = 0;
    /// Final basis of pre*(target) on a negative verdict (the saturation
    /// certificate); the basis at the point of stopping otherwise.
    std::vector<Config> basis;
    /// Positive verdicts: the chain e_0, e_1, ..., e_m = target where e_0 is
    /// covered by an initial configuration and some successor of e_{i-1}
    /// under `witness_labels[i-1]` lies above e_i.
    std::vector<Config> witness_chain;
    std::vector<std::size_t> witness_labels;
    std::size_t elements_generated = 0;

    bool coverable() const { return outcome == Outcome::Coverable; }
};

/// Backward saturation U_0 = up(target), U_{i+1} = U_i u pre(U_i) until the
/// basis stops growing. Only elements added in the previous round are expanded
/// since pre distributes over union.
template <OrderedSpace S>
Verdict<typename S::Config> backward_coverability(const S& space, const typename S::Config& target,
                                                  const ResourceLimits& limits = {}) {
    using Config = typename S::Config;
    constexpr std::size_t kNone = static_cast<std::size_t>(-1);

    struct Entry {
        Config config;
        std::size_t label;
        std::size_t parent;
    };
    std::vector<Entry> store;
    store.push_back({target, kNone, kNone});
    std::vector<std::size_t> basis{0};
    std::vector<std::size_t> frontier{0};
    const auto leq = [&](const Config& a, const Config& b) { return space.leq(a, b); };

    Verdict<Config> verdict;
    auto snapshot = [&] {
        std::vector<Config> out;
        out.reserve(basis.size());
        for (std::size_t i : basis) out.push_back(store[i].config);
        return out;
    };
    auto finish_positive = [&](std::size_t idx) {
        verdict.outcome = Outcome::Coverable;
        for (std::size_t i = idx; i != kNone; i = store[i].parent) {
            verdict.witness_chain.push_back(store[i].config);
            if (store[i].label != kNone) verdict.witness_labels.push_back(store[i].label);
        }
        verdict.basis = snapshot();
        verdict.elements_generated = store.size();
        return verdict;
    };

    if (space.covered_by_initial(target)) return finish_positive(0);

    for (std::size_t iter = 1;; ++iter) {
        if (iter > limits.max_iterations) {
            verdict.outcome = Outcome::ResourceExhausted;
            verdict.basis = snapshot();
            verdict.elements_generated = store.size();
            return verdict;
        }
        verdict.iterations = iter;
        std::vector<Config> previous;
        if (limits.audit != nullptr) previous = snapshot();

        std::vector<std::size_t> fresh;
        for (std::size_t f : frontier) {
            for (std::size_t label = 0; label < space.label_count(); ++label) {
                // store may grow below; copy the source element first.
                const Config source = store[f].config;
                for (Config& c : space.pre_basis(label, source)) {
                    auto below = [&](std::size_t b) { return leq(store[b].config, c); };
                    if (std::any_of(basis.begin(), basis.end(), below) ||
                        std::any_of(fresh.begin(), fresh.end(), below)) {
                        continue;
                    }
                    auto above = [&](std::size_t b) { return leq(c, store[b].config); };
                    std::erase_if(basis, above);
                    std::erase_if(fresh, above);
                    store.push_back({std::move(c), label, f});
                    fresh.push_back(store.size() - 1);
                    if (basis.size() + fresh.size() > limits.max_basis) {
                        verdict.outcome = Outcome::ResourceExhausted;
                        basis.insert(basis.end(), fresh.begin(), fresh.end());
                        verdict.basis = snapshot();
                        verdict.elements_generated = store.size();
                        return verdict;
                    }
                }
            }
        }
        basis.insert(basis.end(), fresh.begin(), fresh.end());

        if (limits.audit != nullptr) {
            const std::vector<Config> next = snapshot();
            limits.audit->record(basis_subsumes(next, previous, leq),
                                 "saturation step lost part of the upward-closed set");
            limits.audit->record(is_antichain(std::span<const Config>(next), leq),
                                 "saturation basis is not an antichain");
        }

        if (fresh.empty()) {
            verdict.outcome = Outcome::NotCoverable;
            verdict.basis = snapshot();
            verdict.elements_generated = store.size();
            return verdict;
        }
        for (std::size_t f : fresh) {
            if (space.covered_by_initial(store[f].config)) return finish_positive(f);
        }
        frontier = std::move(fresh);
    }
}

} // namespace wsbn
