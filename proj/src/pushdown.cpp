#include "wsbn/pushdown.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace wsbn {

bool pds_leq(const PdsConfig& a, const PdsConfig& b) {
    return a.state == b.state && a.stack.size() <= b.stack.size() &&
           std::equal(a.stack.begin(), a.stack.end(), b.stack.begin());
}

std::vector<PdsConfig> pds_successors(const PushdownSpec& spec, const PdsConfig& c, TransitionLabel l) {
    std::vector<PdsConfig> out;
    for (const PdsRule& r : spec.rules) {
        if (r.source != c.state || r.label != l) continue;
        std::size_t popped = 0;
        if (r.pop) {
            if (c.stack.empty() || c.stack.front() != *r.pop) continue;
            popped = 1;
        }
        PdsConfig next{r.target, r.push};
        next.stack.insert(next.stack.end(), c.stack.begin() + static_cast<std::ptrdiff_t>(popped), c.stack.end());
        out.push_back(std::move(next));
    }
    return out;
}

std::vector<PdsConfig> PushdownSpec::successors(const PdsConfig& c, TransitionLabel l) const {
    return pds_successors(*this, c, l);
}

std::vector<PdsConfig> PushdownSpec::initial_configs() const {
    std::vector<PdsConfig> out;
    for (StateId q : initial_states) out.push_back({q, {kBottom}});
    return out;
}

bool PushdownSpec::leq(const PdsConfig& a, const PdsConfig& b) const { return pds_leq(a, b); }

std::string PushdownSpec::format(const PdsConfig& c) const {
    std::ostringstream os;
    os << '(' << (c.state < state_names.size() ? state_names[c.state] : std::to_string(c.state)) << ',';
    if (c.stack.empty()) os << "eps";
    for (std::size_t i = 0; i < c.stack.size(); ++i) {
        os << (i ? "." : "") << (c.stack[i] < stack_names.size() ? stack_names[c.stack[i]] : "?");
    }
    os << ')';
    return os.str();
}

void PushdownSpec::validate() const {
    if (initial_states.empty()) throw std::invalid_argument("process has no initial state");
    for (StateId q : initial_states) {
        if (q >= state_count()) throw std::invalid_argument("initial state out of range");
    }
    for (const PdsRule& r : rules) {
        if (r.source >= state_count() || r.target >= state_count()) {
            throw std::invalid_argument("rule state out of range");
        }
        if (r.label.letter >= letter_count()) throw std::invalid_argument("rule letter out of range");
        if (r.pop && (*r.pop == kBottom || *r.pop >= stack_alphabet_size())) {
            throw std::invalid_argument("rule pops the bottom marker or an unknown symbol");
        }
        for (StackSymbol s : r.push) {
            if (s == kBottom || s >= stack_alphabet_size()) {
                throw std::invalid_argument("rule pushes the bottom marker or an unknown symbol");
            }
        }
    }
}

std::vector<PdsConfig> pds_Ca(const PushdownSpec& spec, LetterId a) {
    std::vector<PdsConfig> out;
    for (const PdsRule& r : spec.rules) {
        if (r.label != broadcast(a)) continue;
        PdsConfig c{r.source, {}};
        if (r.pop) c.stack.push_back(*r.pop);
        out.push_back(std::move(c));
    }
    return out;
}

PushdownSpec strip_receives(const PushdownSpec& spec) {
    PushdownSpec out = spec;
    std::erase_if(out.rules, [](const PdsRule& r) { return r.label.kind == Direction::Receive; });
    return out;
}

PushdownSpec add_receives(const PushdownSpec& current, const PushdownSpec& original, LetterId a) {
    PushdownSpec out = current;
    out.rules.clear();
    for (const PdsRule& r : original.rules) {
        const bool present = std::find(current.rules.begin(), current.rules.end(), r) != current.rules.end();
        if (present || r.label == receive(a)) out.rules.push_back(r);
    }
    return out;
}

PushdownSpec complete_receives(const PushdownSpec& spec, StateId dead) {
    PushdownSpec out = spec;
    out.dead_state = dead;
    for (StateId q = 0; q < spec.state_count(); ++q) {
        for (LetterId a = 0; a < spec.letter_count(); ++a) {
            const bool found = std::any_of(out.rules.begin(), out.rules.end(), [&](const PdsRule& r) {
                return r.source == q && r.label == receive(a);
            });
            if (!found) out.rules.push_back({q, receive(a), std::nullopt, dead, {}});
        }
    }
    return out;
}

namespace {

// Post* saturation over a P-automaton (Schwoon's construction). Rules are
// first normalised to pop exactly one symbol and push at most two.
class PostStar {
public:
    static constexpr std::size_t kEps = static_cast<std::size_t>(-1);

    explicit PostStar(const PushdownSpec& spec) : spec_(spec), gamma_(spec.stack_alphabet_size()) {
        controls_ = spec.state_count();
        normalise();
    }

    std::size_t run() {
        final_ = controls_ + mid_.size();
        out_.assign(final_ + 1, {});
        eps_into_.assign(final_ + 1, {});
        for (StateId q0 : spec_.initial_states) work_.push_back({q0, kBottom, final_});
        while (!work_.empty()) {
            const Trans t = work_.front();
            work_.pop_front();
            if (!rel_.insert(t).second) continue;
            const auto [p, g, q] = t;
            if (g == kEps) {
                eps_into_[q].push_back(p);
                for (const auto& [g2, q2] : out_[q]) work_.push_back({p, g2, q2});
                continue;
            }
            out_[p].push_back({g, q});
            auto it = by_lhs_.find({p, g});
            if (it == by_lhs_.end()) continue;
            for (const Rule& r : it->second) {
                if (r.push.empty()) {
                    work_.push_back({r.target, kEps, q});
                } else if (r.push.size() == 1) {
                    work_.push_back({r.target, r.push[0], q});
                } else {
                    const std::size_t m = mid_.at({r.target, r.push[0]});
                    work_.push_back({r.target, r.push[0], m});
                    const Trans inner{m, r.push[1], q};
                    if (rel_.insert(inner).second) {
                        out_[m].push_back({r.push[1], q});
                        for (std::size_t p2 : eps_into_[m]) work_.push_back({p2, r.push[1], q});
                    }
                }
            }
        }
        return rel_.size();
    }

    bool accepts_prefix(StateId state, const std::vector<StackSymbol>& prefix) const {
        std::set<std::size_t> current{state};
        for (const auto& [g, q] : out_eps(state)) {
            (void)g;
            current.insert(q);
        }
        for (StackSymbol s : prefix) {
            std::set<std::size_t> next;
            for (std::size_t from : current) {
                for (const auto& [g, q] : out_[from]) {
                    if (g == s) next.insert(q);
                }
            }
            current = std::move(next);
            if (current.empty()) return false;
        }
        // Any continuation reaching the final state will do.
        std::vector<std::size_t> stack(current.begin(), current.end());
        std::vector<bool> seen(final_ + 1, false);
        for (std::size_t s : stack) seen[s] = true;
        while (!stack.empty()) {
            const std::size_t s = stack.back();
            stack.pop_back();
            if (s == final_) return true;
            for (const auto& [g, q] : out_[s]) {
                (void)g;
                if (!seen[q]) {
                    seen[q] = true;
                    stack.push_back(q);
                }
            }
        }
        return false;
    }

private:
    using Trans = std::tuple<std::size_t, std::size_t, std::size_t>;
    struct Rule {
        std::size_t target;
        std::vector<StackSymbol> push;
    };

    std::vector<std::pair<std::size_t, std::size_t>> out_eps(std::size_t state) const {
        std::vector<std::pair<std::size_t, std::size_t>> eps;
        for (const auto& [p, g, q] : rel_) {
            if (p == state && g == kEps) eps.push_back({g, q});
        }
        return eps;
    }

    void add_rule(std::size_t source, StackSymbol pop, std::size_t target, std::vector<StackSymbol> push) {
        if (push.size() > 2) {
            // (p, g) -> (t, h1 ... hn) becomes (p, g) -> (m1, h_{n-1} h_n),
            // (m1, h_{n-1}) -> (m2, h_{n-2} h_{n-1}), ..., (m_{n-2}, h2) -> (t, h1 h2).
            const std::size_t n = push.size();
            std::size_t from = source;
            StackSymbol top = pop;
            for (std::size_t i = n - 1; i >= 2; --i) {
                const std::size_t fresh = controls_++;
                add_rule(from, top, fresh, {push[i - 1], push[i]});
                from = fresh;
                top = push[i - 1];
            }
            add_rule(from, top, target, {push[0], push[1]});
            return;
        }
        by_lhs_[{source, pop}].push_back({target, push});
        if (push.size() == 2) mid_.try_emplace({target, push[0]}, 0);
    }

    void normalise() {
        for (const PdsRule& r : spec_.rules) {
            if (r.pop) {
                add_rule(r.source, *r.pop, r.target, r.push);
                continue;
            }
            for (StackSymbol g = 0; g < gamma_; ++g) {
                std::vector<StackSymbol> push = r.push;
                push.push_back(g);
                add_rule(r.source, g, r.target, std::move(push));
            }
        }
        std::size_t next = controls_;
        for (auto& [key, index] : mid_) index = next++;
    }

    const PushdownSpec& spec_;
    std::size_t gamma_;
    std::size_t controls_ = 0;
    std::size_t final_ = 0;
    std::map<std::pair<std::size_t, std::size_t>, std::vector<Rule>> by_lhs_;
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> mid_;
    std::deque<Trans> work_;
    std::set<Trans> rel_;
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> out_;
    std::vector<std::vector<std::size_t>> eps_into_;
};

} // namespace

PdsVerdict pds_coverable(const PushdownSpec& spec, const PdsConfig& target) {
    PostStar post(spec);
    PdsVerdict verdict;
    verdict.automaton_transitions = post.run();
    verdict.outcome = post.accepts_prefix(target.state, target.stack) ? Outcome::Coverable : Outcome::NotCoverable;
    return verdict;
}

} // namespace wsbn
