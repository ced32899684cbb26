#include "wsbn/vass.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace wsbn {

bool vass_leq(const VassConfig& a, const VassConfig& b) {
    if (a.is_wildcard()) return true;
    if (b.is_wildcard() || a.state != b.state || a.counters.size() != b.counters.size()) return false;
    for (std::size_t i = 0; i < a.counters.size(); ++i) {
        if (a.counters[i] > b.counters[i]) return false;
    }
    return true;
}

std::vector<VassConfig> vass_successors(const VassSpec& spec, const VassConfig& c, TransitionLabel l) {
    std::vector<VassConfig> out;
    if (c.is_wildcard()) return out;
    for (const VassTransition& t : spec.transitions) {
        if (t.source != c.state || t.label != l) continue;
        VassConfig next{t.target, c.counters};
        bool ok = true;
        for (std::size_t i = 0; i < next.counters.size(); ++i) {
            next.counters[i] += t.delta[i];
            if (next.counters[i] < 0) {
                ok = false;
                break;
            }
        }
        if (ok) out.push_back(std::move(next));
    }
    return out;
}

std::vector<VassConfig> vass_min_enabling(const VassSpec& spec, TransitionLabel l) {
    std::vector<VassConfig> out;
    for (const VassTransition& t : spec.transitions) {
        if (t.label != l) continue;
        VassConfig c{t.source, Counters(spec.dimension, 0)};
        for (std::size_t i = 0; i < spec.dimension; ++i) c.counters[i] = std::max<std::int64_t>(0, -t.delta[i]);
        out.push_back(std::move(c));
    }
    return minimize(out, vass_leq);
}

std::vector<VassConfig> vass_pre_basis(const VassSpec& spec, TransitionLabel l,
                                       const std::vector<VassConfig>& b) {
    std::vector<VassConfig> out;
    for (const VassConfig& target : b) {
        if (target.is_wildcard()) {
            auto enabled = vass_min_enabling(spec, l);
            out.insert(out.end(), enabled.begin(), enabled.end());
            continue;
        }
        for (const VassTransition& t : spec.transitions) {
            if (t.label != l || t.target != target.state) continue;
            VassConfig c{t.source, Counters(spec.dimension, 0)};
            for (std::size_t i = 0; i < spec.dimension; ++i) {
                c.counters[i] = std::max({target.counters[i] - t.delta[i], -t.delta[i], std::int64_t{0}});
            }
            out.push_back(std::move(c));
        }
    }
    return minimize(out, vass_leq);
}

bool covered_by_initial(const VassSpec& spec, const VassConfig& c) {
    if (c.is_wildcard()) return !spec.initial.empty();
    return std::any_of(spec.initial.begin(), spec.initial.end(),
                       [&](const VassConfig& s0) { return vass_leq(c, s0); });
}

VassSpec strip_receives(const VassSpec& spec) {
    VassSpec out = spec;
    std::erase_if(out.transitions, [](const VassTransition& t) { return t.label.kind == Direction::Receive; });
    return out;
}

VassSpec add_receives(const VassSpec& current, const VassSpec& original, LetterId a) {
    VassSpec out = current;
    out.transitions.clear();
    for (const VassTransition& t : original.transitions) {
        const bool present = std::find(current.transitions.begin(), current.transitions.end(), t) !=
                             current.transitions.end();
        if (present || t.label == receive(a)) out.transitions.push_back(t);
    }
    return out;
}

VassSpec complete_receives(const VassSpec& spec, StateId dead) {
    VassSpec out = spec;
    out.dead_state = dead;
    const Counters zero(spec.dimension, 0);
    auto has_receive = [&](StateId q, LetterId a) {
        return std::any_of(out.transitions.begin(), out.transitions.end(), [&](const VassTransition& t) {
            return t.source == q && t.label == receive(a);
        });
    };
    for (StateId q = 0; q < spec.state_count(); ++q) {
        for (LetterId a = 0; a < spec.letter_count(); ++a) {
            if (!has_receive(q, a)) out.transitions.push_back({q, receive(a), zero, dead});
        }
    }
    return out;
}

bool VassSpec::leq(const VassConfig& a, const VassConfig& b) const { return vass_leq(a, b); }

std::vector<VassConfig> VassSpec::successors(const VassConfig& c, TransitionLabel l) const {
    return vass_successors(*this, c, l);
}

std::int64_t VassSpec::magnitude(const VassConfig& c) const {
    std::int64_t m = 0;
    for (std::int64_t v : c.counters) m = std::max(m, v);
    return m;
}

std::string VassSpec::format(const VassConfig& c) const {
    if (c.is_wildcard()) return "*";
    std::ostringstream os;
    os << '(' << (c.state < state_names.size() ? state_names[c.state] : std::to_string(c.state));
    if (dimension > 0) {
        os << ",(";
        for (std::size_t i = 0; i < c.counters.size(); ++i) os << (i ? "," : "") << c.counters[i];
        os << ')';
    }
    os << ')';
    return os.str();
}

void VassSpec::validate() const {
    if (initial.empty()) throw std::invalid_argument("process has no initial configuration");
    for (const VassConfig& c : initial) {
        if (c.state >= state_count()) throw std::invalid_argument("initial state out of range");
        if (c.counters.size() != dimension) throw std::invalid_argument("initial vector has wrong dimension");
        if (std::any_of(c.counters.begin(), c.counters.end(), [](std::int64_t v) { return v < 0; })) {
            throw std::invalid_argument("initial vector has a negative component");
        }
    }
    for (const VassTransition& t : transitions) {
        if (t.source >= state_count() || t.target >= state_count()) {
            throw std::invalid_argument("transition state out of range");
        }
        if (t.label.letter >= letter_count()) throw std::invalid_argument("transition letter out of range");
        if (t.delta.size() != dimension) throw std::invalid_argument("transition delta has wrong dimension");
    }
    if (dead_state) {
        for (StateId q = 0; q < state_count(); ++q) {
            for (LetterId a = 0; a < letter_count(); ++a) {
                const bool found = std::any_of(transitions.begin(), transitions.end(), [&](const VassTransition& t) {
                    return t.source == q && t.label == receive(a);
                });
                if (!found) throw std::invalid_argument("receive completion left a state without a receive");
            }
        }
    }
}

VassSpec to_vass(const FiniteSpec& spec) {
    VassSpec out;
    out.state_names = spec.state_names;
    out.letter_names = spec.letter_names;
    for (StateId q : spec.initial_states) out.initial.push_back({q, {}});
    for (const FiniteTransition& t : spec.transitions) out.transitions.push_back({t.source, t.label, {}, t.target});
    return out;
}

} // namespace wsbn
