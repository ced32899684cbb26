#include "wsbn/model.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <sstream>

namespace wsbn {

std::string_view to_string(ProcessKind k) {
    switch (k) {
    case ProcessKind::Finite: return "finite";
    case ProcessKind::Vass: return "vass";
    case ProcessKind::Pushdown: return "pushdown";
    }
    return "?";
}

std::string_view to_string(ParseErrorKind k) {
    switch (k) {
    case ParseErrorKind::SyntaxError: return "SyntaxError";
    case ParseErrorKind::UndeclaredIdentifier: return "UndeclaredIdentifier";
    case ParseErrorKind::DimensionMismatch: return "DimensionMismatch";
    }
    return "?";
}

namespace {

std::string render(ParseErrorKind kind, std::size_t line, std::size_t column, const std::string& message,
                   const std::string& remedy) {
    std::ostringstream os;
    os << "line " << line << ", column " << column << ": " << to_string(kind) << ": " << message;
    if (!remedy.empty()) os << " (" << remedy << ")";
    return os.str();
}

} // namespace

ParseError::ParseError(ParseErrorKind kind, std::size_t line, std::size_t column, std::string message,
                       std::string remedy)
    : Error(render(kind, line, column, message, remedy)),
      kind_(kind),
      line_(line),
      column_(column),
      message_(std::move(message)),
      remedy_(std::move(remedy)) {}

std::string format_semantics(const Semantics& s) {
    switch (s.cls.kind) {
    case TopologyClass::Kind::Unrestricted: return "rbn";
    case TopologyClass::Kind::Clique: return "clique";
    case TopologyClass::Kind::PathBounded: return "path-bounded:" + std::to_string(s.cls.k);
    case TopologyClass::Kind::DiamDeg:
        return "diam-deg:" + std::to_string(s.cls.k) + "," + std::to_string(s.cls.d) + "," + std::to_string(s.n_max);
    }
    return "?";
}

namespace {

template <class T>
std::optional<T> parse_number(std::string_view text) {
    T value{};
    if (text.empty()) return std::nullopt;
    const char* begin = text.data();
    if (text.front() == '+') ++begin;
    const auto [ptr, ec] = std::from_chars(begin, text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) return std::nullopt;
    return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t at = text.find(sep, start);
        out.push_back(text.substr(start, at == std::string_view::npos ? std::string_view::npos : at - start));
        if (at == std::string_view::npos) return out;
        start = at + 1;
    }
}

bool is_identifier(std::string_view s) {
    if (s.empty()) return false;
    auto alpha = [](char c) { return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_'; };
    auto digit = [](char c) { return c >= '0' && c <= '9'; };
    if (!alpha(s.front())) return false;
    return std::all_of(s.begin() + 1, s.end(), [&](char c) { return alpha(c) || digit(c) || c == '\''; });
}

} // namespace

std::optional<Semantics> parse_semantics(std::string_view text) {
    if (text == "rbn") return Semantics{};
    if (text == "clique") return Semantics{TopologyClass::clique(), 0};
    constexpr std::string_view kPath = "path-bounded:";
    constexpr std::string_view kDiam = "diam-deg:";
    if (text.starts_with(kPath)) {
        auto k = parse_number<std::size_t>(text.substr(kPath.size()));
        if (!k || *k < 1 || *k > 64) return std::nullopt;
        return Semantics{TopologyClass::path_bounded(*k), 0};
    }
    if (text.starts_with(kDiam)) {
        const auto parts = split(text.substr(kDiam.size()), ',');
        if (parts.size() != 3) return std::nullopt;
        auto k = parse_number<std::size_t>(parts[0]);
        auto d = parse_number<std::size_t>(parts[1]);
        auto n = parse_number<std::size_t>(parts[2]);
        if (!k || !d || !n || *k < 1 || *d < 1 || *n < 1 || *n > 8 || *k > 64 || *d > 64) return std::nullopt;
        return Semantics{TopologyClass::diam_deg(*k, *d), *n};
    }
    return std::nullopt;
}

const std::vector<std::string>& ModelFile::state_names() const {
    return std::visit([](const auto& p) -> const std::vector<std::string>& { return p.state_names; }, process);
}

const std::vector<std::string>& ModelFile::letter_names() const {
    return std::visit([](const auto& p) -> const std::vector<std::string>& { return p.letter_names; }, process);
}

std::string ModelFile::format_target(const Query& q) const {
    if (const auto* p = std::get_if<PushdownSpec>(&process)) return p->format(PdsConfig{q.state, q.stack});
    return std::get<VassSpec>(process).format(VassConfig{q.state, q.vector});
}

namespace {

struct Token {
    std::string_view text;
    std::size_t column = 1;
};

// Whitespace-separated tokens; parenthesised groups never split.
std::vector<Token> tokenize(std::string_view line) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
        if (i >= line.size()) break;
        const std::size_t start = i;
        int depth = 0;
        while (i < line.size()) {
            const char c = line[i];
            if (c == '(') ++depth;
            if (c == ')' && depth > 0) --depth;
            if (depth == 0 && (c == ' ' || c == '\t' || c == '\r')) break;
            ++i;
        }
        out.push_back({line.substr(start, i - start), start + 1});
    }
    return out;
}

struct Line {
    std::size_t number = 0;
    std::vector<Token> tokens;
};

using KeyValues = std::map<std::string, Token, std::less<>>;

struct Names {
    std::vector<std::string> list;
    std::map<std::string, std::uint32_t, std::less<>> index;
    bool declared = false;

    std::optional<std::uint32_t> find(std::string_view s) const {
        auto it = index.find(s);
        if (it == index.end()) return std::nullopt;
        return it->second;
    }
    std::uint32_t add(std::string_view s) {
        const auto id = static_cast<std::uint32_t>(list.size());
        list.emplace_back(s);
        index.emplace(std::string(s), id);
        return id;
    }
};

class Parser {
public:
    explicit Parser(std::string_view text) {
        std::size_t number = 0;
        for (std::string_view raw : split(text, '\n')) {
            ++number;
            const std::size_t hash = raw.find('#');
            if (hash != std::string_view::npos) raw = raw.substr(0, hash);
            Line line{number, tokenize(raw)};
            if (!line.tokens.empty()) lines_.push_back(std::move(line));
        }
        total_lines_ = std::max<std::size_t>(number, 1);
    }

    ModelFile parse() {
        if (lines_.empty()) {
            fail(ParseErrorKind::SyntaxError, 1, 1, "empty model", "start the file with a `process` line");
        }
        // Declarations first, so later lines can refer to them in any order.
        for (const Line& line : lines_) {
            const std::string_view head = line.tokens.front().text;
            if (head == "version") parse_version(line);
            else if (head == "process") parse_process(line);
            else if (head == "states") parse_names(line, states_, "state");
            else if (head == "letters") parse_names(line, letters_, "letter");
        }
        if (!kind_) {
            fail(ParseErrorKind::SyntaxError, lines_.front().number, 1, "missing process declaration",
                 "add `process finite`, `process vass dim=D` or `process pushdown stack=...`");
        }
        std::vector<const Line*> queries;
        for (const Line& line : lines_) {
            const std::string_view head = line.tokens.front().text;
            if (head == "version" || head == "process" || head == "states" || head == "letters") continue;
            if (head == "init") parse_init(line);
            else if (head == "trans") parse_trans(line);
            else if (head == "option") parse_option(line);
            else if (head == "query") queries.push_back(&line);
            else {
                fail(ParseErrorKind::SyntaxError, line.number, line.tokens.front().column,
                     "unknown statement `" + std::string(head) + "`",
                     "use process, states, letters, init, trans, option or query");
            }
        }
        if (initial_count_ == 0) {
            fail(ParseErrorKind::SyntaxError, process_line_, 1, "process has no initial configuration",
                 "add an `init <state>` line");
        }
        ModelFile model;
        model.kind = *kind_;
        finish_process(model);
        for (const Line* line : queries) model.queries.push_back(parse_query(*line));
        if (model.queries.empty()) {
            fail(ParseErrorKind::SyntaxError, total_lines_, 1, "model declares no query",
                 "add a `query cover state=... semantics=...` line");
        }
        return model;
    }

private:
    [[noreturn]] void fail(ParseErrorKind kind, std::size_t line, std::size_t column, std::string message,
                           std::string remedy) const {
        throw ParseError(kind, line, column, std::move(message), std::move(remedy));
    }
    [[noreturn]] void fail_at(const Line& line, const Token& tok, std::string message, std::string remedy,
                              ParseErrorKind kind = ParseErrorKind::SyntaxError) const {
        fail(kind, line.number, tok.column, std::move(message), std::move(remedy));
    }

    void require_process(const Line& line) const {
        if (!kind_) {
            fail_at(line, line.tokens.front(), "statement before the process declaration",
                    "put the `process` line first");
        }
    }

    KeyValues key_values(const Line& line, std::size_t from, std::initializer_list<std::string_view> allowed) const {
        KeyValues out;
        for (std::size_t i = from; i < line.tokens.size(); ++i) {
            const Token& tok = line.tokens[i];
            const std::size_t eq = tok.text.find('=');
            if (eq == std::string_view::npos || eq == 0) {
                fail_at(line, tok, "expected key=value, found `" + std::string(tok.text) + "`",
                        "write options as key=value without spaces around '='");
            }
            const std::string_view key = tok.text.substr(0, eq);
            if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
                std::string keys;
                for (std::string_view k : allowed) keys += (keys.empty() ? "" : ", ") + std::string(k);
                fail_at(line, tok, "unknown key `" + std::string(key) + "`",
                        keys.empty() ? "this statement takes no options" : "allowed keys: " + keys);
            }
            Token value{tok.text.substr(eq + 1), tok.column + eq + 1};
            if (!out.emplace(std::string(key), value).second) {
                fail_at(line, tok, "duplicate key `" + std::string(key) + "`", "give each key once");
            }
        }
        return out;
    }

    Counters parse_vector(const Line& line, const Token& tok, bool non_negative) const {
        const std::string_view t = tok.text;
        if (t.size() < 2 || t.front() != '(' || t.back() != ')') {
            fail_at(line, tok, "malformed vector `" + std::string(t) + "`", "write vectors as (n1,n2,...)");
        }
        Counters out;
        const std::string_view inner = t.substr(1, t.size() - 2);
        if (inner.find_first_not_of(" \t") == std::string_view::npos) return out;
        for (std::string_view part : split(inner, ',')) {
            while (!part.empty() && (part.front() == ' ' || part.front() == '\t')) part.remove_prefix(1);
            while (!part.empty() && (part.back() == ' ' || part.back() == '\t')) part.remove_suffix(1);
            auto v = parse_number<std::int64_t>(part);
            if (!v || *v > kMaxMagnitude || *v < -kMaxMagnitude) {
                fail_at(line, tok, "bad vector entry `" + std::string(part) + "`",
                        "entries are integers of magnitude at most 10^12");
            }
            if (non_negative && *v < 0) {
                fail_at(line, tok, "negative counter value", "configuration counters must be non-negative");
            }
            out.push_back(*v);
        }
        return out;
    }

    void check_dimension(const Line& line, const Token& tok, std::size_t got, const std::string& what) const {
        if (got != dimension_) {
            fail_at(line, tok,
                    what + " has " + std::to_string(got) + " entries but the process dimension is " +
                        std::to_string(dimension_),
                    "give exactly " + std::to_string(dimension_) + " entries",
                    ParseErrorKind::DimensionMismatch);
        }
    }

    std::uint32_t resolve(Names& names, const Line& line, const Token& tok, const char* what, bool may_declare) {
        if (!is_identifier(tok.text)) {
            fail_at(line, tok, "invalid " + std::string(what) + " name `" + std::string(tok.text) + "`",
                    "identifiers match [A-Za-z_][A-Za-z0-9_']*");
        }
        if (auto id = names.find(tok.text)) return *id;
        if (names.declared || !may_declare) {
            fail_at(line, tok, "undeclared " + std::string(what) + " `" + std::string(tok.text) + "`",
                    names.declared ? "add it to the `" + std::string(what) + "s` line"
                                   : "use it in an init or trans line first",
                    ParseErrorKind::UndeclaredIdentifier);
        }
        return names.add(tok.text);
    }

    std::optional<StackSymbol> stack_symbol(std::string_view s) const {
        for (std::size_t i = 0; i < stack_names_.size(); ++i) {
            if (stack_names_[i] == s) return static_cast<StackSymbol>(i);
        }
        return std::nullopt;
    }

    // Dot-separated stack word; `eps` is the empty word.
    std::vector<StackSymbol> parse_word(const Line& line, const Token& tok, bool allow_bottom) const {
        std::vector<StackSymbol> out;
        if (tok.text == "eps") return out;
        std::size_t offset = 0;
        for (std::string_view part : split(tok.text, '.')) {
            const Token piece{part, tok.column + offset};
            offset += part.size() + 1;
            auto sym = stack_symbol(part);
            if (!sym) {
                fail_at(line, piece, "unknown stack symbol `" + std::string(part) + "`",
                        "declare it in `process pushdown stack=...`", ParseErrorKind::UndeclaredIdentifier);
            }
            if (*sym == kBottom) {
                if (!allow_bottom) {
                    fail_at(line, piece, "the bottom marker cannot be pushed or popped",
                            "remove `bot` from this word");
                }
                if (offset < tok.text.size() + 1) {
                    fail_at(line, piece, "symbols after the bottom marker", "`bot` can only end a stack word");
                }
            }
            out.push_back(*sym);
        }
        return out;
    }

    void parse_version(const Line& line) {
        if (line.tokens.size() != 2 || line.tokens[1].text != "1") {
            fail_at(line, line.tokens.size() > 1 ? line.tokens[1] : line.tokens[0], "unsupported format version",
                    "this tool reads `version 1`");
        }
    }

    void parse_process(const Line& line) {
        if (kind_) fail_at(line, line.tokens.front(), "second process declaration", "a model has exactly one process");
        if (line.tokens.size() < 2) {
            fail_at(line, line.tokens.front(), "missing process kind", "use finite, vass or pushdown");
        }
        process_line_ = line.number;
        const Token& kind = line.tokens[1];
        if (kind.text == "finite") {
            kind_ = ProcessKind::Finite;
            key_values(line, 2, {});
        } else if (kind.text == "vass") {
            kind_ = ProcessKind::Vass;
            const KeyValues kv = key_values(line, 2, {"dim"});
            auto it = kv.find("dim");
            if (it == kv.end()) fail_at(line, kind, "missing dim=D", "give the number of counters, e.g. dim=1");
            auto d = parse_number<std::size_t>(it->second.text);
            if (!d || *d > 16) fail_at(line, it->second, "bad dimension", "dim is an integer between 0 and 16");
            dimension_ = *d;
        } else if (kind.text == "pushdown") {
            kind_ = ProcessKind::Pushdown;
            const KeyValues kv = key_values(line, 2, {"stack"});
            if (auto it = kv.find("stack"); it != kv.end() && !it->second.text.empty()) {
                for (std::string_view s : split(it->second.text, ',')) {
                    if (!is_identifier(s) || s == "bot" || s == "eps") {
                        fail_at(line, it->second, "invalid stack symbol `" + std::string(s) + "`",
                                "symbols are identifiers other than bot and eps");
                    }
                    if (stack_symbol(s)) fail_at(line, it->second, "duplicate stack symbol", "list each symbol once");
                    stack_names_.emplace_back(s);
                }
            }
        } else {
            fail_at(line, kind, "unknown process kind `" + std::string(kind.text) + "`",
                    "use finite, vass or pushdown");
        }
    }

    void parse_names(const Line& line, Names& names, const char* what) {
        if (names.declared) {
            fail_at(line, line.tokens.front(), std::string("second ") + what + "s line", "declare them on one line");
        }
        for (std::size_t i = 1; i < line.tokens.size(); ++i) {
            const Token& tok = line.tokens[i];
            if (!is_identifier(tok.text)) {
                fail_at(line, tok, "invalid " + std::string(what) + " name `" + std::string(tok.text) + "`",
                        "identifiers match [A-Za-z_][A-Za-z0-9_']*");
            }
            if (names.find(tok.text)) fail_at(line, tok, "duplicate declaration", "list each name once");
            names.add(tok.text);
        }
        names.declared = true;
    }

    void parse_init(const Line& line) {
        require_process(line);
        if (line.tokens.size() < 2) fail_at(line, line.tokens.front(), "missing state", "write `init <state>`");
        const StateId q = resolve(states_, line, line.tokens[1], "state", true);
        const KeyValues kv = key_values(line, 2, {"vector"});
        Counters u(dimension_, 0);
        if (auto it = kv.find("vector"); it != kv.end()) {
            if (*kind_ == ProcessKind::Pushdown) {
                fail_at(line, it->second, "pushdown processes have no counters", "drop the vector");
            }
            u = parse_vector(line, it->second, true);
            check_dimension(line, it->second, u.size(), "initial vector");
        }
        ++initial_count_;
        if (*kind_ == ProcessKind::Pushdown) {
            if (std::find(pds_initial_.begin(), pds_initial_.end(), q) == pds_initial_.end()) pds_initial_.push_back(q);
        } else {
            VassConfig c{q, u};
            if (std::find(vass_initial_.begin(), vass_initial_.end(), c) == vass_initial_.end()) {
                vass_initial_.push_back(std::move(c));
            }
        }
    }

    void parse_trans(const Line& line) {
        require_process(line);
        const auto& t = line.tokens;
        if (t.size() < 6 || t[2].text != "->" || t[4].text != "on") {
            fail_at(line, t.front(), "malformed transition", "write `trans <src> -> <dst> on !!a` or `on ??a`");
        }
        const StateId src = resolve(states_, line, t[1], "state", true);
        const StateId dst = resolve(states_, line, t[3], "state", true);
        const std::string_view label = t[5].text;
        if (label.size() < 3 || (!label.starts_with("!!") && !label.starts_with("??"))) {
            fail_at(line, t[5], "malformed label `" + std::string(label) + "`", "labels are !!a or ?" "?a for a letter a");
        }
        const Direction dir = label.starts_with("!!") ? Direction::Broadcast : Direction::Receive;
        const LetterId a = resolve(letters_, line, Token{label.substr(2), t[5].column + 2}, "letter", true);
        const TransitionLabel l{dir, a};
        const std::string name = "transition " + std::string(t[1].text) + " -> " + std::string(t[3].text) + " on " +
                                 std::string(label);

        if (*kind_ == ProcessKind::Pushdown) {
            const KeyValues kv = key_values(line, 6, {"pre", "push"});
            PdsRule rule{src, l, std::nullopt, dst, {}};
            if (auto it = kv.find("pre"); it != kv.end()) {
                const auto word = parse_word(line, it->second, false);
                if (word.size() > 1) fail_at(line, it->second, "pre takes one symbol", "write pre=<symbol> or pre=eps");
                if (!word.empty()) rule.pop = word.front();
            }
            if (auto it = kv.find("push"); it != kv.end()) rule.push = parse_word(line, it->second, false);
            rules_.push_back(std::move(rule));
            return;
        }
        const KeyValues kv = key_values(line, 6, {"delta"});
        Counters delta(dimension_, 0);
        if (auto it = kv.find("delta"); it != kv.end()) {
            delta = parse_vector(line, it->second, false);
            check_dimension(line, it->second, delta.size(), name);
        }
        transitions_.push_back({src, l, std::move(delta), dst});
    }

    void parse_option(const Line& line) {
        require_process(line);
        if (line.tokens.size() < 2 || line.tokens[1].text != "complete-receives") {
            fail_at(line, line.tokens.size() > 1 ? line.tokens[1] : line.tokens[0], "unknown option",
                    "the only option is `complete-receives dead=<state>`");
        }
        const KeyValues kv = key_values(line, 2, {"dead"});
        auto it = kv.find("dead");
        if (it == kv.end()) fail_at(line, line.tokens[1], "missing dead=<state>", "name the dead state");
        if (dead_) fail_at(line, line.tokens[1], "receive completion given twice", "keep one option line");
        dead_ = resolve(states_, line, it->second, "state", true);
    }

    void finish_process(ModelFile& model) {
        if (*kind_ == ProcessKind::Pushdown) {
            PushdownSpec spec;
            spec.state_names = states_.list;
            spec.letter_names = letters_.list;
            spec.stack_names = stack_names_;
            spec.initial_states = pds_initial_;
            spec.rules = rules_;
            if (dead_) spec = complete_receives(spec, *dead_);
            model.process = std::move(spec);
            return;
        }
        VassSpec spec;
        spec.state_names = states_.list;
        spec.letter_names = letters_.list;
        spec.dimension = dimension_;
        spec.initial = vass_initial_;
        spec.transitions = transitions_;
        if (dead_) spec = complete_receives(spec, *dead_);
        model.process = std::move(spec);
    }

    Query parse_query(const Line& line) {
        if (line.tokens.size() < 2 || line.tokens[1].text != "cover") {
            fail_at(line, line.tokens.size() > 1 ? line.tokens[1] : line.tokens[0], "unknown query kind",
                    "only `query cover ...` is supported");
        }
        const KeyValues kv = key_values(line, 2, {"state", "vector", "stack", "semantics", "max-basis", "max-iters"});
        Query q;
        q.line = line.number;
        auto state = kv.find("state");
        if (state == kv.end()) fail_at(line, line.tokens[1], "missing state=<state>", "name the target state");
        q.state = resolve(states_, line, state->second, "state", false);

        q.vector.assign(*kind_ == ProcessKind::Pushdown ? 0 : dimension_, 0);
        if (auto it = kv.find("vector"); it != kv.end()) {
            if (*kind_ == ProcessKind::Pushdown) {
                fail_at(line, it->second, "pushdown targets have no vector", "use stack=<word> instead");
            }
            q.vector = parse_vector(line, it->second, true);
            check_dimension(line, it->second, q.vector.size(), "target vector");
        }
        if (auto it = kv.find("stack"); it != kv.end()) {
            if (*kind_ != ProcessKind::Pushdown) {
                fail_at(line, it->second, "only pushdown targets have a stack", "drop the stack key");
            }
            q.stack = parse_word(line, it->second, true);
        }
        auto sem = kv.find("semantics");
        if (sem == kv.end()) {
            fail_at(line, line.tokens[1], "missing semantics=...",
                    "use rbn, path-bounded:K, clique or diam-deg:K,D,N");
        }
        auto parsed = parse_semantics(sem->second.text);
        if (!parsed) {
            fail_at(line, sem->second, "unknown semantics `" + std::string(sem->second.text) + "`",
                    "use rbn, path-bounded:K (K>=1), clique or diam-deg:K,D,N (N<=8)");
        }
        if (*kind_ == ProcessKind::Pushdown && !parsed->cls.reconfigurable()) {
            fail_at(line, sem->second, "pushdown processes are only supported with reconfiguration",
                    "use semantics=rbn");
        }
        q.semantics = *parsed;
        auto positive = [&](const char* key) -> std::optional<std::size_t> {
            auto it = kv.find(key);
            if (it == kv.end()) return std::nullopt;
            auto v = parse_number<std::size_t>(it->second.text);
            if (!v || *v == 0) fail_at(line, it->second, std::string("bad ") + key, "give a positive integer");
            return v;
        };
        q.max_basis = positive("max-basis");
        q.max_iterations = positive("max-iters");
        return q;
    }

    static constexpr std::int64_t kMaxMagnitude = 1'000'000'000'000;

    std::vector<Line> lines_;
    std::size_t total_lines_ = 1;
    std::optional<ProcessKind> kind_;
    std::size_t process_line_ = 1;
    std::size_t dimension_ = 0;
    std::vector<std::string> stack_names_{"bot"};
    Names states_;
    Names letters_;
    std::size_t initial_count_ = 0;
    std::vector<VassConfig> vass_initial_;
    std::vector<StateId> pds_initial_;
    std::vector<VassTransition> transitions_;
    std::vector<PdsRule> rules_;
    std::optional<StateId> dead_;
};

} // namespace

ModelFile parse_model(std::string_view text) {
    try {
        return Parser(text).parse();
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception& e) {
        throw ParseError(ParseErrorKind::SyntaxError, 1, 1, e.what(), "check the model file");
    }
}

} // namespace wsbn
