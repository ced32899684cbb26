#pragma once

// Line-oriented model format:
//
//   version 1                                  (optional header)
//   process vass dim=D | process finite | process pushdown stack=A,B
//   states q0 q1 ...                           (optional declaration)
//   letters a b ...                            (optional declaration)
//   init <state> [vector=(n,...)]
//   trans <src> -> <dst> on !!a|??a [delta=(i,...)] [pre=<sym>|eps] [push=<w>|eps]
//   option complete-receives dead=<state>
//   query cover state=<s> [vector=(n,...)] [stack=<w>] semantics=<sem> [max-basis=N] [max-iters=N]
//
// where <sem> is rbn, path-bounded:K, clique or diam-deg:K,D,N and stack
// words are dot-separated, top first, with `bot` naming the bottom marker.
// Without `states`/`letters` lines, identifiers are declared by first use in
// init, trans and option lines.

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "wsbn/common.hpp"
#include "wsbn/graph.hpp"
#include "wsbn/pushdown.hpp"
#include "wsbn/vass.hpp"

namespace wsbn {

enum class ProcessKind { Finite, Vass, Pushdown };

std::string_view to_string(ProcessKind k);

/// Query semantics: a static topology class, or reconfiguration when the
/// class is unrestricted. `n_max` bounds graph size for diam-deg.
struct Semantics {
    TopologyClass cls = TopologyClass::unrestricted();
    std::size_t n_max = 0;

    friend bool operator==(const Semantics&, const Semantics&) = default;
};

std::string format_semantics(const Semantics& s);
std::optional<Semantics> parse_semantics(std::string_view text);

struct Query {
    std::size_t line = 0;
    StateId state = 0;
    Counters vector;
    std::vector<StackSymbol> stack;
    Semantics semantics;
    std::optional<std::size_t> max_basis;
    std::optional<std::size_t> max_iterations;
};

struct ModelFile {
    ProcessKind kind = ProcessKind::Finite;
    /// Finite-state processes are stored as dimension-zero VASS.
    std::variant<VassSpec, PushdownSpec> process;
    std::vector<Query> queries;

    const std::vector<std::string>& state_names() const;
    const std::vector<std::string>& letter_names() const;
    std::string format_target(const Query& q) const;
};

enum class ParseErrorKind { SyntaxError, UndeclaredIdentifier, DimensionMismatch };

std::string_view to_string(ParseErrorKind k);

class ParseError : public Error {
public:
    ParseError(ParseErrorKind kind, std::size_t line, std::size_t column, std::string message, std::string remedy);

    ParseErrorKind kind() const { return kind_; }
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }
    const std::string& message() const { return message_; }
    const std::string& remedy() const { return remedy_; }

private:
    ParseErrorKind kind_;
    std::size_t line_;
    std::size_t column_;
    std::string message_;
    std::string remedy_;
};

/// Throws ParseError; never anything else.
ModelFile parse_model(std::string_view text);

} // namespace wsbn
