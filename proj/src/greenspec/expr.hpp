#pragma once

#include <memory>
#include <string>
#include <string_view>

namespace greenspec {

/// Immutable expression tree over the variables s and t.
///
/// Grammar (whitespace-insensitive):
///   expr    := term (('+' | '-') term)*
///   term    := unary (('*' | '/') unary)*
///   unary   := ('-' | '+') unary | power
///   power   := primary ('^' unary)?          right-associative
///   primary := number | 's' | 't' | 'pi' | func '(' expr ')' | '(' expr ')'
///   func    := sin | cos | exp | log | sqrt | abs
class Expr {
public:
    struct Node;

    Expr() = default;

    /// Throws DomainError for log of a nonpositive value, sqrt of a negative
    /// value and division by zero.
    double operator()(double s, double t) const;

    /// Fully parenthesized text that parses back to an equivalent tree.
    std::string to_string() const;

    explicit operator bool() const noexcept { return static_cast<bool>(root_); }

private:
    friend class ExprParser;
    explicit Expr(std::shared_ptr<const Node> root) : root_(std::move(root)) {}

    std::shared_ptr<const Node> root_;
};

/// Throws ParseError (with byte offset) on malformed input and
/// UnknownIdentifier for names outside the grammar.
Expr parse_expr(std::string_view text);

inline double eval_expr(const Expr& e, double s, double t) { return e(s, t); }

}  // namespace greenspec
