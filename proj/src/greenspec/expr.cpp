#include "greenspec/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "greenspec/error.hpp"

namespace greenspec {

enum class Op { Number, VarS, VarT, Neg, Add, Sub, Mul, Div, Pow, Sin, Cos, Exp, Log, Sqrt, Abs };

struct Expr::Node {
    Op op = Op::Number;
    double value = 0.0;
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;
};

namespace {

using NodePtr = std::shared_ptr<const Expr::Node>;

NodePtr make_node(Op op, NodePtr lhs = nullptr, NodePtr rhs = nullptr, double value = 0.0) {
    auto node = std::make_shared<Expr::Node>();
    node->op = op;
    node->lhs = std::move(lhs);
    node->rhs = std::move(rhs);
    node->value = value;
    return node;
}

double eval_node(const Expr::Node& node, double s, double t) {
    switch (node.op) {
        case Op::Number: return node.value;
        case Op::VarS: return s;
        case Op::VarT: return t;
        case Op::Neg: return -eval_node(*node.lhs, s, t);
        case Op::Add: return eval_node(*node.lhs, s, t) + eval_node(*node.rhs, s, t);
        case Op::Sub: return eval_node(*node.lhs, s, t) - eval_node(*node.rhs, s, t);
        case Op::Mul: return eval_node(*node.lhs, s, t) * eval_node(*node.rhs, s, t);
        case Op::Div: {
            const double den = eval_node(*node.rhs, s, t);
            if (den == 0.0) throw Error(ErrorCode::Domain, "division by zero");
            return eval_node(*node.lhs, s, t) / den;
        }
        case Op::Pow: return std::pow(eval_node(*node.lhs, s, t), eval_node(*node.rhs, s, t));
        case Op::Sin: return std::sin(eval_node(*node.lhs, s, t));
        case Op::Cos: return std::cos(eval_node(*node.lhs, s, t));
        case Op::Exp: return std::exp(eval_node(*node.lhs, s, t));
        case Op::Log: {
            const double x = eval_node(*node.lhs, s, t);
            if (!(x > 0.0)) throw Error(ErrorCode::Domain, "log of nonpositive value");
            return std::log(x);
        }
        case Op::Sqrt: {
            const double x = eval_node(*node.lhs, s, t);
            if (x < 0.0) throw Error(ErrorCode::Domain, "sqrt of negative value");
            return std::sqrt(x);
        }
        case Op::Abs: return std::abs(eval_node(*node.lhs, s, t));
    }
    return 0.0;
}

const char* function_name(Op op) {
    switch (op) {
        case Op::Sin: return "sin";
        case Op::Cos: return "cos";
        case Op::Exp: return "exp";
        case Op::Log: return "log";
        case Op::Sqrt: return "sqrt";
        case Op::Abs: return "abs";
        default: return "";
    }
}

char binary_symbol(Op op) {
    switch (op) {
        case Op::Add: return '+';
        case Op::Sub: return '-';
        case Op::Mul: return '*';
        case Op::Div: return '/';
        case Op::Pow: return '^';
        default: return '?';
    }
}

void print_node(const Expr::Node& node, std::string& out) {
    switch (node.op) {
        case Op::Number: {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.17g", node.value);
            out += buf;
            return;
        }
        case Op::VarS: out += 's'; return;
        case Op::VarT: out += 't'; return;
        case Op::Neg:
            out += "(-";
            print_node(*node.lhs, out);
            out += ')';
            return;
        case Op::Add:
        case Op::Sub:
        case Op::Mul:
        case Op::Div:
        case Op::Pow:
            out += '(';
            print_node(*node.lhs, out);
            out += binary_symbol(node.op);
            print_node(*node.rhs, out);
            out += ')';
            return;
        default:
            out += function_name(node.op);
            out += '(';
            print_node(*node.lhs, out);
            out += ')';
            return;
    }
}

}  // namespace

class ExprParser {
public:
    explicit ExprParser(std::string_view text) : text_(text) {}

    Expr parse() {
        auto root = parse_sum();
        skip_space();
        if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        return Expr(std::move(root));
    }

private:
    [[noreturn]] void fail(const std::string& what) const { throw ParseError(pos_, what); }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    NodePtr parse_sum() {
        auto lhs = parse_product();
        for (;;) {
            if (accept('+'))
                lhs = make_node(Op::Add, lhs, parse_product());
            else if (accept('-'))
                lhs = make_node(Op::Sub, lhs, parse_product());
            else
                return lhs;
        }
    }

    NodePtr parse_product() {
        auto lhs = parse_unary();
        for (;;) {
            if (accept('*'))
                lhs = make_node(Op::Mul, lhs, parse_unary());
            else if (accept('/'))
                lhs = make_node(Op::Div, lhs, parse_unary());
            else
                return lhs;
        }
    }

    NodePtr parse_unary() {
        if (accept('-')) return make_node(Op::Neg, parse_unary());
        if (accept('+')) return parse_unary();
        return parse_power();
    }

    NodePtr parse_power() {
        auto base = parse_primary();
        if (accept('^')) return make_node(Op::Pow, base, parse_unary());
        return base;
    }

    NodePtr parse_primary() {
        skip_space();
        if (pos_ >= text_.size()) fail("expected number, variable, function or '('");
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            auto inner = parse_sum();
            if (!accept(')')) fail("expected ')'");
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_identifier();
        fail("expected number, variable, function or '(' but found '" + std::string(1, c) + "'");
    }

    NodePtr parse_number() {
        const char* begin = text_.data() + pos_;
        const char* end = text_.data() + text_.size();
        double value = 0.0;
        const auto [ptr, ec] = std::from_chars(begin, end, value);
        if (ec != std::errc() || ptr == begin) fail("malformed number");
        pos_ += static_cast<std::size_t>(ptr - begin);
        return make_node(Op::Number, nullptr, nullptr, value);
    }

    NodePtr parse_identifier() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        const std::string_view name = text_.substr(start, pos_ - start);
        if (name == "s") return make_node(Op::VarS);
        if (name == "t") return make_node(Op::VarT);
        if (name == "pi") return make_node(Op::Number, nullptr, nullptr, std::numbers::pi);

        Op op;
        if (name == "sin") op = Op::Sin;
        else if (name == "cos") op = Op::Cos;
        else if (name == "exp") op = Op::Exp;
        else if (name == "log") op = Op::Log;
        else if (name == "sqrt") op = Op::Sqrt;
        else if (name == "abs") op = Op::Abs;
        else
            throw Error(ErrorCode::UnknownIdentifier,
                        "unknown identifier '" + std::string(name) + "' at offset " +
                            std::to_string(start) +
                            " (valid: s, t, pi, sin, cos, exp, log, sqrt, abs)");

        if (!accept('(')) fail("expected '(' after function name");
        auto arg = parse_sum();
        if (!accept(')')) fail("expected ')'");
        return make_node(op, std::move(arg));
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

double Expr::operator()(double s, double t) const {
    if (!root_) throw Error(ErrorCode::InvalidArgument, "evaluating an empty expression");
    return eval_node(*root_, s, t);
}

std::string Expr::to_string() const {
    std::string out;
    if (root_) print_node(*root_, out);
    return out;
}

Expr parse_expr(std::string_view text) { return ExprParser(text).parse(); }

}  // namespace greenspec
