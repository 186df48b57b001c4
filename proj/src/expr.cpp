#include "filtlab/expr.hpp"

#include <cctype>
#include <cmath>
#include <functional>
#include <vector>

namespace filtlab {

struct Expression::Node {
    enum class Kind { constant, variable, unary, binary } kind;
    double value = 0.0;
    char op = 0;  // for binary: + - * / ^
    std::function<double(double)> fn;
    std::shared_ptr<const Node> lhs, rhs;

    double eval(double x) const {
        switch (kind) {
            case Kind::constant: return value;
            case Kind::variable: return x;
            case Kind::unary: return fn(lhs->eval(x));
            case Kind::binary: {
                const double a = lhs->eval(x), b = rhs->eval(x);
                switch (op) {
                    case '+': return a + b;
                    case '-': return a - b;
                    case '*': return a * b;
                    case '/': return a / b;
                    case '^': return std::pow(a, b);
                }
                return 0.0;
            }
        }
        return 0.0;
    }
};

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;

struct Parser {
    const std::string& text;
    size_t pos = 0;

    [[noreturn]] void fail(const std::string& why) const {
        throw ConfigError("bad expression '" + text + "' at position " + std::to_string(pos) +
                          ": " + why);
    }
    void skip() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    bool eat(char c) {
        skip();
        if (pos < text.size() && text[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    char peek() {
        skip();
        return pos < text.size() ? text[pos] : '\0';
    }

    NodePtr make_const(double v) {
        auto node = std::make_shared<Expression::Node>();
        node->kind = Expression::Node::Kind::constant;
        node->value = v;
        return node;
    }
    NodePtr make_binary(char op, NodePtr a, NodePtr b) {
        auto node = std::make_shared<Expression::Node>();
        node->kind = Expression::Node::Kind::binary;
        node->op = op;
        node->lhs = std::move(a);
        node->rhs = std::move(b);
        return node;
    }
    NodePtr make_unary(std::function<double(double)> fn, NodePtr a) {
        auto node = std::make_shared<Expression::Node>();
        node->kind = Expression::Node::Kind::unary;
        node->fn = std::move(fn);
        node->lhs = std::move(a);
        return node;
    }

    NodePtr parse_expression() {
        NodePtr node = parse_term();
        while (true) {
            if (eat('+'))
                node = make_binary('+', node, parse_term());
            else if (eat('-'))
                node = make_binary('-', node, parse_term());
            else
                return node;
        }
    }
    NodePtr parse_term() {
        NodePtr node = parse_power();
        while (true) {
            if (eat('*'))
                node = make_binary('*', node, parse_power());
            else if (eat('/'))
                node = make_binary('/', node, parse_power());
            else
                return node;
        }
    }
    NodePtr parse_power() {
        NodePtr base = parse_unary();
        if (eat('^')) return make_binary('^', base, parse_power());  // right assoc
        return base;
    }
    NodePtr parse_unary() {
        if (eat('-')) return make_binary('-', make_const(0.0), parse_unary());
        return parse_primary();
    }
    NodePtr parse_primary() {
        skip();
        if (pos >= text.size()) fail("unexpected end");
        const char c = text[pos];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            size_t used = 0;
            double v;
            try {
                v = std::stod(text.substr(pos), &used);
            } catch (const std::exception&) {
                fail("bad number");
            }
            pos += used;
            return make_const(v);
        }
        if (c == '(') {
            ++pos;
            NodePtr inner = parse_expression();
            if (!eat(')')) fail("missing ')'");
            return inner;
        }
        if (std::isalpha(static_cast<unsigned char>(c))) {
            size_t end = pos;
            while (end < text.size() && std::isalpha(static_cast<unsigned char>(text[end]))) ++end;
            const std::string name = text.substr(pos, end - pos);
            pos = end;
            if (name == "x") {
                auto node = std::make_shared<Expression::Node>();
                node->kind = Expression::Node::Kind::variable;
                return node;
            }
            static const std::pair<const char*, double (*)(double)> functions[] = {
                {"exp", std::exp}, {"log", std::log},   {"sqrt", std::sqrt},
                {"abs", std::fabs}, {"sin", std::sin},  {"cos", std::cos},
                {"tanh", std::tanh}};
            for (const auto& [fname, fn] : functions) {
                if (name == fname) {
                    if (!eat('(')) fail("expected '(' after function name");
                    NodePtr arg = parse_expression();
                    if (!eat(')')) fail("missing ')'");
                    return make_unary(fn, arg);
                }
            }
            fail("unknown identifier '" + name + "'");
        }
        fail("unexpected character");
    }
};

}  // namespace

Expression Expression::parse(const std::string& text) {
    Parser parser{text};
    Expression out;
    out.root_ = parser.parse_expression();
    parser.skip();
    if (parser.pos != text.size()) parser.fail("trailing input");
    return out;
}

double Expression::operator()(double x) const {
    FILTLAB_REQUIRE(root_ != nullptr, ConfigError, "empty expression");
    return root_->eval(x);
}

}  // namespace filtlab
