#include "psifrac/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <numbers>

#include "psifrac/error.hpp"

namespace psifrac {

struct Expression::Node {
    enum Kind { Num, Var, Neg, Add, Sub, Mul, Div, Pow, Call1, Call2 } kind;
    double num = 0.0;
    int var = -1;
    double (*f1)(double) = nullptr;
    double (*f2)(double, double) = nullptr;
    std::shared_ptr<const Node> a, b;

    double eval(const double* v) const {
        switch (kind) {
            case Num: return num;
            case Var: return v[var];
            case Neg: return -a->eval(v);
            case Add: return a->eval(v) + b->eval(v);
            case Sub: return a->eval(v) - b->eval(v);
            case Mul: return a->eval(v) * b->eval(v);
            case Div: return a->eval(v) / b->eval(v);
            case Pow: return std::pow(a->eval(v), b->eval(v));
            case Call1: return f1(a->eval(v));
            case Call2: return f2(a->eval(v), b->eval(v));
        }
        return 0.0;
    }
};

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;
using Node = Expression::Node;

NodePtr make(Node::Kind k, NodePtr a = nullptr, NodePtr b = nullptr) {
    auto n = std::make_shared<Node>();
    n->kind = k;
    n->a = std::move(a);
    n->b = std::move(b);
    return n;
}

class Parser {
public:
    Parser(const std::string& s, const std::vector<std::string>& vars) : s_(s), vars_(vars) {}

    NodePtr parse() {
        NodePtr n = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return n;
    }

private:
    [[noreturn]] void fail(const std::string& why) const {
        throw ParseError("expression '" + s_ + "': " + why + " at offset " + std::to_string(pos_));
    }
    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool eat(char c) {
        skip();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    NodePtr expr() {
        NodePtr n = term();
        for (;;) {
            if (eat('+')) n = make(Node::Add, n, term());
            else if (eat('-')) n = make(Node::Sub, n, term());
            else return n;
        }
    }
    NodePtr term() {
        NodePtr n = unary();
        for (;;) {
            if (eat('*')) n = make(Node::Mul, n, unary());
            else if (eat('/')) n = make(Node::Div, n, unary());
            else return n;
        }
    }
    NodePtr unary() {
        if (eat('-')) return make(Node::Neg, unary());
        if (eat('+')) return unary();
        return power();
    }
    NodePtr power() {
        NodePtr base = primary();
        if (eat('^')) return make(Node::Pow, base, unary());
        return base;
    }
    NodePtr primary() {
        skip();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        const char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            NodePtr n = expr();
            if (!eat(')')) fail("missing ')'");
            return n;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            const char* begin = s_.c_str() + pos_;
            char* end = nullptr;
            const double v = std::strtod(begin, &end);
            if (end == begin) fail("bad number");
            pos_ += static_cast<std::size_t>(end - begin);
            auto n = std::make_shared<Node>();
            n->kind = Node::Num;
            n->num = v;
            return n;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
            const std::string id = s_.substr(start, pos_ - start);
            skip();
            if (pos_ < s_.size() && s_[pos_] == '(') return call(id);
            for (std::size_t i = 0; i < vars_.size(); ++i)
                if (vars_[i] == id) {
                    auto n = std::make_shared<Node>();
                    n->kind = Node::Var;
                    n->var = static_cast<int>(i);
                    return n;
                }
            if (id == "pi") {
                auto n = std::make_shared<Node>();
                n->kind = Node::Num;
                n->num = std::numbers::pi;
                return n;
            }
            fail("unknown identifier '" + id + "'");
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }
    NodePtr call(const std::string& id) {
        eat('(');
        static double (*const fmin2)(double, double) = [](double a, double b) { return std::fmin(a, b); };
        static double (*const fmax2)(double, double) = [](double a, double b) { return std::fmax(a, b); };
        double (*f1)(double) = nullptr;
        double (*f2)(double, double) = nullptr;
        if (id == "sin") f1 = [](double v) { return std::sin(v); };
        else if (id == "cos") f1 = [](double v) { return std::cos(v); };
        else if (id == "exp") f1 = [](double v) { return std::exp(v); };
        else if (id == "log") f1 = [](double v) { return std::log(v); };
        else if (id == "abs") f1 = [](double v) { return std::abs(v); };
        else if (id == "sqrt") f1 = [](double v) { return std::sqrt(v); };
        else if (id == "min") f2 = fmin2;
        else if (id == "max") f2 = fmax2;
        else fail("unknown function '" + id + "'");
        NodePtr a = expr();
        auto n = std::make_shared<Node>();
        n->a = a;
        if (f2) {
            if (!eat(',')) fail("function '" + id + "' takes two arguments");
            n->b = expr();
            n->kind = Node::Call2;
            n->f2 = f2;
        } else {
            n->kind = Node::Call1;
            n->f1 = f1;
        }
        if (!eat(')')) fail("missing ')' after arguments of '" + id + "'");
        return n;
    }

    const std::string& s_;
    const std::vector<std::string>& vars_;
    std::size_t pos_ = 0;
};

}  // namespace

Expression::Expression(const std::string& text, std::vector<std::string> variables)
    : text_(text), vars_(std::move(variables)) {
    root_ = Parser(text_, vars_).parse();
}

Expression::~Expression() = default;
Expression::Expression(const Expression&) = default;
Expression& Expression::operator=(const Expression&) = default;
Expression::Expression(Expression&&) noexcept = default;
Expression& Expression::operator=(Expression&&) noexcept = default;

double Expression::eval(const double* values) const { return root_->eval(values); }

}  // namespace psifrac
