#pragma once

#include <cctype>
#include <cmath>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace varfrac {

// Minimal closed-form expression parser for config files. Whitelisted
// grammar: numbers, named variables, + - * / ^, unary minus, and the
// functions abs, sin, cos, exp, sqrt, min, max, pow. No state, no control
// flow; expressions stay reproducible across runs.
class Expr {
public:
    static Expr parse(const std::string& source, const std::vector<std::string>& variables) {
        Parser p{source, 0, variables};
        Expr e;
        e.nodes_.reserve(16);
        e.root_ = p.parse_expression(e.nodes_);
        p.skip_ws();
        if (p.pos != source.size())
            throw std::invalid_argument("expression: trailing input at position " +
                                        std::to_string(p.pos));
        return e;
    }

    double eval(std::span<const double> vars) const { return eval_node(root_, vars); }

private:
    enum class Op {
        Const, Var, Neg, Add, Sub, Mul, Div, Pow,
        Abs, Sin, Cos, Exp, Sqrt, Min, Max
    };

    struct Node {
        Op op;
        double value = 0.0;  // Const
        int var = -1;        // Var
        int lhs = -1;
        int rhs = -1;
    };

    double eval_node(int idx, std::span<const double> vars) const {
        const Node& n = nodes_[static_cast<std::size_t>(idx)];
        switch (n.op) {
            case Op::Const: return n.value;
            case Op::Var: return vars[static_cast<std::size_t>(n.var)];
            case Op::Neg: return -eval_node(n.lhs, vars);
            case Op::Add: return eval_node(n.lhs, vars) + eval_node(n.rhs, vars);
            case Op::Sub: return eval_node(n.lhs, vars) - eval_node(n.rhs, vars);
            case Op::Mul: return eval_node(n.lhs, vars) * eval_node(n.rhs, vars);
            case Op::Div: return eval_node(n.lhs, vars) / eval_node(n.rhs, vars);
            case Op::Pow: return std::pow(eval_node(n.lhs, vars), eval_node(n.rhs, vars));
            case Op::Abs: return std::abs(eval_node(n.lhs, vars));
            case Op::Sin: return std::sin(eval_node(n.lhs, vars));
            case Op::Cos: return std::cos(eval_node(n.lhs, vars));
            case Op::Exp: return std::exp(eval_node(n.lhs, vars));
            case Op::Sqrt: return std::sqrt(eval_node(n.lhs, vars));
            case Op::Min: return std::min(eval_node(n.lhs, vars), eval_node(n.rhs, vars));
            case Op::Max: return std::max(eval_node(n.lhs, vars), eval_node(n.rhs, vars));
        }
        return 0.0;
    }

    struct Parser {
        const std::string& src;
        std::size_t pos;
        const std::vector<std::string>& vars;

        void skip_ws() {
            while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos]))) ++pos;
        }

        bool eat(char c) {
            skip_ws();
            if (pos < src.size() && src[pos] == c) {
                ++pos;
                return true;
            }
            return false;
        }

        [[noreturn]] void fail(const std::string& what) const {
            throw std::invalid_argument("expression: " + what + " at position " +
                                        std::to_string(pos));
        }

        int parse_expression(std::vector<Node>& out) {
            int lhs = parse_term(out);
            for (;;) {
                if (eat('+')) lhs = binary(out, Op::Add, lhs, parse_term(out));
                else if (eat('-')) lhs = binary(out, Op::Sub, lhs, parse_term(out));
                else return lhs;
            }
        }

        int parse_term(std::vector<Node>& out) {
            int lhs = parse_unary(out);
            for (;;) {
                if (eat('*')) lhs = binary(out, Op::Mul, lhs, parse_unary(out));
                else if (eat('/')) lhs = binary(out, Op::Div, lhs, parse_unary(out));
                else return lhs;
            }
        }

        int parse_unary(std::vector<Node>& out) {
            if (eat('-')) {
                Node n{Op::Neg};
                n.lhs = parse_unary(out);
                out.push_back(n);
                return static_cast<int>(out.size()) - 1;
            }
            return parse_power(out);
        }

        int parse_power(std::vector<Node>& out) {
            const int base = parse_primary(out);
            if (eat('^')) return binary(out, Op::Pow, base, parse_unary(out));  // right assoc
            return base;
        }

        int parse_primary(std::vector<Node>& out) {
            skip_ws();
            if (pos >= src.size()) fail("unexpected end of input");
            const char c = src[pos];
            if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number(out);
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_ident(out);
            if (eat('(')) {
                const int e = parse_expression(out);
                if (!eat(')')) fail("expected ')'");
                return e;
            }
            fail(std::string("unexpected character '") + c + "'");
        }

        int parse_number(std::vector<Node>& out) {
            std::size_t end = pos;
            while (end < src.size() &&
                   (std::isdigit(static_cast<unsigned char>(src[end])) || src[end] == '.' ||
                    src[end] == 'e' || src[end] == 'E' ||
                    ((src[end] == '+' || src[end] == '-') && end > pos &&
                     (src[end - 1] == 'e' || src[end - 1] == 'E'))))
                ++end;
            Node n{Op::Const};
            try {
                n.value = std::stod(src.substr(pos, end - pos));
            } catch (const std::exception&) {
                fail("bad number literal");
            }
            pos = end;
            out.push_back(n);
            return static_cast<int>(out.size()) - 1;
        }

        int parse_ident(std::vector<Node>& out) {
            std::size_t end = pos;
            while (end < src.size() && (std::isalnum(static_cast<unsigned char>(src[end])) ||
                                        src[end] == '_'))
                ++end;
            const std::string name = src.substr(pos, end - pos);
            pos = end;
            skip_ws();

            static const std::map<std::string, std::pair<Op, int>> functions = {
                {"abs", {Op::Abs, 1}},  {"sin", {Op::Sin, 1}},  {"cos", {Op::Cos, 1}},
                {"exp", {Op::Exp, 1}},  {"sqrt", {Op::Sqrt, 1}}, {"min", {Op::Min, 2}},
                {"max", {Op::Max, 2}},  {"pow", {Op::Pow, 2}}};

            if (pos < src.size() && src[pos] == '(') {
                const auto it = functions.find(name);
                if (it == functions.end()) fail("unknown function '" + name + "'");
                ++pos;
                Node n{it->second.first};
                n.lhs = parse_expression(out);
                if (it->second.second == 2) {
                    if (!eat(',')) fail("expected ',' in call to " + name);
                    n.rhs = parse_expression(out);
                }
                if (!eat(')')) fail("expected ')'");
                out.push_back(n);
                return static_cast<int>(out.size()) - 1;
            }

            if (name == "pi") {
                Node n{Op::Const};
                n.value = 3.14159265358979323846;
                out.push_back(n);
                return static_cast<int>(out.size()) - 1;
            }
            for (std::size_t v = 0; v < vars.size(); ++v) {
                if (vars[v] == name) {
                    Node n{Op::Var};
                    n.var = static_cast<int>(v);
                    out.push_back(n);
                    return static_cast<int>(out.size()) - 1;
                }
            }
            fail("unknown identifier '" + name + "'");
        }

        int binary(std::vector<Node>& out, Op op, int lhs, int rhs) {
            Node n{op};
            n.lhs = lhs;
            n.rhs = rhs;
            out.push_back(n);
            return static_cast<int>(out.size()) - 1;
        }
    };

    std::vector<Node> nodes_;
    int root_ = -1;
};

}  // namespace varfrac
