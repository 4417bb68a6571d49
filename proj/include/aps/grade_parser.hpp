#pragma once

#include <cctype>
#include <memory>

#include "aps/grade.hpp"

namespace aps {

struct parse_error : std::runtime_error {
    int column;  // 1-based character column
    parse_error(const std::string& msg, int col)
        : std::runtime_error(msg + " at column " + std::to_string(col)), column(col) {}
};

// Expression tree for boundary-operator compositions:
//   atoms P[0,0,s] G[m,d,s] T[m,d,s] K[m,d,s] Q[m,d,s] (suffix ! marks a
//   strongly polyhomogeneous symbol) and g0; prefix modifiers xn^k dn^k
//   dlam^r; composition with the ring operator or '*'.
struct OpExpr {
    enum class Node { Atom, Compose, Xn, Dn, Dlam };
    Node node = Node::Atom;
    GradeClass atom;
    int arg = 0;  // modifier exponent
    std::shared_ptr<OpExpr> left, right;
};

namespace detail {

class Parser {
  public:
    explicit Parser(std::string text) : s_(std::move(text)) {}

    std::shared_ptr<OpExpr> parse() {
        auto e = expr();
        skip_ws();
        if (pos_ != s_.size()) fail("unexpected trailing input", pos_);
        return e;
    }

  private:
    std::string s_;
    size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& msg, size_t byte_pos) const {
        // report 1-based character columns (the input may contain the
        // multi-byte ring operator)
        int col = 1;
        for (size_t i = 0; i < byte_pos && i < s_.size(); ++i)
            if ((static_cast<unsigned char>(s_[i]) & 0xC0) != 0x80) ++col;
        if (byte_pos >= s_.size())
            col = 1 + [&] {
                int n = 0;
                for (char ch : s_)
                    if ((static_cast<unsigned char>(ch) & 0xC0) != 0x80) ++n;
                return n;
            }();
        throw parse_error(msg, col);
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool eat(const std::string& tok) {
        skip_ws();
        if (s_.compare(pos_, tok.size(), tok) == 0) {
            pos_ += tok.size();
            return true;
        }
        return false;
    }
    int integer() {
        skip_ws();
        size_t start = pos_;
        if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) ++pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (pos_ == start || (pos_ == start + 1 && !std::isdigit(static_cast<unsigned char>(s_[start]))))
            fail("expected integer", start);
        return std::stoi(s_.substr(start, pos_ - start));
    }

    std::shared_ptr<OpExpr> expr() {
        auto lhs = term();
        while (true) {
            skip_ws();
            if (eat("\xe2\x88\x98") || eat("*")) {
                auto rhs = term();
                auto node = std::make_shared<OpExpr>();
                node->node = OpExpr::Node::Compose;
                node->left = lhs;
                node->right = rhs;
                lhs = node;
            } else {
                return lhs;
            }
        }
    }

    std::shared_ptr<OpExpr> term() {
        skip_ws();
        if (pos_ >= s_.size()) fail("expected operator expression", pos_);
        for (auto [name, node] : {std::pair<const char*, OpExpr::Node>{"xn", OpExpr::Node::Xn},
                                  {"dn", OpExpr::Node::Dn},
                                  {"dlam", OpExpr::Node::Dlam}}) {
            size_t save = pos_;
            if (eat(name)) {
                if (eat("^")) {
                    int k = integer();
                    if (k < 0) fail("modifier exponent must be >= 0", pos_ - 1);
                    auto child = term();
                    auto out = std::make_shared<OpExpr>();
                    out->node = node;
                    out->arg = k;
                    out->left = child;
                    return out;
                }
                pos_ = save;
            }
        }
        if (eat("(")) {
            auto e = expr();
            if (!eat(")")) fail("expected ')'", pos_);
            return e;
        }
        return atom();
    }

    std::shared_ptr<OpExpr> atom() {
        skip_ws();
        size_t start = pos_;
        if (eat("g0")) {
            auto out = std::make_shared<OpExpr>();
            out->atom.kind = OpKind::Trace0;
            out->atom.m = out->atom.d = out->atom.s = 0;
            out->atom.strongly_polyhomogeneous = true;
            return out;
        }
        if (pos_ >= s_.size()) fail("expected operator atom", pos_);
        char c = s_[pos_];
        OpKind kind;
        switch (c) {
            case 'P': kind = OpKind::PsdoInterior; break;
            case 'G': kind = OpKind::Sgo0; break;
            case 'T': kind = OpKind::Trace0; break;
            case 'K': kind = OpKind::Poisson; break;
            case 'Q': kind = OpKind::PsdoBoundary; break;
            default: fail("expected one of P, G, T, K, Q, g0", pos_);
        }
        ++pos_;
        if (!eat("[")) fail("expected '[' after operator kind", pos_);
        int m = integer();
        if (!eat(",")) fail("expected ','", pos_);
        int d = integer();
        if (!eat(",")) fail("expected ','", pos_);
        int s = integer();
        if (!eat("]")) fail("expected ']'", pos_);
        auto out = std::make_shared<OpExpr>();
        out->atom.kind = kind;
        out->atom.m = m;
        out->atom.d = d;
        out->atom.s = s;
        out->atom.transmission = (kind == OpKind::PsdoInterior);
        out->atom.strongly_polyhomogeneous = eat("!");
        (void)start;
        return out;
    }
};

}  // namespace detail

inline std::shared_ptr<OpExpr> parse_expr(const std::string& text) {
    return detail::Parser(text).parse();
}

inline GradeResult grade(const OpExpr& e) {
    switch (e.node) {
        case OpExpr::Node::Atom: return {e.atom};
        case OpExpr::Node::Compose: {
            GradeResult l = grade(*e.left), r = grade(*e.right);
            return compose_grades(l.main, r.main);
        }
        case OpExpr::Node::Xn: return {shift_xn_dn(grade(*e.left).main, e.arg, 0)};
        case OpExpr::Node::Dn: return {shift_xn_dn(grade(*e.left).main, 0, e.arg)};
        case OpExpr::Node::Dlam: return {shift_dlam(grade(*e.left).main, e.arg)};
    }
    throw grade_error("corrupt expression tree");
}

}  // namespace aps
