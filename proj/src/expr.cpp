#include "cliffsym/expr.hpp"

#include "cliffsym/core.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>

namespace cliffsym {

bool operator==(const Expr& a, const Expr& b) {
    if (a.kind != b.kind || a.number != b.number || a.text != b.text || a.exponent != b.exponent ||
        a.args.size() != b.args.size())
        return false;
    for (std::size_t i = 0; i < a.args.size(); ++i)
        if (!(*a.args[i] == *b.args[i])) return false;
    return true;
}

namespace {

ExprPtr make(Expr::Kind k, std::vector<ExprPtr> args = {}) {
    auto e = std::make_shared<Expr>();
    e->kind = k;
    e->args = std::move(args);
    return e;
}

class Parser {
public:
    Parser(const std::string& s, int max_index) : s_(s), max_(max_index) {}

    ExprPtr run() {
        ExprPtr e = expr();
        skip();
        if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& why) const {
        throw Error(ErrorKind::SyntaxError, why + " at position " + std::to_string(pos_));
    }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    char peek() {
        skip();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }
    bool starts_atom() {
        char c = peek();
        return std::isdigit(static_cast<unsigned char>(c)) || c == '.' || c == '(' ||
               std::isalpha(static_cast<unsigned char>(c)) || c == '_';
    }

    ExprPtr expr() {
        ExprPtr lhs = term();
        while (true) {
            char c = peek();
            if (c != '+' && c != '-') break;
            ++pos_;
            lhs = make(c == '+' ? Expr::Kind::Add : Expr::Kind::Sub, {lhs, term()});
        }
        return lhs;
    }

    ExprPtr term() {
        bool neg = false;
        if (peek() == '-') {
            ++pos_;
            neg = true;
        }
        ExprPtr lhs = factor();
        while (starts_atom()) lhs = make(Expr::Kind::Mul, {lhs, factor()});
        return neg ? make(Expr::Kind::Neg, {lhs}) : lhs;
    }

    ExprPtr factor() {
        ExprPtr a = atom();
        if (peek() != '^') return a;
        ++pos_;
        skip();
        if (pos_ < s_.size() && s_[pos_] == '-') {
            ++pos_;
            if (pos_ < s_.size() && s_[pos_] == '1' &&
                (pos_ + 1 == s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_ + 1])))) {
                ++pos_;
                return make(Expr::Kind::Inv, {a});
            }
            fail("only -1 is allowed as a negative exponent");
        }
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (start == pos_) fail("expected exponent");
        if (pos_ - start > 4) fail("exponent too large");
        ExprPtr p = make(Expr::Kind::Pow, {a});
        std::const_pointer_cast<Expr>(p)->exponent = std::stoi(s_.substr(start, pos_ - start));
        return p;
    }

    ExprPtr atom() {
        char c = peek();
        if (c == '(') {
            ++pos_;
            ExprPtr e = expr();
            if (peek() != ')') fail("expected ')'");
            ++pos_;
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
            std::string word = s_.substr(start, pos_ - start);
            if (word == "sym" && peek() == '(') {
                std::size_t at = start;
                ++pos_;
                return sym_block(at);
            }
            if (word.size() >= 2 && word[0] == 'e' &&
                word.find_first_not_of("0123456789", 1) == std::string::npos) {
                for (std::size_t i = 1; i < word.size(); ++i) {
                    int d = word[i] - '0';
                    if (max_ >= 0 && d > max_)
                        throw Error(ErrorKind::IndexOutOfRange, "e" + std::string(1, word[i]) + " at position " +
                                                                    std::to_string(start) + " exceeds dimension " +
                                                                    std::to_string(max_));
                }
                auto e = std::make_shared<Expr>();
                e->kind = Expr::Kind::Basis;
                e->text = word.substr(1);
                return e;
            }
            auto e = std::make_shared<Expr>();
            e->kind = Expr::Kind::Name;
            e->text = word;
            return e;
        }
        if (c == '\0') fail("unexpected end of input");
        fail("unexpected '" + std::string(1, c) + "'");
    }

    ExprPtr number() {
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (pos_ < s_.size() && s_[pos_] == '.') {
            ++pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        }
        // An exponent needs an explicit sign so that "2e1" stays 2 * e1.
        if (pos_ + 2 < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E') && (s_[pos_ + 1] == '+' || s_[pos_ + 1] == '-') &&
            std::isdigit(static_cast<unsigned char>(s_[pos_ + 2]))) {
            pos_ += 2;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        }
        std::string lit = s_.substr(start, pos_ - start);
        if (lit == ".") fail("bad number");
        auto e = std::make_shared<Expr>();
        e->kind = Expr::Kind::Number;
        e->number = std::strtod(lit.c_str(), nullptr);
        return e;
    }

    ExprPtr sym_block(std::size_t at) {
        if (in_sym_) {
            pos_ = at;
            throw Error(ErrorKind::NestedSym, "sym blocks may not nest (position " + std::to_string(at) + ")");
        }
        in_sym_ = true;
        std::vector<ExprPtr> items;
        while (true) {
            char c = peek();
            if (c == ')') break;
            if (c == ',') {
                if (items.empty()) fail("empty sym entry");
                ++pos_;
                if (peek() == ')') fail("empty sym entry");
                continue;
            }
            items.push_back(sym_item());
        }
        ++pos_;
        in_sym_ = false;
        if (items.empty()) fail("empty sym block");
        return make(Expr::Kind::Sym, std::move(items));
    }

    // factor (('+'|'-') factor)*, with an optional leading sign.
    ExprPtr sym_item() {
        bool neg = false;
        if (peek() == '-') {
            ++pos_;
            neg = true;
        }
        ExprPtr lhs = factor();
        if (neg) lhs = make(Expr::Kind::Neg, {lhs});
        while (true) {
            char c = peek();
            if (c != '+' && c != '-') break;
            ++pos_;
            lhs = make(c == '+' ? Expr::Kind::Add : Expr::Kind::Sub, {lhs, factor()});
        }
        return lhs;
    }

    const std::string& s_;
    int max_;
    std::size_t pos_ = 0;
    bool in_sym_ = false;
};

// Shortest %g form that reads back to the same double.
std::string fmt_number(double x) {
    char buf[40];
    for (int prec = 1; prec <= 17; ++prec) {
        std::snprintf(buf, sizeof buf, "%.*g", prec, x);
        if (std::strtod(buf, nullptr) == x) break;
    }
    return buf;
}

int precedence(const Expr& e) {
    switch (e.kind) {
        case Expr::Kind::Add:
        case Expr::Kind::Sub: return 1;
        case Expr::Kind::Neg: return 2;
        case Expr::Kind::Mul: return 3;
        case Expr::Kind::Pow:
        case Expr::Kind::Inv: return 4;
        default: return 5;
    }
}

std::string print_normal(const Expr& e);

std::string wrap(const Expr& e, int min_prec) {
    std::string s = print_normal(e);
    return precedence(e) < min_prec ? "(" + s + ")" : s;
}

// Inside sym(...): entry := '-'? factor (('+'|'-') factor)*.
std::string print_entry(const Expr& e) {
    switch (e.kind) {
        case Expr::Kind::Neg: return "-" + wrap(*e.args[0], 4);
        case Expr::Kind::Add:
        case Expr::Kind::Sub:
            return print_entry(*e.args[0]) + (e.kind == Expr::Kind::Add ? " + " : " - ") + wrap(*e.args[1], 4);
        default: return wrap(e, 4);
    }
}

std::string print_normal(const Expr& e) {
    switch (e.kind) {
        case Expr::Kind::Number: return fmt_number(e.number);
        case Expr::Kind::Basis: return "e" + e.text;
        case Expr::Kind::Name: return e.text;
        case Expr::Kind::Neg: return "-" + wrap(*e.args[0], 3);
        case Expr::Kind::Add:
        case Expr::Kind::Sub:
            return wrap(*e.args[0], 1) + (e.kind == Expr::Kind::Add ? " + " : " - ") + wrap(*e.args[1], 2);
        case Expr::Kind::Mul: return wrap(*e.args[0], 3) + " " + wrap(*e.args[1], 4);
        case Expr::Kind::Pow: return wrap(*e.args[0], 5) + "^" + std::to_string(e.exponent);
        case Expr::Kind::Inv: return wrap(*e.args[0], 5) + "^-1";
        case Expr::Kind::Sym: {
            std::string s = "sym(";
            for (std::size_t i = 0; i < e.args.size(); ++i) {
                if (i) s += ", ";
                s += print_entry(*e.args[i]);
            }
            return s + ")";
        }
    }
    return "";
}

MV basis_word(const std::string& digits, int n) {
    MV r = MV::scalar(n, 1.0);
    for (char ch : digits) {
        int d = ch - '0';
        if (d > n) throw Error(ErrorKind::IndexOutOfRange, "e" + std::string(1, ch) + " exceeds dimension " + std::to_string(n));
        r = r * MV::basis(n, d);
    }
    return r;
}

MV eval_sym(const Expr& e, const EvalConfig& cfg, EvalInfo* info) {
    std::vector<MV> plain, inverted;
    for (const auto& item : e.args) {
        if (item->kind == Expr::Kind::Inv) {
            inverted.push_back(eval_expr(*item->args[0], cfg, info));
        } else if (item->kind == Expr::Kind::Pow) {
            MV base = eval_expr(*item->args[0], cfg, info);
            for (int k = 0; k < item->exponent; ++k) plain.push_back(base);
        } else {
            plain.push_back(eval_expr(*item, cfg, info));
        }
    }
    if (inverted.empty()) {
        if (plain.empty()) return MV::scalar(cfg.dim, 1.0);
        if (info) info->engines.push_back(chosen_engine(plain, cfg.engine));
        return sym(plain, cfg.engine);
    }
    // Integral representation of sym(u_1 .. u_l v_0^-1 .. v_l^-1).
    for (const auto& v : inverted)
        if (!is_paravector(v)) throw Error(ErrorKind::NotParavector, "inverted sym entries must be paravectors");
    for (auto& u : plain) {
        if (!is_paravector(u)) {
            ParavectorSplit s = paravector_part(u);
            u = s.part.mv();
        }
    }
    Integral r = sym_mixed_rational(plain, inverted, cfg.quad);
    if (info) {
        info->engines.push_back("dirichlet-quadrature");
        info->quadrature = true;
        info->error_estimate += r.error;
    }
    return r.value;
}

}  // namespace

ExprPtr parse_expr(const std::string& text, int max_index) { return Parser(text, max_index).run(); }

std::string print_expr(const Expr& e) { return print_normal(e); }

MV eval_expr(const Expr& e, const EvalConfig& cfg, EvalInfo* info) {
    const int n = cfg.dim;
    switch (e.kind) {
        case Expr::Kind::Number: return MV::scalar(n, e.number);
        case Expr::Kind::Basis: return basis_word(e.text, n);
        case Expr::Kind::Name: {
            auto it = cfg.bindings.find(e.text);
            if (it == cfg.bindings.end()) throw Error(ErrorKind::InvalidArgument, "unbound name '" + e.text + "'");
            if (it->second.dim() != n) throw Error(ErrorKind::AlgebraMismatch, "binding '" + e.text + "' has another dimension");
            return it->second;
        }
        case Expr::Kind::Neg: return -eval_expr(*e.args[0], cfg, info);
        case Expr::Kind::Add: return eval_expr(*e.args[0], cfg, info) + eval_expr(*e.args[1], cfg, info);
        case Expr::Kind::Sub: return eval_expr(*e.args[0], cfg, info) - eval_expr(*e.args[1], cfg, info);
        case Expr::Kind::Mul: return eval_expr(*e.args[0], cfg, info) * eval_expr(*e.args[1], cfg, info);
        case Expr::Kind::Pow: return power(eval_expr(*e.args[0], cfg, info), e.exponent);
        case Expr::Kind::Inv: return paravector_inverse(eval_expr(*e.args[0], cfg, info));
        case Expr::Kind::Sym: return eval_sym(e, cfg, info);
    }
    throw Error(ErrorKind::InvalidArgument, "bad expression node");
}

}  // namespace cliffsym
