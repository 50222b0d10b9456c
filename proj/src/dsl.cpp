#include "apisynth/dsl.hpp"

#include <cctype>
#include <vector>

namespace apisynth {

namespace {

std::string render_expr(const ExprPtr& e);

std::string render_atom(const ExprPtr& e) {
    switch (e->kind) {
        case Expr::Kind::Var: return e->name;
        case Expr::Kind::Proj: return render_atom(e->a) + "." + e->label;
        case Expr::Kind::Call: {
            std::string out = e->name + "(";
            bool first = true;
            for (const auto& [l, a] : e->args) {
                if (!first) out += ", ";
                first = false;
                out += l + "=" + render_expr(a);
            }
            return out + ")";
        }
        default:
            throw std::logic_error("expression form not renderable in this position");
    }
}

std::string render_expr(const ExprPtr& e) {
    if (e->kind == Expr::Kind::Return) return "return " + render_expr(e->a);
    return render_atom(e);
}

} // namespace

std::string render_program(const Program& p) {
    std::string out = "\\";
    for (size_t i = 0; i < p.params.size(); ++i) {
        if (i) out += " ";
        out += p.params[i];
    }
    out += " -> {\n";
    ExprPtr cur = p.body;
    while (cur) {
        switch (cur->kind) {
            case Expr::Kind::Let:
                out += "  let " + cur->name + " = " + render_expr(cur->a) + "\n";
                cur = cur->b;
                continue;
            case Expr::Kind::Bind:
                out += "  " + cur->name + " <- " + render_expr(cur->a) + "\n";
                cur = cur->b;
                continue;
            case Expr::Kind::Guard:
                out += "  if " + render_expr(cur->a) + " == " + render_expr(cur->b) + "\n";
                cur = cur->c;
                continue;
            default:
                out += "  " + render_expr(cur) + "\n";
                cur = nullptr;
                continue;
        }
    }
    out += "}";
    return out;
}

namespace {

struct Token {
    enum class Kind { Ident, Sym, End };
    Kind kind;
    std::string text;
    int line;
    int col;
};

struct Lexer {
    std::vector<Token> toks;

    explicit Lexer(const std::string& src) {
        int line = 1, col = 1;
        size_t i = 0;
        auto push = [&](Token::Kind k, std::string t, int l, int c) {
            toks.push_back({k, std::move(t), l, c});
        };
        while (i < src.size()) {
            char c = src[i];
            if (c == '\n') {
                line++;
                col = 1;
                i++;
                continue;
            }
            if (c == ' ' || c == '\t' || c == '\r' || c == ';') {
                i++;
                col++;
                continue;
            }
            int tl = line, tc = col;
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                std::string id;
                while (i < src.size() &&
                       (std::isalnum(static_cast<unsigned char>(src[i])) || src[i] == '_')) {
                    id += src[i++];
                    col++;
                }
                push(Token::Kind::Ident, id, tl, tc);
                continue;
            }
            auto two = src.substr(i, 2);
            if (two == "->" || two == "<-" || two == "==") {
                push(Token::Kind::Sym, two, tl, tc);
                i += 2;
                col += 2;
                continue;
            }
            if (std::string("\\.{}()=,").find(c) != std::string::npos) {
                push(Token::Kind::Sym, std::string(1, c), tl, tc);
                i++;
                col++;
                continue;
            }
            throw DslParseError(std::string("unexpected character '") + c + "'", tl, tc);
        }
        push(Token::Kind::End, "", line, col);
    }
};

struct Parser {
    const std::vector<Token>& toks;
    size_t pos = 0;

    explicit Parser(const std::vector<Token>& t) : toks(t) {}

    const Token& peek(size_t ahead = 0) const {
        size_t i = pos + ahead;
        return i < toks.size() ? toks[i] : toks.back();
    }
    [[noreturn]] void fail(const std::string& msg) const {
        const Token& t = peek();
        throw DslParseError(msg + " (got '" + (t.kind == Token::Kind::End ? "<end>" : t.text) +
                                "')",
                            t.line, t.col);
    }
    bool at_sym(const std::string& s) const {
        return peek().kind == Token::Kind::Sym && peek().text == s;
    }
    bool at_ident() const { return peek().kind == Token::Kind::Ident; }
    void expect_sym(const std::string& s) {
        if (!at_sym(s)) fail("expected '" + s + "'");
        pos++;
    }
    std::string expect_ident() {
        if (!at_ident()) fail("expected identifier");
        return toks[pos++].text;
    }

    static bool is_keyword(const std::string& s) {
        return s == "let" || s == "if" || s == "return";
    }

    ExprPtr parse_expr() {
        if (at_ident() && peek().text == "return") {
            pos++;
            return Expr::ret(parse_expr());
        }
        return parse_postfix();
    }

    ExprPtr parse_postfix() {
        ExprPtr e = parse_atom();
        while (at_sym(".")) {
            pos++;
            e = Expr::proj(e, expect_ident());
        }
        return e;
    }

    ExprPtr parse_atom() {
        if (at_sym("(")) {
            pos++;
            ExprPtr e = parse_expr();
            expect_sym(")");
            return e;
        }
        if (!at_ident() || is_keyword(peek().text)) fail("expected expression");
        // A dotted identifier chain followed by '(' is a method call (method
        // names may contain dots); anything else is a variable, and dots after
        // it are projections handled by the caller.
        size_t chain_end = pos;
        while (toks[chain_end].kind == Token::Kind::Ident &&
               chain_end + 2 < toks.size() && toks[chain_end + 1].kind == Token::Kind::Sym &&
               toks[chain_end + 1].text == "." &&
               toks[chain_end + 2].kind == Token::Kind::Ident)
            chain_end += 2;
        bool is_call = chain_end + 1 < toks.size() &&
                       toks[chain_end + 1].kind == Token::Kind::Sym &&
                       toks[chain_end + 1].text == "(";
        if (is_call) {
            std::string method = toks[pos].text;
            for (size_t i = pos + 2; i <= chain_end; i += 2) method += "." + toks[i].text;
            pos = chain_end + 1;
            expect_sym("(");
            std::vector<std::pair<std::string, ExprPtr>> args;
            if (!at_sym(")")) {
                for (;;) {
                    std::string label = expect_ident();
                    expect_sym("=");
                    args.emplace_back(label, parse_expr());
                    if (at_sym(",")) {
                        pos++;
                        continue;
                    }
                    break;
                }
            }
            expect_sym(")");
            return Expr::call(std::move(method), std::move(args));
        }
        return Expr::var(expect_ident());
    }

    Program parse_program_toks() {
        Program p;
        expect_sym("\\");
        while (at_ident()) p.params.push_back(toks[pos++].text);
        expect_sym("->");
        expect_sym("{");
        p.body = parse_block();
        expect_sym("}");
        if (peek().kind != Token::Kind::End) fail("trailing input after program");
        return p;
    }

    ExprPtr parse_block() {
        if (at_ident() && peek().text == "let") {
            pos++;
            std::string binder = expect_ident();
            expect_sym("=");
            ExprPtr rhs = parse_expr();
            return Expr::let(binder, rhs, parse_block());
        }
        if (at_ident() && peek().text == "if") {
            pos++;
            ExprPtr lhs = parse_expr();
            expect_sym("==");
            ExprPtr rhs = parse_expr();
            return Expr::guard(lhs, rhs, parse_block());
        }
        if (at_ident() && !is_keyword(peek().text) && peek(1).kind == Token::Kind::Sym &&
            peek(1).text == "<-") {
            std::string binder = toks[pos].text;
            pos += 2;
            ExprPtr rhs = parse_expr();
            return Expr::bind(binder, rhs, parse_block());
        }
        ExprPtr result = parse_expr();
        if (!at_sym("}")) fail("expected '}' after result expression");
        return result;
    }
};

} // namespace

Program parse_program(const std::string& text) {
    Lexer lex(text);
    Parser p(lex.toks);
    return p.parse_program_toks();
}

} // namespace apisynth
