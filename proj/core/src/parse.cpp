#include "pushpi/parse.hpp"

#include <cctype>
#include <string>

namespace pushpi {
namespace {

struct Cursor {
    const std::string& s;
    size_t i = 0;
    unsigned line = 1, col = 1;

    explicit Cursor(const std::string& text) : s(text) {}

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError(msg, line, col);
    }

    void advance() {
        if (i < s.size()) {
            if (s[i] == '\n') { ++line; col = 1; }
            else ++col;
            ++i;
        }
    }

    void skip_ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i])))
            advance();
    }

    bool eof() {
        skip_ws();
        return i >= s.size();
    }

    char peek() {
        skip_ws();
        return i < s.size() ? s[i] : '\0';
    }

    // Literal match of a punctuation token.
    bool try_tok(const std::string& tok) {
        skip_ws();
        if (s.compare(i, tok.size(), tok) != 0) return false;
        for (size_t k = 0; k < tok.size(); ++k) advance();
        return true;
    }

    void expect_tok(const std::string& tok) {
        if (!try_tok(tok)) fail("expected '" + tok + "'");
    }

    static bool ident_start(char c) {
        return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
    }
    static bool ident_char(char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' ||
               c == '\'';
    }

    bool at_ident() {
        char c = peek();
        if (ident_start(c)) return true;
        if (c == '#' || c == '%' || c == '~')
            fail("reserved identifier prefix '" + std::string(1, c) + "'");
        return false;
    }

    std::string ident(const char* what = "identifier") {
        if (!at_ident()) fail(std::string("expected ") + what);
        std::string out;
        while (i < s.size() && ident_char(s[i])) {
            out += s[i];
            advance();
        }
        return out;
    }

    // Lookahead: next token is the given identifier word.
    bool peek_word(const std::string& w) {
        skip_ws();
        if (s.compare(i, w.size(), w) != 0) return false;
        size_t after = i + w.size();
        return after >= s.size() || !ident_char(s[after]);
    }

    bool try_word(const std::string& w) {
        if (!peek_word(w)) return false;
        for (size_t k = 0; k < w.size(); ++k) advance();
        return true;
    }
};

// ---------------------------------------------------------------------------
// Functional calculus (shared variable/abstraction surface)
// ---------------------------------------------------------------------------

LTermP l_term(Cursor& c);

LTermP l_atom(Cursor& c) {
    if (c.try_tok("(")) {
        LTermP t = l_term(c);
        c.expect_tok(")");
        return t;
    }
    return lvar(c.ident("term"));
}

LTermP l_term(Cursor& c) {
    if (c.try_tok("\\")) {
        std::string x = c.ident("binder");
        c.expect_tok(".");
        return labs(x, l_term(c));
    }
    LTermP f = l_atom(c);
    while (c.peek() == '(' || c.at_ident()) f = lapp(f, l_atom(c));
    return f;
}

// ---------------------------------------------------------------------------
// Computation calculus with types
// ---------------------------------------------------------------------------

TypeP ty_term(Cursor& c);

TypeP ty_prefix(Cursor& c) {
    if (c.try_tok("(")) {
        TypeP t = ty_term(c);
        c.expect_tok(")");
        return t;
    }
    if (c.try_word("U")) return ty_thunk(ty_prefix(c));
    if (c.try_word("F")) return ty_returner(ty_prefix(c));
    return ty_base(c.ident("type"));
}

TypeP ty_term(Cursor& c) {
    TypeP a = ty_prefix(c);
    if (c.try_tok("->")) return ty_arrow(a, ty_term(c));
    return a;
}

TermP c_term(Cursor& c);

TermP c_atom(Cursor& c) {
    if (c.try_tok("(")) {
        TermP t = c_term(c);
        if (c.try_tok(":")) {
            TypeP b = ty_term(c);
            c.expect_tok(")");
            return tann(t, b);
        }
        c.expect_tok(")");
        return t;
    }
    return tval(vvar(c.ident("term")));
}

ValueP c_value(Cursor& c) {
    if (c.try_word("thunk")) return vthunk(c_atom(c));
    return vvar(c.ident("value"));
}

bool c_at_value(Cursor& c) {
    if (c.peek() == '(') return false;
    if (c.peek_word("force") || c.peek_word("return")) return false;
    return c.peek_word("thunk") || c.at_ident();
}

TermP c_term_no_bind(Cursor& c) {
    if (c.try_tok("\\")) {
        std::string x = c.ident("binder");
        c.expect_tok(".");
        return tabs(x, c_term(c));
    }
    if (c.try_word("force")) return tforce(c_value(c));
    if (c.try_word("return")) return tret(c_value(c));
    if (c.try_word("thunk")) return tval(vthunk(c_atom(c)));
    TermP f = c_atom(c);
    while (c_at_value(c)) f = tapp(f, c_value(c));
    return f;
}

TermP c_term(Cursor& c) {
    TermP t = c_term_no_bind(c);
    if (c.try_tok(">>=")) {
        c.expect_tok("\\");
        std::string x = c.ident("binder");
        c.expect_tok(".");
        return tbind(t, x, c_term(c));
    }
    return t;
}

// ---------------------------------------------------------------------------
// Named pi-calculus
// ---------------------------------------------------------------------------

ProcP p_par(Cursor& c);

ProcP p_seq(Cursor& c) {
    if (c.try_tok("(")) {
        ProcP p = p_par(c);
        c.expect_tok(")");
        return p;
    }
    if (c.try_tok("!")) return prep(p_seq(c));
    if (c.try_word("new")) {
        std::string x = c.ident("binder");
        c.expect_tok(".");
        return pres(x, p_seq(c));
    }
    if (c.try_tok("0")) return pnil();
    std::string subj = c.ident("process");
    if (c.try_tok("<")) {
        std::string obj = c.ident("object");
        c.expect_tok(">");
        c.expect_tok(".");
        return pout(subj, obj, p_seq(c));
    }
    c.expect_tok("(");
    std::string binder = c.ident("binder");
    c.expect_tok(")");
    c.expect_tok(".");
    return pin(subj, binder, p_seq(c));
}

ProcP p_par(Cursor& c) {
    ProcP p = p_seq(c);
    while (c.try_tok("|")) p = ppar(p, p_seq(c));
    return p;
}

// ---------------------------------------------------------------------------
// Internal pi-calculus
// ---------------------------------------------------------------------------

ChanRef i_chan(Cursor& c) {
    c.skip_ws();
    if (c.i < c.s.size() && c.s[c.i] == '%') {
        c.advance();
        if (c.i >= c.s.size() || !std::isdigit(static_cast<unsigned char>(c.s[c.i])))
            c.fail("expected index digits after '%'");
        unsigned n = 0;
        while (c.i < c.s.size() && std::isdigit(static_cast<unsigned char>(c.s[c.i]))) {
            n = n * 10 + static_cast<unsigned>(c.s[c.i] - '0');
            c.advance();
        }
        return cr_bound(n);
    }
    return cr_free(c.ident("channel"));
}

ProcIP i_par(Cursor& c);

ProcIP i_seq(Cursor& c) {
    if (c.try_tok("(")) {
        ProcIP p = i_par(c);
        c.expect_tok(")");
        return p;
    }
    if (c.try_tok("!")) return irep(i_seq(c));
    if (c.try_word("nu")) {
        c.expect_tok(".");
        return ires(i_seq(c));
    }
    if (c.try_tok("0")) return inil();
    ChanRef ch = i_chan(c);
    if (c.try_tok("->")) return ilink(ch, i_chan(c));
    if (c.try_tok("!")) {
        c.expect_tok("(");
        c.expect_tok(")");
        c.expect_tok(".");
        return iout(ch, i_seq(c));
    }
    c.expect_tok("(");
    c.expect_tok(")");
    c.expect_tok(".");
    return iin(ch, i_seq(c));
}

ProcIP i_par(Cursor& c) {
    ProcIP p = i_seq(c);
    while (c.try_tok("|")) p = ipar(p, i_seq(c));
    return p;
}

template <typename T, typename F>
T run_parser(const std::string& text, F entry) {
    Cursor c(text);
    T out = entry(c);
    if (!c.eof()) c.fail("unexpected trailing input");
    return out;
}

} // namespace

LTermP parse_lambda(const std::string& text) {
    return run_parser<LTermP>(text, [](Cursor& c) { return l_term(c); });
}

TermP parse_cbpv(const std::string& text) {
    return run_parser<TermP>(text, [](Cursor& c) { return c_term(c); });
}

TypeP parse_type(const std::string& text) {
    return run_parser<TypeP>(text, [](Cursor& c) { return ty_term(c); });
}

ProcP parse_pi(const std::string& text) {
    return run_parser<ProcP>(text, [](Cursor& c) { return p_par(c); });
}

ProcIP parse_pii(const std::string& text) {
    return run_parser<ProcIP>(text, [](Cursor& c) { return i_par(c); });
}

} // namespace pushpi
