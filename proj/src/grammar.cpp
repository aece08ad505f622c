#include "qpb/grammar.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <sstream>

namespace qpb {

bool Descriptor::admits(const Letter& l) const { return why_not(l).empty(); }

std::string Descriptor::why_not(const Letter& l) const {
    auto in_range = [&](int v) { return v >= 1 && v <= n; };
    switch (l.fam) {
        case Family::A:
        case Family::P:
            if (!in_range(l.i) || !in_range(l.j)) return "index out of range";
            break;
        case Family::InvD:
        case Family::T:
        case Family::InvT:
        case Family::X:
            if (!in_range(l.i)) return "index out of range";
            break;
        default:
            break;
    }
    if (!families.count(l.fam)) return "letter " + format_letter(l) + " not admitted in " + name;
    if (l.fam == Family::P && l.i > parabolic_r && l.j <= parabolic_r)
        return "letter " + format_letter(l) + " excluded by the parabolic ideal";
    if (l.fam == Family::InvD && !inverted.count(l.i))
        return "letter " + format_letter(l) + " not inverted in " + name;
    return {};
}

namespace {

class Parser {
public:
    Parser(const std::string& s, const Descriptor& ctx) : s_(s), ctx_(ctx) {}

    NcPoly run() {
        skip();
        if (pos_ == s_.size()) throw ParseError(std::string::npos, "empty input");
        NcPoly r = expr();
        skip();
        if (pos_ != s_.size()) fail("syntax error: unexpected '" + std::string(1, s_[pos_]) + "'");
        return r;
    }

    Scalar run_scalar() {
        skip();
        if (pos_ == s_.size()) throw ParseError(std::string::npos, "empty input");
        NcPoly r = expr();
        skip();
        if (pos_ != s_.size()) fail("syntax error: unexpected '" + std::string(1, s_[pos_]) + "'");
        if (r.is_zero()) return Scalar();
        if (r.size() != 1 || !r.terms().begin()->first.empty()) fail("expected a scalar");
        return r.terms().begin()->second;
    }

private:
    [[noreturn]] void fail(const std::string& m) const { throw ParseError(pos_, m); }

    void skip() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool peek(char c) {
        skip();
        return pos_ < s_.size() && s_[pos_] == c;
    }
    void expect(char c) {
        if (!peek(c)) fail(std::string("syntax error: expected '") + c + "'");
        ++pos_;
    }

    long integer() {
        skip();
        std::size_t start = pos_;
        bool neg = false;
        if (pos_ < s_.size() && (s_[pos_] == '-' || s_[pos_] == '+')) {
            neg = s_[pos_] == '-';
            ++pos_;
        }
        if (pos_ >= s_.size() || !std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            pos_ = start;
            fail("syntax error: expected integer");
        }
        long v = 0;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
            v = v * 10 + (s_[pos_] - '0');
            if (v > 1000000000L) fail("integer too large");
            ++pos_;
        }
        return neg ? -v : v;
    }

    NcPoly expr() {
        int sign = 1;
        if (peek('+') || peek('-')) {
            sign = s_[pos_] == '-' ? -1 : 1;
            ++pos_;
        }
        NcPoly r = term();
        if (sign < 0) r = -r;
        while (peek('+') || peek('-')) {
            sign = s_[pos_] == '-' ? -1 : 1;
            ++pos_;
            NcPoly t = term();
            if (sign < 0)
                r -= t;
            else
                r += t;
        }
        return r;
    }

    NcPoly term() {
        NcPoly r = factor();
        while (peek('*')) {
            ++pos_;
            r = r * factor();
        }
        return r;
    }

    std::string ident() {
        skip();
        std::size_t start = pos_;
        while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        return s_.substr(start, pos_ - start);
    }

    std::vector<int> indices(std::size_t count) {
        expect('[');
        std::vector<int> v;
        for (std::size_t k = 0; k < count; ++k) {
            if (k) expect(',');
            long x = integer();
            if (x < 1 || x > 250) fail("index out of range");
            v.push_back(static_cast<int>(x));
        }
        expect(']');
        return v;
    }

    int exponent() {
        if (!peek('^')) return 1;
        ++pos_;
        if (peek('(')) {
            ++pos_;
            long e = integer();
            expect(')');
            return static_cast<int>(e);
        }
        return static_cast<int>(integer());
    }

    NcPoly letter_power(Letter l, std::optional<Letter> inv, int e, std::size_t at) {
        Letter use = l;
        if (e < 0) {
            if (!inv) {
                pos_ = at;
                fail("letter " + format_letter(l) + " has no inverse");
            }
            use = *inv;
            e = -e;
        }
        std::string why = ctx_.why_not(use);
        if (!why.empty()) {
            pos_ = at;
            fail(why);
        }
        return NcPoly(Word(static_cast<std::size_t>(e), use));
    }

    NcPoly factor() {
        skip();
        if (pos_ >= s_.size()) fail("syntax error: unexpected end of input");
        std::size_t at = pos_;
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            NcPoly inner = expr();
            expect(')');
            int e = exponent();
            return power(inner, e, at);
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            long num = integer();
            long den = 1;
            if (peek('/')) {
                ++pos_;
                den = integer();
                if (den <= 0) fail("bad denominator");
            }
            mpq_class v(num, den);
            v.canonicalize();
            int e = exponent();
            return NcPoly(Scalar(v).pow(e));
        }
        std::string id = ident();
        if (id.empty()) fail(std::string("syntax error: unexpected '") + c + "'");
        if (id == "q") return NcPoly(Scalar::q(exponent()));
        if (id == "g") {
            auto ix = indices(2);
            if (ix[0] == ix[1]) return NcPoly(Scalar(1));
            return NcPoly(Scalar::g(ix[0], ix[1], exponent()));
        }
        if (id == "det") {
            int e = exponent();
            if (e >= 0) {
                pos_ = at;
                fail("only det^-k is a letter");
            }
            return letter_power(detinv_(), std::nullopt, -e, at);
        }
        if (id == "a") {
            auto ix = indices(2);
            std::optional<Letter> inv;
            if (ix[1] == 1) inv = dinv_(ix[0]);
            return letter_power(a_(ix[0], ix[1]), inv, exponent(), at);
        }
        if (id == "d") {
            auto ix = indices(1);
            return letter_power(a_(ix[0], 1), dinv_(ix[0]), exponent(), at);
        }
        if (id == "p") {
            auto ix = indices(2);
            std::optional<Letter> inv;
            if (ix[0] == 1 && ix[1] == 1) inv = pinv_();
            return letter_power(p_(ix[0], ix[1]), inv, exponent(), at);
        }
        if (id == "t") {
            auto ix = indices(1);
            return letter_power(t_(ix[0]), tinv_(ix[0]), exponent(), at);
        }
        if (id == "x") {
            auto ix = indices(1);
            return letter_power(x_(ix[0]), std::nullopt, exponent(), at);
        }
        pos_ = at;
        fail("syntax error: unknown symbol '" + id + "'");
    }

    NcPoly power(const NcPoly& base, int e, std::size_t at) {
        if (e < 0) {
            if (base.size() != 1 || !base.terms().begin()->first.empty()) {
                pos_ = at;
                fail("negative power of a non-scalar");
            }
            return NcPoly(base.terms().begin()->second.pow(e));
        }
        NcPoly r(Scalar(1));
        for (int k = 0; k < e; ++k) r = r * base;
        return r;
    }

    const std::string& s_;
    const Descriptor& ctx_;
    std::size_t pos_ = 0;
};

}  // namespace

NcPoly parse(const std::string& text, const Descriptor& ctx) { return Parser(text, ctx).run(); }

Scalar parse_scalar(const std::string& text) {
    Descriptor none;
    none.families.clear();
    return Parser(text, none).run_scalar();
}

std::string format_letter(const Letter& l) {
    auto s = [](int v) { return std::to_string(v); };
    switch (l.fam) {
        case Family::A: return "a[" + s(l.i) + "," + s(l.j) + "]";
        case Family::InvD: return "d[" + s(l.i) + "]^-1";
        case Family::P: return "p[" + s(l.i) + "," + s(l.j) + "]";
        case Family::InvP11: return "p[1,1]^-1";
        case Family::T: return "t[" + s(l.i) + "]";
        case Family::InvT: return "t[" + s(l.i) + "]^-1";
        case Family::InvDet: return "det^-1";
        case Family::X: return "x[" + s(l.i) + "]";
    }
    return "?";
}

std::string format_word(const Word& w) {
    if (w.empty()) return "1";
    std::string out;
    for (std::size_t i = 0; i < w.size();) {
        std::size_t j = i;
        while (j < w.size() && w[j] == w[i]) ++j;
        int run = static_cast<int>(j - i);
        std::string f = format_letter(w[i]);
        if (run > 1) {
            auto caret = f.find("^-1");
            if (caret != std::string::npos)
                f = f.substr(0, caret) + "^-" + std::to_string(run);
            else
                f += "^" + std::to_string(run);
        }
        if (!out.empty()) out += "*";
        out += f;
        i = j;
    }
    return out;
}

std::string format_coeff_term(const Scalar& c, const std::string& body, bool first) {
    // The sign of the lowest term is pulled out front.
    Scalar s = c;
    bool neg = s.terms().front().second < 0;
    if (neg) s = -s;
    std::string out;
    if (first)
        out = neg ? "-" : "";
    else
        out = neg ? " - " : " + ";
    bool unit_body = body == "1";
    if (s.is_one()) {
        out += body;
    } else if (s.is_monomial()) {
        out += s.str();
        if (!unit_body) out += "*" + body;
    } else {
        out += "(" + s.str() + ")";
        if (!unit_body) out += "*" + body;
    }
    return out;
}

std::string format(const NcPoly& p, const WordOrder& order) {
    if (p.is_zero()) return "0";
    std::vector<std::pair<Word, Scalar>> terms(p.terms().begin(), p.terms().end());
    if (order)
        std::stable_sort(terms.begin(), terms.end(),
                         [&](const auto& a, const auto& b) { return order(a.first, b.first); });
    std::string out;
    bool first = true;
    for (auto& [w, c] : terms) {
        out += format_coeff_term(c, format_word(w), first);
        first = false;
    }
    return out;
}

std::string format(const TensorPoly& t) {
    if (t.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (auto& [k, c] : t.terms()) {
        std::string body;
        for (std::size_t i = 0; i < k.size(); ++i) {
            if (i) body += " (x) ";
            body += format_word(k[i]);
        }
        Scalar s = c;
        bool neg = s.terms().front().second < 0;
        if (neg) s = -s;
        out += first ? (neg ? "-" : "") : (neg ? " - " : " + ");
        if (!s.is_one()) out += (s.is_monomial() ? s.str() : "(" + s.str() + ")") + "*";
        out += body;
        first = false;
    }
    return out;
}

}  // namespace qpb
