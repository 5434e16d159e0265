// Text format for expressions and space models.
//
// Expressions: infix with precedence ^ > unary- > * / > + -, integer
// literals (rationals are spelled as quotients, e.g. 2/3), exp(...) as the
// only function. exp takes a rational-coefficient linear form in the
// coordinates. Division and negative powers are restricted to units of the
// expression ring.
//
// Model files (see docs/model-format.md for the EBNF):
//
//   dim 3
//   coords x y t
//   params eps:pm1 mu:nonzero
//   metric {
//     g[1][1] = eps*exp(2*t);
//     ...
//   }
//   vectorfield NAME { X[1] = ...; ... }
//   scalar NAME = ...;
//
// Metric indices are 1-based and symmetric entries may be given in either
// order. Note the symmetric-product convention used when a metric is copied
// out of a line element: a cross term  f * dA dB  (A != B) contributes f/2
// to each of g[A][B] and g[B][A], while  f * dA^2  contributes f to g[A][A].
// Files state matrix entries, so the halving is already applied.
//
// parse(format(v)) == v for every canonical value; every failure throws a
// ParseError subclass carrying a 1-based line/column.
#pragma once

#include <cctype>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "solitonforge/model.hpp"

namespace solitonforge {

namespace detail {

enum class Tok {
    ident,
    integer,
    plus,
    minus,
    star,
    slash,
    caret,
    lparen,
    rparen,
    lbrace,
    rbrace,
    lbracket,
    rbracket,
    equals,
    semicolon,
    colon,
    newline,
    end,
};

struct Token {
    Tok kind;
    std::string text;
    SourceLocation loc;
};

class Lexer {
  public:
    explicit Lexer(const std::string& src) : src_(src) {}

    std::vector<Token> run() {
        std::vector<Token> out;
        while (true) {
            Token t = next();
            out.push_back(t);
            if (t.kind == Tok::end) break;
        }
        return out;
    }

  private:
    Token next() {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == '#') {
                while (pos_ < src_.size() && src_[pos_] != '\n') advance();
                continue;
            }
            if (c == '\n') {
                Token t{Tok::newline, "\n", here()};
                advance();
                return t;
            }
            if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
                continue;
            }
            SourceLocation loc = here();
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                std::string s;
                while (pos_ < src_.size() &&
                       (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
                    s += src_[pos_];
                    advance();
                }
                return {Tok::ident, std::move(s), loc};
            }
            if (std::isdigit(static_cast<unsigned char>(c))) {
                std::string s;
                while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
                    s += src_[pos_];
                    advance();
                }
                if (pos_ < src_.size() && src_[pos_] == '.')
                    throw SyntaxError(here(), "decimal literals are not supported; use a quotient");
                return {Tok::integer, std::move(s), loc};
            }
            advance();
            switch (c) {
                case '+': return {Tok::plus, "+", loc};
                case '-': return {Tok::minus, "-", loc};
                case '*': return {Tok::star, "*", loc};
                case '/': return {Tok::slash, "/", loc};
                case '^': return {Tok::caret, "^", loc};
                case '(': return {Tok::lparen, "(", loc};
                case ')': return {Tok::rparen, ")", loc};
                case '{': return {Tok::lbrace, "{", loc};
                case '}': return {Tok::rbrace, "}", loc};
                case '[': return {Tok::lbracket, "[", loc};
                case ']': return {Tok::rbracket, "]", loc};
                case '=': return {Tok::equals, "=", loc};
                case ';': return {Tok::semicolon, ";", loc};
                case ':': return {Tok::colon, ":", loc};
                default: throw SyntaxError(loc, std::string("unexpected character '") + c + "'");
            }
        }
        return {Tok::end, "", here()};
    }

    SourceLocation here() const { return {line_, col_}; }

    void advance() {
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    const std::string& src_;
    size_t pos_ = 0;
    int line_ = 1, col_ = 1;
};

// Pratt parser over a token stream; newlines are transparent inside
// expressions (they are only meaningful to the model-file layer).
class ExprParser {
  public:
    ExprParser(const std::vector<Token>& toks, size_t& cursor, CtxPtr ctx)
        : toks_(toks), cur_(cursor), ctx_(std::move(ctx)) {}

    ExpPoly parse(int min_bp = 0) {
        ExpPoly lhs = parse_prefix();
        while (true) {
            const Token& t = peek();
            int lbp = infix_bp(t.kind);
            if (lbp == 0 || lbp <= min_bp) break;
            take();
            switch (t.kind) {
                case Tok::plus: lhs = lhs + parse(lbp); break;
                case Tok::minus: lhs = lhs - parse(lbp); break;
                case Tok::star: lhs = lhs * parse(lbp); break;
                case Tok::slash: {
                    ExpPoly rhs = parse(lbp);
                    if (rhs.is_zero()) throw SyntaxError(t.loc, "division by zero");
                    if (!rhs.is_unit())
                        throw SyntaxError(t.loc, "division by a non-invertible expression");
                    lhs = lhs / rhs;
                    break;
                }
                case Tok::caret: {
                    // right-associative; exponent is an integer constant
                    ExpPoly rhs = parse(lbp - 1);
                    int e = as_int_constant(rhs, t.loc);
                    if (e < 0 && !lhs.is_unit())
                        throw SyntaxError(t.loc, "negative power of a non-invertible expression");
                    lhs = lhs.pow(e);
                    break;
                }
                default: throw SyntaxError(t.loc, "unexpected operator");
            }
        }
        return lhs;
    }

  private:
    static int infix_bp(Tok k) {
        switch (k) {
            case Tok::plus:
            case Tok::minus: return 10;
            case Tok::star:
            case Tok::slash: return 20;
            case Tok::caret: return 40;
            default: return 0;
        }
    }

    ExpPoly parse_prefix() {
        const Token& t = peek();
        switch (t.kind) {
            case Tok::minus:
                take();
                return -parse(30); // binds tighter than * /, looser than ^
            case Tok::integer: {
                take();
                return ExpPoly::from_rat(ctx_, Rat(Int(t.text)));
            }
            case Tok::lparen: {
                take();
                ExpPoly e = parse(0);
                expect(Tok::rparen, "expected ')'");
                return e;
            }
            case Tok::ident: {
                take();
                if (t.text == "exp") {
                    expect(Tok::lparen, "expected '(' after exp");
                    ExpPoly arg = parse(0);
                    expect(Tok::rparen, "expected ')'");
                    return make_exp(arg, t.loc);
                }
                if (auto ci = ctx_->find_coord(t.text)) return ExpPoly::coord(ctx_, *ci);
                if (auto pi = ctx_->find_param(t.text)) return ExpPoly::param(ctx_, *pi);
                throw UnknownSymbol(t.loc, "unknown symbol '" + t.text + "'");
            }
            default: throw SyntaxError(t.loc, "expected expression, found '" + describe(t) + "'");
        }
    }

    ExpPoly make_exp(const ExpPoly& arg, SourceLocation loc) const {
        std::vector<Rat> freq(ctx_->dim(), Rat(0));
        for (const auto& term : arg.terms()) {
            if (!term.key.freq_is_zero() || mono_total_degree(term.key.mono) != 1 ||
                !term.coeff.is_rational())
                throw NonRationalFrequency(
                    loc, "exp argument must be a rational linear form in the coordinates");
            for (int i = 0; i < ctx_->dim(); ++i)
                if (term.key.mono[i] == 1) freq[i] = term.coeff.as_rational();
        }
        return ExpPoly::exp_linear(ctx_, std::move(freq));
    }

    int as_int_constant(const ExpPoly& e, SourceLocation loc) const {
        if (e.is_zero()) return 0;
        if (e.terms().size() == 1 && e.terms()[0].key.is_unit() &&
            e.terms()[0].coeff.is_rational()) {
            Rat q = e.terms()[0].coeff.as_rational();
            if (rat_den(q) == 1) return static_cast<int>(rat_num(q).convert_to<long long>());
        }
        throw SyntaxError(loc, "exponent must be an integer constant");
    }

    const Token& peek() {
        size_t k = cur_;
        while (toks_[k].kind == Tok::newline) ++k;
        cur_ = k;
        return toks_[k];
    }

    Token take() {
        const Token& t = peek();
        ++cur_;
        return t;
    }

    void expect(Tok k, const char* msg) {
        const Token& t = peek();
        if (t.kind != k) throw SyntaxError(t.loc, msg);
        ++cur_;
    }

    static std::string describe(const Token& t) {
        if (t.kind == Tok::end) return "end of input";
        if (t.kind == Tok::newline) return "end of line";
        return t.text;
    }

    const std::vector<Token>& toks_;
    size_t& cur_;
    CtxPtr ctx_;
};

} // namespace detail

inline ExpPoly parse_expr(const std::string& text, const CtxPtr& ctx) {
    auto toks = detail::Lexer(text).run();
    size_t cur = 0;
    detail::ExprParser p(toks, cur, ctx);
    ExpPoly e = p.parse();
    // skip trailing newlines
    while (toks[cur].kind == detail::Tok::newline) ++cur;
    if (toks[cur].kind != detail::Tok::end)
        throw SyntaxError(toks[cur].loc, "trailing input after expression");
    return e;
}

namespace detail {

class ModelParser {
  public:
    explicit ModelParser(const std::string& src) : toks_(Lexer(src).run()) {}

    ModelDocument run() {
        while (peek(true).kind != Tok::end) {
            const Token& t = peek(true);
            if (t.kind != Tok::ident)
                throw SyntaxError(t.loc, "expected a declaration (dim/coords/params/metric/...)");
            if (t.text == "dim") {
                take(true);
                parse_dim();
            } else if (t.text == "coords") {
                take(true);
                parse_coords();
            } else if (t.text == "params") {
                take(true);
                parse_params();
            } else if (t.text == "metric") {
                take(true);
                parse_metric(t.loc);
            } else if (t.text == "vectorfield") {
                take(true);
                parse_vectorfield();
            } else if (t.text == "scalar") {
                take(true);
                parse_scalar();
            } else {
                throw SyntaxError(t.loc, "unknown declaration '" + t.text + "'");
            }
        }
        if (!metric_seen_) throw SyntaxError(last_loc_, "model has no metric block");
        ModelDocument doc;
        doc.model = SpaceModel(ctx_, std::move(g_));
        doc.fields = std::move(fields_);
        doc.scalars = std::move(scalars_);
        return doc;
    }

  private:
    void parse_dim() {
        const Token& t = take(true);
        if (t.kind != Tok::integer) throw SyntaxError(t.loc, "dim expects a positive integer");
        dim_ = std::stoi(t.text);
        if (dim_ <= 0) throw SyntaxError(t.loc, "dimension must be positive");
    }

    void parse_coords() {
        if (dim_ == 0) throw SyntaxError(peek(true).loc, "dim must precede coords");
        // names up to end of line
        while (peek(false).kind == Tok::ident) coords_.push_back(take(false).text);
        if (static_cast<int>(coords_.size()) != dim_)
            throw DimensionMismatch(last_loc_, "expected " + std::to_string(dim_) +
                                                   " coordinate names, got " +
                                                   std::to_string(coords_.size()));
    }

    void parse_params() {
        while (peek(false).kind == Tok::ident) {
            Token name = take(false);
            ParamKind kind = ParamKind::free_real;
            if (peek(false).kind == Tok::colon) {
                take(false);
                Token c = take(false);
                if (c.kind != Tok::ident || (c.text != "nonzero" && c.text != "pm1"))
                    throw SyntaxError(c.loc, "parameter constraint must be 'nonzero' or 'pm1'");
                kind = c.text == "pm1" ? ParamKind::pm1 : ParamKind::nonzero;
            }
            params_.push_back(name.text);
            kinds_.push_back(kind);
        }
    }

    void ensure_context(SourceLocation loc) {
        if (ctx_) return;
        if (coords_.empty()) throw SyntaxError(loc, "coords must precede this block");
        try {
            ctx_ = make_context(coords_, params_, kinds_);
        } catch (const InputError& e) {
            throw SyntaxError(loc, e.what());
        }
        g_ = ExpMatrix(ctx_, dim_);
    }

    // index token "[ k ]", 1-based, bounds-checked
    int parse_index(const char* what) {
        expect(Tok::lbracket, "expected '['");
        Token t = take(true);
        if (t.kind != Tok::integer) throw SyntaxError(t.loc, "expected an index");
        int k = std::stoi(t.text);
        if (k < 1 || k > dim_)
            throw DimensionMismatch(t.loc, std::string(what) + " index out of range 1..." +
                                               std::to_string(dim_));
        expect(Tok::rbracket, "expected ']'");
        return k - 1;
    }

    ExpPoly parse_rhs() {
        ExprParser p(toks_, cur_, ctx_);
        ExpPoly e = p.parse();
        expect(Tok::semicolon, "expected ';' after expression");
        return e;
    }

    void parse_metric(SourceLocation loc) {
        if (metric_seen_) throw SyntaxError(loc, "duplicate metric block");
        metric_seen_ = true;
        ensure_context(loc);
        expect(Tok::lbrace, "expected '{'");
        std::vector<std::vector<bool>> seen(dim_, std::vector<bool>(dim_, false));
        while (peek(true).kind != Tok::rbrace) {
            Token t = take(true);
            if (t.kind != Tok::ident || t.text != "g")
                throw SyntaxError(t.loc, "expected a metric entry g[i][j]");
            int i = parse_index("metric");
            int j = parse_index("metric");
            expect(Tok::equals, "expected '='");
            ExpPoly e = parse_rhs();
            if ((seen[i][j] && g_.at(i, j) != e))
                throw SyntaxError(t.loc, "conflicting value for metric entry");
            seen[i][j] = seen[j][i] = true;
            g_.at(i, j) = e;
            g_.at(j, i) = e;
        }
        take(true); // rbrace
    }

    void parse_vectorfield() {
        Token name = take(true);
        if (name.kind != Tok::ident) throw SyntaxError(name.loc, "vectorfield expects a name");
        ensure_context(name.loc);
        if (!metric_seen_)
            throw SyntaxError(name.loc, "vectorfield must come after the metric block");
        expect(Tok::lbrace, "expected '{'");
        std::vector<ExpPoly> comp(dim_, ExpPoly::zero(ctx_));
        while (peek(true).kind != Tok::rbrace) {
            Token t = take(true);
            if (t.kind != Tok::ident || t.text != "X")
                throw SyntaxError(t.loc, "expected a component entry X[i]");
            int i = parse_index("component");
            expect(Tok::equals, "expected '='");
            comp[i] = parse_rhs();
        }
        take(true);
        for (const auto& [n, f] : fields_)
            if (n == name.text) throw SyntaxError(name.loc, "duplicate vectorfield " + name.text);
        fields_.emplace_back(name.text, VectorField(ctx_, std::move(comp)));
    }

    void parse_scalar() {
        Token name = take(true);
        if (name.kind != Tok::ident) throw SyntaxError(name.loc, "scalar expects a name");
        ensure_context(name.loc);
        expect(Tok::equals, "expected '='");
        ExpPoly e = parse_rhs();
        for (const auto& [n, s] : scalars_)
            if (n == name.text) throw SyntaxError(name.loc, "duplicate scalar " + name.text);
        scalars_.emplace_back(name.text, std::move(e));
    }

    const Token& peek(bool skip_newlines) {
        size_t k = cur_;
        if (skip_newlines)
            while (toks_[k].kind == Tok::newline) ++k;
        cur_ = k;
        return toks_[k];
    }

    Token take(bool skip_newlines) {
        const Token& t = peek(skip_newlines);
        last_loc_ = t.loc;
        ++cur_;
        return t;
    }

    void expect(Tok k, const char* msg) {
        const Token& t = peek(true);
        if (t.kind != k) throw SyntaxError(t.loc, msg);
        last_loc_ = t.loc;
        ++cur_;
    }

    std::vector<Token> toks_;
    size_t cur_ = 0;
    SourceLocation last_loc_{1, 1};

    int dim_ = 0;
    std::vector<std::string> coords_, params_;
    std::vector<ParamKind> kinds_;
    CtxPtr ctx_;
    ExpMatrix g_;
    bool metric_seen_ = false;
    std::vector<std::pair<std::string, VectorField>> fields_;
    std::vector<std::pair<std::string, ExpPoly>> scalars_;
};

} // namespace detail

inline ModelDocument parse_model(const std::string& text) {
    return detail::ModelParser(text).run();
}

inline std::string format_expr(const ExpPoly& e) { return e.to_string(); }

// canonical model text; parse_model(format_model(doc)) reproduces doc
inline std::string format_model(const ModelDocument& doc) {
    const auto& ctx = doc.model.ctx();
    std::ostringstream os;
    os << "dim " << ctx->dim() << "\n";
    os << "coords";
    for (const auto& c : ctx->coords()) os << " " << c;
    os << "\n";
    if (ctx->nparams() > 0) {
        os << "params";
        for (int i = 0; i < ctx->nparams(); ++i) {
            os << " " << ctx->param_name(i);
            if (ctx->param_kind(i) == ParamKind::nonzero) os << ":nonzero";
            if (ctx->param_kind(i) == ParamKind::pm1) os << ":pm1";
        }
        os << "\n";
    }
    os << "metric {\n";
    for (int i = 0; i < ctx->dim(); ++i)
        for (int j = i; j < ctx->dim(); ++j)
            if (!doc.model.metric().at(i, j).is_zero())
                os << "  g[" << i + 1 << "][" << j + 1
                   << "] = " << doc.model.metric().at(i, j).to_string() << ";\n";
    os << "}\n";
    for (const auto& [name, f] : doc.fields) {
        os << "vectorfield " << name << " {\n";
        for (int i = 0; i < ctx->dim(); ++i)
            if (!f.comp[i].is_zero())
                os << "  X[" << i + 1 << "] = " << f.comp[i].to_string() << ";\n";
        os << "}\n";
    }
    for (const auto& [name, s] : doc.scalars)
        os << "scalar " << name << " = " << s.to_string() << ";\n";
    return os.str();
}

} // namespace solitonforge
