#include "courant/modelfile.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

namespace courant {

namespace {

std::string kind_name(DiagnosticKind k) {
    switch (k) {
    case DiagnosticKind::Schema: return "schema";
    case DiagnosticKind::UnresolvedReference: return "unresolved reference";
    case DiagnosticKind::PairingWitness: return "pairing witness";
    }
    return "?";
}

} // namespace

ModelDiagnostic::ModelDiagnostic(DiagnosticKind k, const std::string& origin,
                                 int line_, int column_, const std::string& msg)
    : std::runtime_error(origin + ":" + std::to_string(line_) + ":" +
                         std::to_string(column_) + ": " + kind_name(k) + ": " + msg),
      kind(k), line(line_), column(column_) {}

// ---------------------------------------------------------------- polynomials

namespace {

struct PTok {
    enum Kind { Num, Imag, Name, Plus, Minus, Star, Caret, LParen, RParen, End };
    Kind kind;
    std::string text;
    size_t pos; // 0-based offset in the literal
};

[[noreturn]] void poly_fail(DiagnosticKind k, size_t pos, const std::string& msg) {
    throw ModelDiagnostic(k, "<poly>", 0, (int)pos + 1, msg);
}

std::vector<PTok> poly_lex(const std::string& s) {
    std::vector<PTok> out;
    size_t i = 0;
    while (i < s.size()) {
        char c = s[i];
        if (std::isspace((unsigned char)c)) { ++i; continue; }
        size_t start = i;
        if (std::isdigit((unsigned char)c)) {
            while (i < s.size() && std::isdigit((unsigned char)s[i])) ++i;
            if (i < s.size() && s[i] == '/') {
                ++i;
                if (i >= s.size() || !std::isdigit((unsigned char)s[i]))
                    poly_fail(DiagnosticKind::Schema, i, "expected denominator digits");
                while (i < s.size() && std::isdigit((unsigned char)s[i])) ++i;
            }
            std::string text = s.substr(start, i - start);
            // a trailing bare `i` makes the literal pure imaginary
            if (i < s.size() && s[i] == 'i' &&
                (i + 1 >= s.size() || !(std::isalnum((unsigned char)s[i + 1]) || s[i + 1] == '_'))) {
                ++i;
                out.push_back({PTok::Imag, text, start});
            } else {
                out.push_back({PTok::Num, text, start});
            }
            continue;
        }
        if (std::isalpha((unsigned char)c) || c == '_') {
            while (i < s.size() && (std::isalnum((unsigned char)s[i]) || s[i] == '_' ||
                                    s[i] == '.' || s[i] == '{' || s[i] == '}'))
                ++i;
            out.push_back({PTok::Name, s.substr(start, i - start), start});
            continue;
        }
        ++i;
        switch (c) {
        case '+': out.push_back({PTok::Plus, "+", start}); break;
        case '-': out.push_back({PTok::Minus, "-", start}); break;
        case '*': out.push_back({PTok::Star, "*", start}); break;
        case '^': out.push_back({PTok::Caret, "^", start}); break;
        case '(': out.push_back({PTok::LParen, "(", start}); break;
        case ')': out.push_back({PTok::RParen, ")", start}); break;
        default:
            poly_fail(DiagnosticKind::Schema, start,
                      std::string("unexpected character '") + c + "'");
        }
    }
    out.push_back({PTok::End, "", s.size()});
    return out;
}

struct PolyParser {
    AlgebraPtr alg;
    std::vector<PTok> toks;
    size_t i = 0;

    const PTok& peek() const { return toks[i]; }
    PTok take() { return toks[i++]; }

    Elem parse() {
        Elem e = expr();
        if (peek().kind != PTok::End)
            poly_fail(DiagnosticKind::Schema, peek().pos, "trailing input in polynomial");
        return e;
    }

    Elem expr() {
        bool neg = false;
        if (peek().kind == PTok::Plus) take();
        else if (peek().kind == PTok::Minus) { take(); neg = true; }
        Elem e = term();
        if (neg) e = -e;
        while (peek().kind == PTok::Plus || peek().kind == PTok::Minus) {
            bool minus = take().kind == PTok::Minus;
            Elem t = term();
            e = minus ? e - t : e + t;
        }
        return e;
    }

    Elem term() {
        Elem e = power();
        while (peek().kind == PTok::Star) {
            take();
            e = e * power();
        }
        return e;
    }

    Elem power() {
        Elem e = primary();
        if (peek().kind == PTok::Caret) {
            take();
            if (peek().kind != PTok::Num)
                poly_fail(DiagnosticKind::Schema, peek().pos, "expected exponent");
            PTok t = take();
            long n = std::stol(t.text);
            if (n < 0 || t.text.find('/') != std::string::npos)
                poly_fail(DiagnosticKind::Schema, t.pos, "exponent must be a nonnegative integer");
            e = e.pow((uint32_t)n);
        }
        return e;
    }

    Elem imaginary(const PTok& t, const Scalar& mag) {
        if (alg->field() != CoefficientField::GaussianRationals)
            poly_fail(DiagnosticKind::Schema, t.pos,
                      "imaginary literal over the rationals");
        return Elem::constant(alg, Scalar(Rational(0), mag.re));
    }

    Elem primary() {
        PTok t = take();
        switch (t.kind) {
        case PTok::Num:
            return Elem::constant(alg, parse_scalar(t.text));
        case PTok::Imag:
            return imaginary(t, parse_scalar(t.text));
        case PTok::Name: {
            if (auto g = alg->find(t.text))
                return Elem::generator(alg, *g);
            if (t.text == "i") return imaginary(t, Scalar(1));
            poly_fail(DiagnosticKind::UnresolvedReference, t.pos,
                      "unknown generator " + t.text);
        }
        case PTok::LParen: {
            Elem e = expr();
            if (peek().kind != PTok::RParen)
                poly_fail(DiagnosticKind::Schema, peek().pos, "expected ')'");
            take();
            return e;
        }
        default:
            poly_fail(DiagnosticKind::Schema, t.pos, "expected a polynomial factor");
        }
    }
};

} // namespace

Elem parse_poly(const AlgebraPtr& alg, const std::string& text) {
    PolyParser p{alg, poly_lex(text)};
    return p.parse();
}

// ------------------------------------------------------------------- parsing

namespace {

struct SrcLine {
    int no;
    std::string text; // comment-stripped, right-trimmed
};

struct Field {
    std::string text;
    int column; // 1-based
};

std::vector<Field> fields_of(const SrcLine& l) {
    std::vector<Field> out;
    size_t i = 0;
    while (i < l.text.size()) {
        if (std::isspace((unsigned char)l.text[i])) { ++i; continue; }
        size_t start = i;
        while (i < l.text.size() && !std::isspace((unsigned char)l.text[i])) ++i;
        out.push_back({l.text.substr(start, i - start), (int)start + 1});
    }
    return out;
}

// The trailing portion of the line after `n` whitespace-separated fields;
// polynomials sit there and may contain spaces.
Field rest_after(const SrcLine& l, size_t n) {
    size_t i = 0, seen = 0;
    while (i < l.text.size()) {
        while (i < l.text.size() && std::isspace((unsigned char)l.text[i])) ++i;
        if (i >= l.text.size()) break;
        if (seen == n) return {l.text.substr(i), (int)i + 1};
        while (i < l.text.size() && !std::isspace((unsigned char)l.text[i])) ++i;
        ++seen;
    }
    return {"", (int)l.text.size() + 1};
}

struct FileParser {
    std::string origin;
    std::vector<SrcLine> lines;
    size_t pos = 0;

    [[noreturn]] void fail(DiagnosticKind k, int line, int col,
                           const std::string& msg) const {
        throw ModelDiagnostic(k, origin, line, col, msg);
    }

    bool at_end() const { return pos >= lines.size(); }
    const SrcLine& peek() const {
        if (at_end())
            throw ModelDiagnostic(DiagnosticKind::Schema, origin,
                                  lines.empty() ? 1 : lines.back().no, 1,
                                  "unexpected end of file");
        return lines[pos];
    }
    const SrcLine& next() { const SrcLine& l = peek(); ++pos; return l; }

    Elem poly(const AlgebraPtr& alg, const Field& f, int line) const {
        try {
            return parse_poly(alg, f.text);
        } catch (const ModelDiagnostic& d) {
            fail(d.kind, line, f.column + d.column - 1, d.what());
        }
    }

    size_t resolve(const std::vector<std::string>& names, const Field& f,
                   int line, const std::string& what) const {
        for (size_t i = 0; i < names.size(); ++i)
            if (names[i] == f.text) return i;
        fail(DiagnosticKind::UnresolvedReference, line, f.column,
             "unknown " + what + " " + f.text);
    }
};

int parse_int(const FileParser& fp, const Field& f, int line) {
    try {
        size_t used = 0;
        int v = std::stoi(f.text, &used);
        if (used != f.text.size()) throw std::invalid_argument("");
        return v;
    } catch (const std::exception&) {
        fp.fail(DiagnosticKind::Schema, line, f.column, "expected an integer");
    }
}

// A dg ring block: `gen <name> <degree> <intrinsic>`, `coord <name>`,
// `d <gen> <poly>` lines up to `end`.
Cdga parse_ring_block(FileParser& fp, CoefficientField field) {
    std::vector<Generator> gens;
    std::vector<Field> coord_fields;
    std::vector<int> coord_lines;
    struct DLine { Field gen; Field poly; int line; };
    std::vector<DLine> dlines;

    while (true) {
        const SrcLine& l = fp.next();
        auto f = fields_of(l);
        if (f[0].text == "end") break;
        if (f[0].text == "gen") {
            if (f.size() != 4)
                fp.fail(DiagnosticKind::Schema, l.no, f[0].column,
                        "gen takes <name> <degree> <intrinsic>");
            Grade g{parse_int(fp, f[2], l.no), parse_int(fp, f[3], l.no)};
            if (g.intrinsic != 0 && g.intrinsic != 1)
                fp.fail(DiagnosticKind::Schema, l.no, f[3].column,
                        "intrinsic parity must be 0 or 1");
            gens.push_back({f[1].text, g});
        } else if (f[0].text == "coord") {
            if (f.size() != 2)
                fp.fail(DiagnosticKind::Schema, l.no, f[0].column, "coord takes <name>");
            coord_fields.push_back(f[1]);
            coord_lines.push_back(l.no);
        } else if (f[0].text == "d") {
            if (f.size() < 3)
                fp.fail(DiagnosticKind::Schema, l.no, f[0].column, "d takes <gen> <poly>");
            dlines.push_back({f[1], rest_after(l, 2), l.no});
        } else {
            fp.fail(DiagnosticKind::Schema, l.no, f[0].column,
                    "unknown ring entry " + f[0].text);
        }
    }

    Cdga base;
    base.alg = Algebra::make(field, gens);
    for (size_t k = 0; k < coord_fields.size(); ++k) {
        auto g = base.alg->find(coord_fields[k].text);
        if (!g)
            fp.fail(DiagnosticKind::UnresolvedReference, coord_lines[k],
                    coord_fields[k].column, "unknown generator " + coord_fields[k].text);
        base.coords.push_back(*g);
    }
    bool any = false;
    Derivation d(base.alg, Grade{1, 0});
    d.set_zero_images();
    for (auto& dl : dlines) {
        auto g = base.alg->find(dl.gen.text);
        if (!g)
            fp.fail(DiagnosticKind::UnresolvedReference, dl.line, dl.gen.column,
                    "unknown generator " + dl.gen.text);
        Elem img = fp.poly(base.alg, dl.poly, dl.line);
        if (!img.is_zero()) any = true;
        d.set_image(*g, img);
    }
    if (any) base.diff = d;
    return base;
}

std::string field_token(CoefficientField f) {
    return f == CoefficientField::Rationals ? "Q" : "Q(i)";
}

} // namespace

ModelFile parse_model_text(const std::string& text, const std::string& origin) {
    FileParser fp;
    fp.origin = origin;
    {
        std::istringstream is(text);
        std::string raw;
        int no = 0;
        while (std::getline(is, raw)) {
            ++no;
            if (auto h = raw.find('#'); h != std::string::npos) raw.erase(h);
            while (!raw.empty() && std::isspace((unsigned char)raw.back())) raw.pop_back();
            bool blank = true;
            for (char c : raw)
                if (!std::isspace((unsigned char)c)) { blank = false; break; }
            if (!blank) fp.lines.push_back({no, raw});
        }
    }

    auto expect_keyword = [&](const std::string& kw) -> SrcLine {
        const SrcLine& l = fp.next();
        auto f = fields_of(l);
        if (f[0].text != kw)
            fp.fail(DiagnosticKind::Schema, l.no, f[0].column,
                    "expected '" + kw + "', got '" + f[0].text + "'");
        return l;
    };

    // header
    {
        const SrcLine& l = expect_keyword("courant-model");
        auto f = fields_of(l);
        if (f.size() != 2 || f[1].text != "1")
            fp.fail(DiagnosticKind::Schema, l.no, f.size() > 1 ? f[1].column : f[0].column,
                    "unsupported model format version");
    }
    ModelFile m;
    {
        const SrcLine& l = expect_keyword("name");
        auto f = fields_of(l);
        if (f.size() != 2)
            fp.fail(DiagnosticKind::Schema, l.no, f[0].column, "name takes one identifier");
        m.name = f[1].text;
        m.datum.name = m.name;
    }
    CoefficientField field;
    {
        const SrcLine& l = expect_keyword("field");
        auto f = fields_of(l);
        if (f.size() != 2 || (f[1].text != "Q" && f[1].text != "Q(i)"))
            fp.fail(DiagnosticKind::Schema, l.no, f[0].column, "field is Q or Q(i)");
        field = f[1].text == "Q" ? CoefficientField::Rationals
                                 : CoefficientField::GaussianRationals;
    }

    expect_keyword("ring");
    m.datum.mod.base = parse_ring_block(fp, field);
    const Cdga& base = m.datum.mod.base;
    const AlgebraPtr& alg = base.alg;

    std::vector<std::string> sec_names;
    int module_line;
    {
        const SrcLine& bl = expect_keyword("module");
        module_line = bl.no;
        struct DLine { Field src, tgt, poly; int line; };
        std::vector<DLine> dlines;
        while (true) {
            const SrcLine& l = fp.next();
            auto f = fields_of(l);
            if (f[0].text == "end") break;
            if (f[0].text == "sec") {
                if (f.size() != 4)
                    fp.fail(DiagnosticKind::Schema, l.no, f[0].column,
                            "sec takes <name> <degree> <intrinsic>");
                Grade g{parse_int(fp, f[2], l.no), parse_int(fp, f[3], l.no)};
                m.datum.mod.basis.push_back({f[1].text, g});
                sec_names.push_back(f[1].text);
            } else if (f[0].text == "d") {
                if (f.size() < 4)
                    fp.fail(DiagnosticKind::Schema, l.no, f[0].column,
                            "d takes <src> <tgt> <poly>");
                dlines.push_back({f[1], f[2], rest_after(l, 3), l.no});
            } else {
                fp.fail(DiagnosticKind::Schema, l.no, f[0].column,
                        "unknown module entry " + f[0].text);
            }
        }
        size_t r = sec_names.size();
        m.datum.mod.dmat.assign(r, std::vector<Elem>(r, Elem::zero(alg)));
        for (auto& dl : dlines) {
            size_t a = fp.resolve(sec_names, dl.src, dl.line, "section");
            size_t b = fp.resolve(sec_names, dl.tgt, dl.line, "section");
            m.datum.mod.dmat[b][a] = fp.poly(alg, dl.poly, dl.line);
        }
    }
    size_t rank = sec_names.size();

    int pairing_line;
    {
        const SrcLine& bl = expect_keyword("pairing");
        pairing_line = bl.no;
        m.datum.eta.eta.assign(rank, std::vector<Elem>(rank, Elem::zero(alg)));
        m.datum.eta.eta_inv = m.datum.eta.eta;
        while (true) {
            const SrcLine& l = fp.next();
            auto f = fields_of(l);
            if (f[0].text == "end") break;
            bool inv = f[0].text == "inv";
            if (!inv && f[0].text != "eta")
                fp.fail(DiagnosticKind::Schema, l.no, f[0].column,
                        "unknown pairing entry " + f[0].text);
            if (f.size() < 4)
                fp.fail(DiagnosticKind::Schema, l.no, f[0].column,
                        f[0].text + " takes <a> <b> <poly>");
            size_t a = fp.resolve(sec_names, f[1], l.no, "section");
            size_t b = fp.resolve(sec_names, f[2], l.no, "section");
            Elem v = fp.poly(alg, rest_after(l, 3), l.no);
            (inv ? m.datum.eta.eta_inv : m.datum.eta.eta)[a][b] = v;
        }
    }

    std::vector<std::string> coord_names;
    for (size_t k : base.coords) coord_names.push_back(alg->gen(k).name);
    {
        expect_keyword("anchor");
        m.datum.anchor.assign(rank, VectorField(base.coords.size(), Elem::zero(alg)));
        while (true) {
            const SrcLine& l = fp.next();
            auto f = fields_of(l);
            if (f[0].text == "end") break;
            if (f[0].text != "rho" || f.size() < 4)
                fp.fail(DiagnosticKind::Schema, l.no, f[0].column,
                        "anchor entries are rho <sec> <coord> <poly>");
            size_t a = fp.resolve(sec_names, f[1], l.no, "section");
            size_t k = fp.resolve(coord_names, f[2], l.no, "coordinate");
            m.datum.anchor[a][k] = fp.poly(alg, rest_after(l, 3), l.no);
        }
    }
    {
        expect_keyword("brackets");
        m.datum.structure.assign(
            rank, std::vector<Section>(rank, Section(rank, Elem::zero(alg))));
        while (true) {
            const SrcLine& l = fp.next();
            auto f = fields_of(l);
            if (f[0].text == "end") break;
            if (f[0].text != "br" || f.size() < 5)
                fp.fail(DiagnosticKind::Schema, l.no, f[0].column,
                        "bracket entries are br <a> <b> <c> <poly>");
            size_t a = fp.resolve(sec_names, f[1], l.no, "section");
            size_t b = fp.resolve(sec_names, f[2], l.no, "section");
            size_t c = fp.resolve(sec_names, f[3], l.no, "section");
            m.datum.structure[a][b][c] = fp.poly(alg, rest_after(l, 4), l.no);
        }
    }

    // optional trailing blocks in fixed order
    if (!fp.at_end() && fields_of(fp.peek())[0].text == "orientation") {
        fp.next();
        while (true) {
            const SrcLine& l = fp.next();
            auto f = fields_of(l);
            if (f[0].text == "end") break;
            if (f[0].text == "const" && f.size() == 2) {
                try {
                    m.orient.constant = parse_scalar(f[1].text);
                } catch (const std::exception& e) {
                    fp.fail(DiagnosticKind::Schema, l.no, f[1].column, e.what());
                }
            } else if (f[0].text == "shift" && f.size() == 2) {
                m.orient.shift = parse_int(fp, f[1], l.no);
            } else {
                fp.fail(DiagnosticKind::Schema, l.no, f[0].column,
                        "orientation entries are const <scalar> or shift <int>");
            }
        }
    }
    if (!fp.at_end() && fields_of(fp.peek())[0].text == "submodule") {
        fp.next();
        IsotropicSubmodule L;
        while (true) {
            const SrcLine& l = fp.next();
            auto f = fields_of(l);
            if (f[0].text == "end") break;
            if (f[0].text != "span")
                fp.fail(DiagnosticKind::Schema, l.no, f[0].column,
                        "submodule entries are span <poly> ; ... ; <poly>");
            Field rest = rest_after(l, 1);
            Section u;
            size_t start = 0;
            std::string t = rest.text;
            for (size_t i = 0; i <= t.size(); ++i) {
                if (i == t.size() || t[i] == ';') {
                    Field piece{t.substr(start, i - start), rest.column + (int)start};
                    u.push_back(fp.poly(alg, piece, l.no));
                    start = i + 1;
                }
            }
            if (u.size() != rank)
                fp.fail(DiagnosticKind::Schema, l.no, rest.column,
                        "span needs one coefficient per basis section");
            L.span.push_back(u);
        }
        m.submodule = L;
    }
    if (!fp.at_end() && fields_of(fp.peek())[0].text == "lift") {
        const SrcLine& bl = fp.next();
        LiftBlock lb;
        // target ring entries reuse the ring grammar, plus map/rho lines
        std::vector<Generator> gens;
        struct Pending { Field a, b, poly; int line; bool has_b; };
        std::vector<Field> coord_fields;
        std::vector<int> coord_lines;
        std::vector<Pending> dlines, maps, rhos;
        while (true) {
            const SrcLine& l = fp.next();
            auto f = fields_of(l);
            if (f[0].text == "end") break;
            if (f[0].text == "gen" && f.size() == 4) {
                Grade g{parse_int(fp, f[2], l.no), parse_int(fp, f[3], l.no)};
                gens.push_back({f[1].text, g});
            } else if (f[0].text == "coord" && f.size() == 2) {
                coord_fields.push_back(f[1]);
                coord_lines.push_back(l.no);
            } else if (f[0].text == "d" && f.size() >= 3) {
                dlines.push_back({f[1], {}, rest_after(l, 2), l.no, false});
            } else if (f[0].text == "map" && f.size() >= 3) {
                maps.push_back({f[1], {}, rest_after(l, 2), l.no, false});
            } else if (f[0].text == "rho" && f.size() >= 4) {
                rhos.push_back({f[1], f[2], rest_after(l, 3), l.no, true});
            } else {
                fp.fail(DiagnosticKind::Schema, l.no, f[0].column,
                        "unknown lift entry " + f[0].text);
            }
        }
        lb.target.alg = Algebra::make(field, gens);
        for (size_t k = 0; k < coord_fields.size(); ++k) {
            auto g = lb.target.alg->find(coord_fields[k].text);
            if (!g)
                fp.fail(DiagnosticKind::UnresolvedReference, coord_lines[k],
                        coord_fields[k].column,
                        "unknown generator " + coord_fields[k].text);
            lb.target.coords.push_back(*g);
        }
        bool any = false;
        Derivation d(lb.target.alg, Grade{1, 0});
        d.set_zero_images();
        for (auto& dl : dlines) {
            auto g = lb.target.alg->find(dl.a.text);
            if (!g)
                fp.fail(DiagnosticKind::UnresolvedReference, dl.line, dl.a.column,
                        "unknown generator " + dl.a.text);
            Elem img = fp.poly(lb.target.alg, dl.poly, dl.line);
            if (!img.is_zero()) any = true;
            d.set_image(*g, img);
        }
        if (any) lb.target.diff = d;
        for (auto& ml : maps) {
            auto g = alg->find(ml.a.text);
            if (!g)
                fp.fail(DiagnosticKind::UnresolvedReference, ml.line, ml.a.column,
                        "unknown generator " + ml.a.text);
            lb.images[*g] = fp.poly(lb.target.alg, ml.poly, ml.line);
        }
        std::vector<std::string> tcoord_names;
        for (size_t k : lb.target.coords)
            tcoord_names.push_back(lb.target.alg->gen(k).name);
        lb.anchor.assign(rank, VectorField(lb.target.coords.size(),
                                           Elem::zero(lb.target.alg)));
        for (auto& rl : rhos) {
            size_t a = fp.resolve(sec_names, rl.a, rl.line, "section");
            size_t k = fp.resolve(tcoord_names, rl.b, rl.line, "coordinate");
            lb.anchor[a][k] = fp.poly(lb.target.alg, rl.poly, rl.line);
        }
        for (size_t g = 0; g < alg->size(); ++g)
            if (!lb.images.count(g))
                fp.fail(DiagnosticKind::Schema, bl.no, 1,
                        "lift map misses generator " + alg->gen(g).name);
        m.lift = std::move(lb);
    }
    if (!fp.at_end()) {
        const SrcLine& l = fp.peek();
        fp.fail(DiagnosticKind::Schema, l.no, 1,
                "unexpected block " + fields_of(l)[0].text);
    }

    // semantic validation, mapped onto the diagnostic classes
    try {
        m.datum.eta.validate(m.datum.mod);
    } catch (const std::exception& e) {
        fp.fail(DiagnosticKind::PairingWitness, pairing_line, 1, e.what());
    }
    try {
        m.datum.validate();
        m.orient.validate();
    } catch (const std::exception& e) {
        fp.fail(DiagnosticKind::Schema, module_line, 1, e.what());
    }
    return m;
}

ModelFile parse_model(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ModelDiagnostic(DiagnosticKind::Schema, path, 0, 0, "cannot open file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_model_text(buf.str(), path);
}

ScalarsMap ModelFile::scalars_map() const {
    if (!lift) throw StructuralError("model has no lift block");
    ScalarsMap sm;
    sm.source = datum.base();
    sm.target = lift->target;
    sm.images = lift->images;
    sm.lifted_anchor = lift->anchor;
    return sm;
}

// ----------------------------------------------------------------- rendering

namespace {

void render_ring(std::ostream& os, const Cdga& base) {
    const Algebra& A = *base.alg;
    for (size_t g = 0; g < A.size(); ++g)
        os << "  gen " << A.gen(g).name << " " << A.gen(g).grade.degree << " "
           << A.gen(g).grade.intrinsic << "\n";
    for (size_t k : base.coords) os << "  coord " << A.gen(k).name << "\n";
    if (base.diff)
        for (size_t g = 0; g < A.size(); ++g) {
            const Elem& img = base.diff->image(g);
            if (!img.is_zero())
                os << "  d " << A.gen(g).name << " " << img.to_string() << "\n";
        }
}

} // namespace

std::string render_model(const ModelFile& m) {
    const CourantDatum& E = m.datum;
    const Algebra& A = *E.base().alg;
    auto sec = [&](size_t a) -> const std::string& { return E.mod.basis[a].name; };
    std::ostringstream os;
    os << "courant-model 1\n";
    os << "name " << m.name << "\n";
    os << "field " << field_token(A.field()) << "\n";
    os << "\nring\n";
    render_ring(os, E.mod.base);
    os << "end\n";
    os << "\nmodule\n";
    for (auto& b : E.mod.basis)
        os << "  sec " << b.name << " " << b.grade.degree << " "
           << b.grade.intrinsic << "\n";
    for (size_t a = 0; a < E.mod.dmat.size(); ++a)
        for (size_t b = 0; b < E.mod.dmat.size(); ++b)
            if (!E.mod.dmat[b][a].is_zero())
                os << "  d " << sec(a) << " " << sec(b) << " "
                   << E.mod.dmat[b][a].to_string() << "\n";
    os << "end\n";
    os << "\npairing\n";
    for (size_t a = 0; a < E.rank(); ++a)
        for (size_t b = 0; b < E.rank(); ++b)
            if (!E.eta.eta[a][b].is_zero())
                os << "  eta " << sec(a) << " " << sec(b) << " "
                   << E.eta.eta[a][b].to_string() << "\n";
    for (size_t a = 0; a < E.rank(); ++a)
        for (size_t b = 0; b < E.rank(); ++b)
            if (!E.eta.eta_inv[a][b].is_zero())
                os << "  inv " << sec(a) << " " << sec(b) << " "
                   << E.eta.eta_inv[a][b].to_string() << "\n";
    os << "end\n";
    os << "\nanchor\n";
    for (size_t a = 0; a < E.anchor.size(); ++a)
        for (size_t k = 0; k < E.anchor[a].size(); ++k)
            if (!E.anchor[a][k].is_zero())
                os << "  rho " << sec(a) << " " << A.gen(E.base().coords[k]).name
                   << " " << E.anchor[a][k].to_string() << "\n";
    os << "end\n";
    os << "\nbrackets\n";
    for (size_t a = 0; a < E.rank(); ++a)
        for (size_t b = 0; b < E.rank(); ++b)
            for (size_t c = 0; c < E.rank(); ++c)
                if (!E.structure[a][b][c].is_zero())
                    os << "  br " << sec(a) << " " << sec(b) << " " << sec(c)
                       << " " << E.structure[a][b][c].to_string() << "\n";
    os << "end\n";
    os << "\norientation\n";
    os << "  const " << to_string(m.orient.constant) << "\n";
    os << "  shift " << m.orient.shift << "\n";
    os << "end\n";
    if (m.submodule) {
        os << "\nsubmodule\n";
        for (auto& u : m.submodule->span) {
            os << "  span ";
            for (size_t a = 0; a < u.size(); ++a)
                os << (a ? " ; " : "") << u[a].to_string();
            os << "\n";
        }
        os << "end\n";
    }
    if (m.lift) {
        os << "\nlift\n";
        render_ring(os, m.lift->target);
        for (auto& [g, img] : m.lift->images)
            os << "  map " << A.gen(g).name << " " << img.to_string() << "\n";
        const Algebra& T = *m.lift->target.alg;
        for (size_t a = 0; a < m.lift->anchor.size(); ++a)
            for (size_t k = 0; k < m.lift->anchor[a].size(); ++k)
                if (!m.lift->anchor[a][k].is_zero())
                    os << "  rho " << sec(a) << " "
                       << T.gen(m.lift->target.coords[k]).name << " "
                       << m.lift->anchor[a][k].to_string() << "\n";
        os << "end\n";
    }
    return os.str();
}

// ----------------------------------------------------------------- equality

namespace {

bool algebras_equal(const Algebra& a, const Algebra& b) {
    if (a.field() != b.field() || a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i)
        if (a.gen(i).name != b.gen(i).name || a.gen(i).grade != b.gen(i).grade)
            return false;
    return true;
}

bool cdga_equal(const Cdga& a, const Cdga& b) {
    if (!algebras_equal(*a.alg, *b.alg)) return false;
    if (a.coords != b.coords) return false;
    for (size_t g = 0; g < a.alg->size(); ++g) {
        Elem ia = a.diff ? a.diff->image(g) : Elem::zero(a.alg);
        Elem ib = b.diff ? b.diff->image(g) : Elem::zero(b.alg);
        if (ia.to_string() != ib.to_string()) return false;
    }
    return true;
}

// Compares via the canonical rendering so elements of distinct (but equal)
// algebra objects can be matched.
bool elems_equal(const Elem& x, const Elem& y) {
    return x.to_string() == y.to_string();
}

bool matrix_equal(const std::vector<std::vector<Elem>>& a,
                  const std::vector<std::vector<Elem>>& b, size_t rank,
                  const AlgebraPtr& alg_a, const AlgebraPtr& alg_b) {
    auto at = [&](const std::vector<std::vector<Elem>>& m, const AlgebraPtr& alg,
                  size_t i, size_t j) {
        return m.empty() ? Elem::zero(alg) : m[i][j];
    };
    for (size_t i = 0; i < rank; ++i)
        for (size_t j = 0; j < rank; ++j)
            if (!elems_equal(at(a, alg_a, i, j), at(b, alg_b, i, j))) return false;
    return true;
}

} // namespace

bool models_equal(const ModelFile& a, const ModelFile& b) {
    const CourantDatum& A = a.datum;
    const CourantDatum& B = b.datum;
    if (a.name != b.name) return false;
    if (!cdga_equal(A.mod.base, B.mod.base)) return false;
    if (A.mod.basis.size() != B.mod.basis.size()) return false;
    size_t rank = A.mod.basis.size();
    for (size_t i = 0; i < rank; ++i)
        if (A.mod.basis[i].name != B.mod.basis[i].name ||
            A.mod.basis[i].grade != B.mod.basis[i].grade)
            return false;
    const AlgebraPtr& pa = A.base().alg;
    const AlgebraPtr& pb = B.base().alg;
    if (!matrix_equal(A.mod.dmat, B.mod.dmat, rank, pa, pb)) return false;
    if (!matrix_equal(A.eta.eta, B.eta.eta, rank, pa, pb)) return false;
    if (!matrix_equal(A.eta.eta_inv, B.eta.eta_inv, rank, pa, pb)) return false;
    for (size_t i = 0; i < rank; ++i) {
        if (A.anchor[i].size() != B.anchor[i].size()) return false;
        for (size_t k = 0; k < A.anchor[i].size(); ++k)
            if (!elems_equal(A.anchor[i][k], B.anchor[i][k])) return false;
        for (size_t j = 0; j < rank; ++j)
            for (size_t c = 0; c < rank; ++c)
                if (!elems_equal(A.structure[i][j][c], B.structure[i][j][c]))
                    return false;
    }
    if (a.orient.constant != b.orient.constant || a.orient.shift != b.orient.shift)
        return false;
    if (a.submodule.has_value() != b.submodule.has_value()) return false;
    if (a.submodule) {
        if (a.submodule->span.size() != b.submodule->span.size()) return false;
        for (size_t i = 0; i < a.submodule->span.size(); ++i)
            for (size_t c = 0; c < rank; ++c)
                if (!elems_equal(a.submodule->span[i][c], b.submodule->span[i][c]))
                    return false;
    }
    if (a.lift.has_value() != b.lift.has_value()) return false;
    if (a.lift) {
        if (!cdga_equal(a.lift->target, b.lift->target)) return false;
        if (a.lift->images.size() != b.lift->images.size()) return false;
        for (auto& [g, img] : a.lift->images) {
            auto it = b.lift->images.find(g);
            if (it == b.lift->images.end() || !elems_equal(img, it->second))
                return false;
        }
        if (a.lift->anchor.size() != b.lift->anchor.size()) return false;
        for (size_t i = 0; i < a.lift->anchor.size(); ++i)
            for (size_t k = 0; k < a.lift->anchor[i].size(); ++k)
                if (!elems_equal(a.lift->anchor[i][k], b.lift->anchor[i][k]))
                    return false;
    }
    return true;
}

} // namespace courant
