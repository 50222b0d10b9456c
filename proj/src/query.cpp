#include "apisynth/query.hpp"

#include <algorithm>
#include <cctype>

#include "apisynth/library.hpp"
#include "apisynth/mining.hpp"

namespace apisynth {

Query arrayified(const Query& q) {
    Query out = q;
    if (!is_array(out.output)) out.output = SemanticType::array(out.output);
    return out;
}

namespace {

struct Tok {
    enum class Kind { Word, LBrace, RBrace, LBracket, RBracket, Colon, Comma, Arrow, End };
    Kind kind;
    std::string text;
};

std::vector<Tok> lex(const std::string& text) {
    std::vector<Tok> toks;
    size_t i = 0;
    auto word_char = [](char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.';
    };
    while (i < text.size()) {
        char c = text[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
        } else if (c == '-' && i + 1 < text.size() && text[i + 1] == '>') {
            toks.push_back({Tok::Kind::Arrow, "->"});
            i += 2;
        } else if (c == '{') {
            toks.push_back({Tok::Kind::LBrace, "{"});
            ++i;
        } else if (c == '}') {
            toks.push_back({Tok::Kind::RBrace, "}"});
            ++i;
        } else if (c == '[') {
            toks.push_back({Tok::Kind::LBracket, "["});
            ++i;
        } else if (c == ']') {
            toks.push_back({Tok::Kind::RBracket, "]"});
            ++i;
        } else if (c == ':') {
            toks.push_back({Tok::Kind::Colon, ":"});
            ++i;
        } else if (c == ',') {
            toks.push_back({Tok::Kind::Comma, ","});
            ++i;
        } else if (word_char(c)) {
            size_t start = i;
            while (i < text.size() && word_char(text[i])) ++i;
            toks.push_back({Tok::Kind::Word, text.substr(start, i - start)});
        } else {
            throw QueryParseError(std::string("unexpected character '") + c +
                                  "' in query");
        }
    }
    toks.push_back({Tok::Kind::End, ""});
    return toks;
}

size_t edit_distance(const std::string& a, const std::string& b) {
    std::vector<size_t> prev(b.size() + 1), cur(b.size() + 1);
    for (size_t j = 0; j <= b.size(); ++j) prev[j] = j;
    for (size_t i = 1; i <= a.size(); ++i) {
        cur[0] = i;
        for (size_t j = 1; j <= b.size(); ++j)
            cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1,
                               prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)});
        std::swap(prev, cur);
    }
    return prev[b.size()];
}

// all primitive and object locations a query could plausibly mean
void collect_locations(const Library& lib, const Location& loc, const SyntacticType& syn,
                       std::vector<std::string>& out) {
    switch (syn.kind) {
        case SyntacticType::Kind::Prim: out.push_back(loc.render()); break;
        case SyntacticType::Kind::Object: break; // folds to the object name
        case SyntacticType::Kind::Array:
            collect_locations(lib, loc.child(Label::elem()), *syn.elem, out);
            break;
        case SyntacticType::Kind::Record:
            for (const auto& f : syn.fields)
                collect_locations(lib, loc.child(Label::field(f.label)), *f.type, out);
            break;
    }
}

std::vector<std::string> known_location_names(const Library& lib) {
    std::vector<std::string> out = lib.head_names();
    for (const auto& [name, def] : lib.objects)
        collect_locations(lib, Location{name, {}}, *def, out);
    for (const auto& [name, sig] : lib.methods) {
        collect_locations(lib, Location{name, {Label::in()}}, *sig.input, out);
        collect_locations(lib, Location{name, {Label::out()}}, *sig.output, out);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<std::string> suggestions_for(const Library& lib, const std::string& word) {
    std::vector<std::pair<size_t, std::string>> scored;
    for (const auto& name : known_location_names(lib)) {
        size_t d = edit_distance(word, name);
        if (d <= std::max<size_t>(2, word.size() / 4)) scored.emplace_back(d, name);
    }
    std::sort(scored.begin(), scored.end());
    std::vector<std::string> out;
    for (const auto& [d, name] : scored) {
        (void)d;
        out.push_back(name);
        if (out.size() == 3) break;
    }
    return out;
}

struct Parser {
    const SemanticLibrary& lib;
    std::vector<Tok> toks;
    size_t pos = 0;
    std::vector<std::string> heads;

    const Tok& peek() const { return toks[pos]; }
    Tok take() { return toks[pos++]; }

    [[noreturn]] void fail(const std::string& msg, const std::string& word = "") {
        throw QueryParseError(msg, word.empty() ? std::vector<std::string>{}
                                                : suggestions_for(lib.base, word));
    }

    void expect(Tok::Kind kind, const std::string& what) {
        if (peek().kind != kind) fail("expected " + what + " in query");
        ++pos;
    }

    SemTypePtr resolve_word(const std::string& word) {
        Location loc;
        try {
            loc = parse_location(word, heads);
        } catch (const std::exception&) {
            fail("'" + word + "' is not a location", word);
        }
        SemTypePtr t = infer_location_type(lib, loc);
        if (!t) fail("unknown location '" + word + "'", word);
        return t;
    }

    SemTypePtr parse_type() {
        if (peek().kind == Tok::Kind::LBracket) {
            ++pos;
            SemTypePtr inner = parse_type();
            expect(Tok::Kind::RBracket, "']'");
            return SemanticType::array(inner);
        }
        if (peek().kind == Tok::Kind::LBrace) {
            ++pos;
            SemTypePtr first = nullptr;
            while (true) {
                if (peek().kind != Tok::Kind::Word) fail("expected a location");
                std::string word = take().text;
                SemTypePtr t = resolve_word(word);
                if (t->kind != SemanticType::Kind::LocSet)
                    fail("'" + word + "' does not name a location set");
                if (!first) first = t;
                else if (first->key() != t->key())
                    fail("'" + word + "' is not merged with the other locations listed");
                if (peek().kind == Tok::Kind::Comma) {
                    ++pos;
                    continue;
                }
                break;
            }
            expect(Tok::Kind::RBrace, "'}'");
            return first;
        }
        if (peek().kind == Tok::Kind::Word) return resolve_word(take().text);
        fail("expected a type");
    }

    Query parse() {
        Query q;
        if (peek().kind == Tok::Kind::LBrace) {
            ++pos;
            if (peek().kind == Tok::Kind::RBrace) {
                ++pos;
            } else {
                while (true) {
                    if (peek().kind != Tok::Kind::Word) fail("expected a parameter name");
                    std::string name = take().text;
                    if (name.find('.') != std::string::npos)
                        fail("parameter name '" + name + "' may not contain dots");
                    if (q.arg(name)) fail("duplicate parameter '" + name + "'");
                    expect(Tok::Kind::Colon, "':'");
                    q.args.emplace_back(name, parse_type());
                    if (peek().kind == Tok::Kind::Comma) {
                        ++pos;
                        continue;
                    }
                    break;
                }
                expect(Tok::Kind::RBrace, "'}'");
            }
        } else if (peek().kind == Tok::Kind::Word) {
            // single-location sugar: the parameter is named after the location
            std::string word = take().text;
            SemTypePtr t = resolve_word(word);
            std::string name = word;
            std::transform(name.begin(), name.end(), name.begin(), [](unsigned char c) {
                return c == '.' ? '_' : std::tolower(c);
            });
            q.args.emplace_back(name, t);
        } else {
            fail("query must start with '{' or a location");
        }
        expect(Tok::Kind::Arrow, "'->'");
        q.output = parse_type();
        if (peek().kind != Tok::Kind::End) fail("trailing input after query type");
        return q;
    }
};

} // namespace

Query parse_query(const std::string& text, const SemanticLibrary& lib) {
    Parser parser{lib, lex(text), 0, lib.base.head_names()};
    return parser.parse();
}

} // namespace apisynth
