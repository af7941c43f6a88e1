#include "odaudit/turtle.hpp"

#include "odaudit/text.hpp"
#include "odaudit/url.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <map>
#include <optional>
#include <sstream>

namespace odaudit::turtle {

namespace {

using rdf::Graph;
using rdf::Term;
using rdf::Triple;

enum class Tok {
    Eof,
    Iri,
    Pname,
    BlankLabel,
    String,
    Integer,
    Decimal,
    Double,
    Boolean,
    LangTag,
    DoubleHat,
    Dot,
    Semicolon,
    Comma,
    LBracket,
    RBracket,
    LParen,
    RParen,
    A,
    PrefixDecl,
    BaseDecl,
    SparqlPrefix,
    SparqlBase,
};

struct Token {
    Tok kind = Tok::Eof;
    std::string value;
    std::string prefix;
    std::string local;
    std::size_t line = 1;
};

bool is_hex(char c) { return std::isxdigit(static_cast<unsigned char>(c)) != 0; }

unsigned hex_value(char c) {
    if (c >= '0' && c <= '9')
        return static_cast<unsigned>(c - '0');
    if (c >= 'a' && c <= 'f')
        return static_cast<unsigned>(c - 'a' + 10);
    return static_cast<unsigned>(c - 'A' + 10);
}

bool is_name_byte(char c) {
    unsigned char u = static_cast<unsigned char>(c);
    return std::isalnum(u) != 0 || c == '_' || c == '-' || u >= 0x80;
}

class Lexer {
public:
    Lexer(std::string_view content, bool repair_spaces, ParseStats *stats)
        : content_(content), repair_spaces_(repair_spaces), stats_(stats) {}

    Token next() {
        skip_trivia();
        Token tok;
        tok.line = line_;
        if (pos_ >= content_.size()) {
            tok.kind = Tok::Eof;
            return tok;
        }
        char c = content_[pos_];
        switch (c) {
        case '<':
            return lex_iri(tok);
        case '"':
        case '\'':
            return lex_string(tok);
        case '@':
            return lex_at(tok);
        case '^':
            if (pos_ + 1 < content_.size() && content_[pos_ + 1] == '^') {
                pos_ += 2;
                tok.kind = Tok::DoubleHat;
                return tok;
            }
            fail("unexpected '^'");
        case '.':
            if (pos_ + 1 < content_.size() &&
                std::isdigit(static_cast<unsigned char>(content_[pos_ + 1])))
                return lex_number(tok);
            ++pos_;
            tok.kind = Tok::Dot;
            return tok;
        case ';':
            ++pos_;
            tok.kind = Tok::Semicolon;
            return tok;
        case ',':
            ++pos_;
            tok.kind = Tok::Comma;
            return tok;
        case '[':
            ++pos_;
            tok.kind = Tok::LBracket;
            return tok;
        case ']':
            ++pos_;
            tok.kind = Tok::RBracket;
            return tok;
        case '(':
            ++pos_;
            tok.kind = Tok::LParen;
            return tok;
        case ')':
            ++pos_;
            tok.kind = Tok::RParen;
            return tok;
        case '_':
            if (pos_ + 1 < content_.size() && content_[pos_ + 1] == ':')
                return lex_blank(tok);
            return lex_name(tok);
        case '+':
        case '-':
            return lex_number(tok);
        default:
            if (std::isdigit(static_cast<unsigned char>(c)))
                return lex_number(tok);
            return lex_name(tok);
        }
    }

    std::size_t line() const { return line_; }

private:
    [[noreturn]] void fail(const std::string &message) const { throw TurtleError(line_, message); }

    void skip_trivia() {
        while (pos_ < content_.size()) {
            char c = content_[pos_];
            if (c == '\n') {
                ++line_;
                ++pos_;
            } else if (c == ' ' || c == '\t' || c == '\r') {
                ++pos_;
            } else if (c == '#') {
                while (pos_ < content_.size() && content_[pos_] != '\n')
                    ++pos_;
            } else {
                break;
            }
        }
    }

    void append_escape(std::string &out, bool iri_context) {
        // pos_ is at the backslash
        ++pos_;
        if (pos_ >= content_.size())
            fail("dangling escape");
        char c = content_[pos_++];
        if (c == 'u' || c == 'U') {
            int count = c == 'u' ? 4 : 8;
            std::uint32_t cp = 0;
            for (int i = 0; i < count; ++i) {
                if (pos_ >= content_.size() || !is_hex(content_[pos_]))
                    fail("bad unicode escape");
                cp = cp * 16 + hex_value(content_[pos_++]);
            }
            text::append_utf8(out, cp);
            return;
        }
        if (iri_context)
            fail("invalid escape in IRI");
        switch (c) {
        case 't': out.push_back('\t'); break;
        case 'b': out.push_back('\b'); break;
        case 'n': out.push_back('\n'); break;
        case 'r': out.push_back('\r'); break;
        case 'f': out.push_back('\f'); break;
        case '"': out.push_back('"'); break;
        case '\'': out.push_back('\''); break;
        case '\\': out.push_back('\\'); break;
        default: fail("invalid string escape");
        }
    }

    Token lex_iri(Token tok) {
        ++pos_; // <
        bool repaired = false;
        while (pos_ < content_.size()) {
            char c = content_[pos_];
            if (c == '>') {
                ++pos_;
                tok.kind = Tok::Iri;
                if (repaired && stats_)
                    ++stats_->repaired_iris;
                return tok;
            }
            if (c == '\n')
                fail("newline inside IRI");
            if (c == '\\') {
                append_escape(tok.value, true);
                continue;
            }
            if (c == ' ') {
                if (!repair_spaces_)
                    fail("space inside IRI");
                tok.value += "%20";
                repaired = true;
                ++pos_;
                continue;
            }
            if (c == '<' || c == '"' || c == '{' || c == '}' || c == '|' || c == '^' ||
                c == '`')
                fail("invalid character inside IRI");
            tok.value.push_back(c);
            ++pos_;
        }
        fail("unterminated IRI");
    }

    Token lex_string(Token tok) {
        char quote = content_[pos_];
        bool long_form = content_.compare(pos_, 3, std::string(3, quote)) == 0;
        pos_ += long_form ? 3 : 1;
        while (pos_ < content_.size()) {
            char c = content_[pos_];
            if (c == '\\') {
                append_escape(tok.value, false);
                continue;
            }
            if (c == quote) {
                if (!long_form) {
                    ++pos_;
                    tok.kind = Tok::String;
                    return tok;
                }
                if (content_.compare(pos_, 3, std::string(3, quote)) == 0) {
                    pos_ += 3;
                    tok.kind = Tok::String;
                    return tok;
                }
                tok.value.push_back(c);
                ++pos_;
                continue;
            }
            if (c == '\n') {
                if (!long_form)
                    fail("newline inside string");
                ++line_;
            }
            tok.value.push_back(c);
            ++pos_;
        }
        fail("unterminated string");
    }

    Token lex_at(Token tok) {
        ++pos_; // @
        std::string word;
        while (pos_ < content_.size() &&
               std::isalpha(static_cast<unsigned char>(content_[pos_])))
            word.push_back(content_[pos_++]);
        if (word == "prefix") {
            tok.kind = Tok::PrefixDecl;
            return tok;
        }
        if (word == "base") {
            tok.kind = Tok::BaseDecl;
            return tok;
        }
        if (word.empty())
            fail("bare '@'");
        tok.value = word;
        while (pos_ + 1 < content_.size() && content_[pos_] == '-' &&
               std::isalnum(static_cast<unsigned char>(content_[pos_ + 1]))) {
            tok.value.push_back('-');
            ++pos_;
            while (pos_ < content_.size() &&
                   std::isalnum(static_cast<unsigned char>(content_[pos_])))
                tok.value.push_back(content_[pos_++]);
        }
        tok.kind = Tok::LangTag;
        return tok;
    }

    Token lex_blank(Token tok) {
        pos_ += 2; // _:
        while (pos_ < content_.size() &&
               (is_name_byte(content_[pos_]) || content_[pos_] == '.'))
            tok.value.push_back(content_[pos_++]);
        while (!tok.value.empty() && tok.value.back() == '.') {
            tok.value.pop_back();
            --pos_;
        }
        if (tok.value.empty())
            fail("empty blank node label");
        tok.kind = Tok::BlankLabel;
        return tok;
    }

    Token lex_number(Token tok) {
        std::size_t start = pos_;
        if (content_[pos_] == '+' || content_[pos_] == '-')
            ++pos_;
        bool digits = false;
        while (pos_ < content_.size() && std::isdigit(static_cast<unsigned char>(content_[pos_]))) {
            ++pos_;
            digits = true;
        }
        bool decimal = false;
        if (pos_ + 1 < content_.size() && content_[pos_] == '.' &&
            std::isdigit(static_cast<unsigned char>(content_[pos_ + 1]))) {
            decimal = true;
            ++pos_;
            while (pos_ < content_.size() &&
                   std::isdigit(static_cast<unsigned char>(content_[pos_])))
                ++pos_;
            digits = true;
        }
        bool exponent = false;
        if (digits && pos_ < content_.size() &&
            (content_[pos_] == 'e' || content_[pos_] == 'E')) {
            std::size_t save = pos_;
            ++pos_;
            if (pos_ < content_.size() && (content_[pos_] == '+' || content_[pos_] == '-'))
                ++pos_;
            if (pos_ < content_.size() && std::isdigit(static_cast<unsigned char>(content_[pos_]))) {
                exponent = true;
                while (pos_ < content_.size() &&
                       std::isdigit(static_cast<unsigned char>(content_[pos_])))
                    ++pos_;
            } else {
                pos_ = save;
            }
        }
        if (!digits)
            fail("malformed number");
        tok.value = std::string(content_.substr(start, pos_ - start));
        tok.kind = exponent ? Tok::Double : decimal ? Tok::Decimal : Tok::Integer;
        return tok;
    }

    Token lex_name(Token tok) {
        std::size_t start = pos_;
        while (pos_ < content_.size() && is_name_byte(content_[pos_]) && content_[pos_] != ':')
            ++pos_;
        std::string word(content_.substr(start, pos_ - start));
        if (pos_ < content_.size() && content_[pos_] == ':') {
            ++pos_;
            tok.prefix = word;
            lex_local(tok);
            tok.kind = Tok::Pname;
            return tok;
        }
        if (word == "a") {
            tok.kind = Tok::A;
            return tok;
        }
        if (word == "true" || word == "false") {
            tok.kind = Tok::Boolean;
            tok.value = word;
            return tok;
        }
        if (text::lower_ascii(word) == "prefix") {
            tok.kind = Tok::SparqlPrefix;
            return tok;
        }
        if (text::lower_ascii(word) == "base") {
            tok.kind = Tok::SparqlBase;
            return tok;
        }
        if (word.empty())
            fail("unexpected character");
        fail("unexpected token '" + word + "'");
    }

    void lex_local(Token &tok) {
        static constexpr std::string_view escapable = "_~.!$&'()*+,;=/?#@%-";
        while (pos_ < content_.size()) {
            char c = content_[pos_];
            if (c == '\\') {
                ++pos_;
                if (pos_ >= content_.size() ||
                    escapable.find(content_[pos_]) == std::string_view::npos)
                    fail("invalid local name escape");
                tok.local.push_back(content_[pos_++]);
                continue;
            }
            if (c == '%') {
                if (pos_ + 2 >= content_.size() || !is_hex(content_[pos_ + 1]) ||
                    !is_hex(content_[pos_ + 2]))
                    fail("invalid percent escape in name");
                tok.local.append(content_.substr(pos_, 3));
                pos_ += 3;
                continue;
            }
            if (is_name_byte(c) || c == ':' || c == '.') {
                tok.local.push_back(c);
                ++pos_;
                continue;
            }
            break;
        }
        while (!tok.local.empty() && tok.local.back() == '.') {
            tok.local.pop_back();
            --pos_;
        }
    }

    std::string_view content_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    bool repair_spaces_ = false;
    ParseStats *stats_ = nullptr;
};

class Parser {
public:
    Parser(std::string_view content, const ParseOptions &options, ParseStats *stats)
        : lexer_(content, options.repair_iri_spaces, stats) {
        if (!options.base.empty())
            base_ = url::parse(options.base);
        advance();
    }

    Graph run() {
        while (cur_.kind != Tok::Eof)
            statement();
        return rdf::normalize(std::move(out_));
    }

private:
    [[noreturn]] void fail(const std::string &message) const {
        throw TurtleError(cur_.line, message);
    }

    void advance() { cur_ = lexer_.next(); }

    void expect(Tok kind, const char *what) {
        if (cur_.kind != kind)
            fail(std::string("expected ") + what);
        advance();
    }

    void statement() {
        switch (cur_.kind) {
        case Tok::PrefixDecl:
            advance();
            prefix_decl();
            expect(Tok::Dot, "'.' after @prefix");
            return;
        case Tok::BaseDecl:
            advance();
            base_decl();
            expect(Tok::Dot, "'.' after @base");
            return;
        case Tok::SparqlPrefix:
            advance();
            prefix_decl();
            return;
        case Tok::SparqlBase:
            advance();
            base_decl();
            return;
        default:
            break;
        }
        Term subject = parse_subject();
        if (subject.is_blank() && cur_.kind == Tok::Dot && last_was_property_list_) {
            advance();
            return;
        }
        predicate_object_list(subject);
        expect(Tok::Dot, "'.' after statement");
    }

    void prefix_decl() {
        if (cur_.kind != Tok::Pname || !cur_.local.empty())
            fail("expected prefix name");
        std::string name = cur_.prefix;
        advance();
        if (cur_.kind != Tok::Iri)
            fail("expected IRI in prefix declaration");
        prefixes_[name] = resolve_iri(cur_.value);
        advance();
    }

    void base_decl() {
        if (cur_.kind != Tok::Iri)
            fail("expected IRI in base declaration");
        std::string resolved = resolve_iri(cur_.value);
        base_ = url::parse(resolved);
        advance();
    }

    std::string resolve_iri(const std::string &value) {
        auto parsed = url::parse(value);
        if (parsed && !parsed->scheme.empty())
            return value;
        if (base_) {
            auto resolved = url::resolve(*base_, value);
            if (resolved)
                return resolved->str();
        }
        return value;
    }

    std::string expand_pname(const Token &tok) {
        auto it = prefixes_.find(tok.prefix);
        if (it == prefixes_.end())
            throw TurtleError(tok.line, "undefined prefix '" + tok.prefix + ":'");
        return it->second + tok.local;
    }

    Term fresh_blank() { return Term::blank("genid" + std::to_string(++genid_)); }

    Term parse_subject() {
        last_was_property_list_ = false;
        switch (cur_.kind) {
        case Tok::Iri: {
            Term t = Term::iri(resolve_iri(cur_.value));
            advance();
            return t;
        }
        case Tok::Pname: {
            Term t = Term::iri(expand_pname(cur_));
            advance();
            return t;
        }
        case Tok::BlankLabel: {
            Term t = Term::blank(cur_.value);
            advance();
            return t;
        }
        case Tok::LBracket: {
            Term t = blank_property_list();
            last_was_property_list_ = true;
            return t;
        }
        case Tok::LParen:
            return collection();
        default:
            fail("expected subject");
        }
    }

    Term parse_verb() {
        if (cur_.kind == Tok::A) {
            advance();
            return Term::iri(std::string(rdf::vocab::rdf_type));
        }
        if (cur_.kind == Tok::Iri) {
            Term t = Term::iri(resolve_iri(cur_.value));
            advance();
            return t;
        }
        if (cur_.kind == Tok::Pname) {
            Term t = Term::iri(expand_pname(cur_));
            advance();
            return t;
        }
        fail("expected predicate");
    }

    void predicate_object_list(const Term &subject) {
        while (true) {
            Term verb = parse_verb();
            object_list(subject, verb);
            if (cur_.kind != Tok::Semicolon)
                return;
            while (cur_.kind == Tok::Semicolon)
                advance();
            if (cur_.kind == Tok::Dot || cur_.kind == Tok::RBracket)
                return;
        }
    }

    void object_list(const Term &subject, const Term &verb) {
        while (true) {
            Term object = parse_object();
            out_.push_back({subject, verb, object});
            if (cur_.kind != Tok::Comma)
                return;
            advance();
        }
    }

    Term parse_object() {
        switch (cur_.kind) {
        case Tok::Iri: {
            Term t = Term::iri(resolve_iri(cur_.value));
            advance();
            return t;
        }
        case Tok::Pname: {
            Term t = Term::iri(expand_pname(cur_));
            advance();
            return t;
        }
        case Tok::BlankLabel: {
            Term t = Term::blank(cur_.value);
            advance();
            return t;
        }
        case Tok::LBracket:
            return blank_property_list();
        case Tok::LParen:
            return collection();
        case Tok::String:
            return string_literal();
        case Tok::Integer: {
            Term t = Term::literal(cur_.value, std::string(rdf::vocab::xsd_integer));
            advance();
            return t;
        }
        case Tok::Decimal: {
            Term t = Term::literal(cur_.value, std::string(rdf::vocab::xsd_decimal));
            advance();
            return t;
        }
        case Tok::Double: {
            Term t = Term::literal(cur_.value, std::string(rdf::vocab::xsd_double));
            advance();
            return t;
        }
        case Tok::Boolean: {
            Term t = Term::literal(cur_.value, std::string(rdf::vocab::xsd_boolean));
            advance();
            return t;
        }
        default:
            fail("expected object");
        }
    }

    Term string_literal() {
        std::string lexical = cur_.value;
        advance();
        if (cur_.kind == Tok::LangTag) {
            Term t = Term::literal(std::move(lexical), {}, cur_.value);
            advance();
            return t;
        }
        if (cur_.kind == Tok::DoubleHat) {
            advance();
            std::string datatype;
            if (cur_.kind == Tok::Iri)
                datatype = resolve_iri(cur_.value);
            else if (cur_.kind == Tok::Pname)
                datatype = expand_pname(cur_);
            else
                fail("expected datatype IRI");
            advance();
            if (datatype == rdf::vocab::xsd_string)
                datatype.clear();
            return Term::literal(std::move(lexical), std::move(datatype));
        }
        return Term::literal(std::move(lexical));
    }

    Term blank_property_list() {
        advance(); // [
        Term node = fresh_blank();
        if (cur_.kind == Tok::RBracket) {
            advance();
            return node;
        }
        predicate_object_list(node);
        expect(Tok::RBracket, "']'");
        return node;
    }

    Term collection() {
        advance(); // (
        std::vector<Term> items;
        while (cur_.kind != Tok::RParen) {
            if (cur_.kind == Tok::Eof)
                fail("unterminated collection");
            items.push_back(parse_object());
        }
        advance(); // )
        Term tail = Term::iri(std::string(rdf::vocab::rdf_nil));
        for (auto it = items.rbegin(); it != items.rend(); ++it) {
            Term node = fresh_blank();
            out_.push_back({node, Term::iri(std::string(rdf::vocab::rdf_first)), *it});
            out_.push_back({node, Term::iri(std::string(rdf::vocab::rdf_rest)), tail});
            tail = node;
        }
        return tail;
    }

    Lexer lexer_;
    Token cur_;
    std::map<std::string, std::string> prefixes_;
    std::optional<url::Url> base_;
    Graph out_;
    std::size_t genid_ = 0;
    bool last_was_property_list_ = false;
};

} // namespace

rdf::Graph parse(std::string_view content, const ParseOptions &options, ParseStats *stats) {
    Parser parser(content, options, stats);
    return parser.run();
}

RepairResult parse_with_repair(std::string content, const std::string &base) {
    RepairResult result;
    ParseOptions options;
    options.base = base;
    options.repair_iri_spaces = true;

    std::vector<std::size_t> line_starts;
    auto index_lines = [&] {
        line_starts.clear();
        line_starts.push_back(0);
        for (std::size_t i = 0; i < content.size(); ++i)
            if (content[i] == '\n')
                line_starts.push_back(i + 1);
    };

    std::size_t line_count = 1 + static_cast<std::size_t>(
        std::count(content.begin(), content.end(), '\n'));
    for (std::size_t attempt = 0; attempt <= line_count; ++attempt) {
        ParseStats stats;
        try {
            result.graph = parse(content, options, &stats);
            result.repaired_iris = stats.repaired_iris;
            return result;
        } catch (const TurtleError &e) {
            index_lines();
            std::size_t idx = e.line == 0 ? 0 : e.line - 1;
            if (idx >= line_starts.size())
                idx = line_starts.size() - 1;
            std::size_t begin = line_starts[idx];
            std::size_t end = idx + 1 < line_starts.size() ? line_starts[idx + 1] - 1
                                                           : content.size();
            bool blank = true;
            for (std::size_t i = begin; i < end; ++i)
                if (content[i] != ' ' && content[i] != '\t' && content[i] != '\r')
                    blank = false;
            if (blank) {
                result.graph.clear();
                result.messages.push_back("line " + std::to_string(e.line) + ": " + e.what() +
                                          " (unrecoverable)");
                return result;
            }
            for (std::size_t i = begin; i < end; ++i)
                content[i] = ' ';
            ++result.removed_lines;
            result.messages.push_back("line " + std::to_string(e.line) + ": " + e.what());
        }
    }
    result.graph.clear();
    return result;
}

namespace {

constexpr std::array<std::pair<std::string_view, std::string_view>, 8> kPrefixTable{{
    {"http://www.w3.org/1999/02/22-rdf-syntax-ns#", "rdf"},
    {"http://www.w3.org/2000/01/rdf-schema#", "rdfs"},
    {"http://www.w3.org/2001/XMLSchema#", "xsd"},
    {"http://www.w3.org/ns/dcat#", "dcat"},
    {"http://purl.org/dc/terms/", "dct"},
    {"http://xmlns.com/foaf/0.1/", "foaf"},
    {"http://www.w3.org/2006/vcard/ns#", "vcard"},
    {"http://www.w3.org/2004/02/skos/core#", "skos"},
}};

void append_escaped_literal(std::string &out, std::string_view lexical) {
    out.push_back('"');
    for (char c : lexical) {
        switch (c) {
        case '\\': out += "\\\\"; break;
        case '"': out += "\\\""; break;
        case '\n': out += "\\n"; break;
        case '\r': out += "\\r"; break;
        case '\t': out += "\\t"; break;
        default: out.push_back(c); break;
        }
    }
    out.push_back('"');
}

void append_iri_ref(std::string &out, std::string_view iri) {
    out.push_back('<');
    for (char c : iri) {
        if (c == ' ')
            out += "%20";
        else if (c == '>' || c == '<' || c == '"' || c == '\\' || c == '\n')
            out += "%" + std::string{"0123456789ABCDEF"[(c >> 4) & 0xF]} +
                   std::string{"0123456789ABCDEF"[c & 0xF]};
        else
            out.push_back(c);
    }
    out.push_back('>');
}

std::string turtle_iri(const std::string &iri, bool &used_prefix,
                       std::array<bool, kPrefixTable.size()> &seen) {
    for (std::size_t i = 0; i < kPrefixTable.size(); ++i) {
        const auto &[ns, name] = kPrefixTable[i];
        if (iri.size() > ns.size() && iri.compare(0, ns.size(), ns) == 0) {
            std::string local = iri.substr(ns.size());
            bool simple = !local.empty() && local.back() != '.';
            for (char c : local)
                if (!is_name_byte(c) && c != '.')
                    simple = false;
            if (simple) {
                used_prefix = true;
                seen[i] = true;
                return std::string(name) + ":" + local;
            }
        }
    }
    std::string out;
    append_iri_ref(out, iri);
    return out;
}

std::string turtle_term(const Term &t, std::array<bool, kPrefixTable.size()> &seen) {
    bool unused = false;
    switch (t.kind) {
    case rdf::TermKind::Iri:
        return turtle_iri(t.value, unused, seen);
    case rdf::TermKind::Blank:
        return "_:" + t.value;
    case rdf::TermKind::Literal: {
        std::string out;
        append_escaped_literal(out, t.value);
        if (!t.lang.empty()) {
            out.push_back('@');
            out += t.lang;
        } else if (!t.datatype.empty()) {
            out += "^^";
            out += turtle_iri(t.datatype, unused, seen);
        }
        return out;
    }
    }
    return {};
}

std::string ntriples_term(const Term &t) {
    std::string out;
    switch (t.kind) {
    case rdf::TermKind::Iri:
        append_iri_ref(out, t.value);
        return out;
    case rdf::TermKind::Blank:
        return "_:" + t.value;
    case rdf::TermKind::Literal:
        append_escaped_literal(out, t.value);
        if (!t.lang.empty()) {
            out.push_back('@');
            out += t.lang;
        } else if (!t.datatype.empty()) {
            out += "^^";
            append_iri_ref(out, t.datatype);
        }
        return out;
    }
    return {};
}

} // namespace

std::string to_turtle(const rdf::Graph &g) {
    Graph sorted = rdf::normalize(g);
    std::array<bool, kPrefixTable.size()> seen{};
    std::string body;
    for (std::size_t i = 0; i < sorted.size();) {
        const Term &subject = sorted[i].s;
        body += turtle_term(subject, seen);
        std::size_t j = i;
        while (j < sorted.size() && sorted[j].s == subject) {
            const Term &predicate = sorted[j].p;
            body += j == i ? " " : " ;\n    ";
            if (predicate.value == rdf::vocab::rdf_type)
                body += "a";
            else
                body += turtle_term(predicate, seen);
            std::size_t k = j;
            while (k < sorted.size() && sorted[k].s == subject && sorted[k].p == predicate) {
                body += k == j ? " " : ", ";
                body += turtle_term(sorted[k].o, seen);
                ++k;
            }
            j = k;
        }
        body += " .\n";
        i = j;
    }
    std::string header;
    for (std::size_t i = 0; i < kPrefixTable.size(); ++i)
        if (seen[i]) {
            header += "@prefix ";
            header += kPrefixTable[i].second;
            header += ": <";
            header += kPrefixTable[i].first;
            header += "> .\n";
        }
    if (!header.empty())
        header += "\n";
    return header + body;
}

std::string to_ntriples(const rdf::Graph &g) {
    Graph sorted = rdf::normalize(g);
    std::string out;
    for (const auto &t : sorted) {
        out += ntriples_term(t.s);
        out.push_back(' ');
        out += ntriples_term(t.p);
        out.push_back(' ');
        out += ntriples_term(t.o);
        out += " .\n";
    }
    return out;
}

} // namespace odaudit::turtle
