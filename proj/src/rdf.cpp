#include "odaudit/rdf.hpp"

#include "odaudit/text.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

namespace odaudit::rdf {

Term Term::iri(std::string v) {
    Term t;
    t.kind = TermKind::Iri;
    t.value = std::move(v);
    return t;
}

Term Term::blank(std::string label) {
    Term t;
    t.kind = TermKind::Blank;
    t.value = std::move(label);
    return t;
}

Term Term::literal(std::string lexical, std::string datatype, std::string lang) {
    Term t;
    t.kind = TermKind::Literal;
    t.value = std::move(lexical);
    t.datatype = std::move(datatype);
    t.lang = text::lower_ascii(lang);
    return t;
}

Graph normalize(Graph g) {
    std::sort(g.begin(), g.end());
    g.erase(std::unique(g.begin(), g.end()), g.end());
    return g;
}

bool is_normalized(const Graph &g) {
    for (std::size_t i = 1; i < g.size(); ++i)
        if (!(g[i - 1] < g[i]))
            return false;
    return true;
}

Graph set_union(const Graph &a, const Graph &b) {
    Graph out;
    out.reserve(a.size() + b.size());
    out.insert(out.end(), a.begin(), a.end());
    out.insert(out.end(), b.begin(), b.end());
    return normalize(std::move(out));
}

bool graph_equal(const Graph &a, const Graph &b) { return normalize(a) == normalize(b); }

namespace {

std::string term_sig(const Term &t) {
    switch (t.kind) {
    case TermKind::Iri:
        return "I" + t.value;
    case TermKind::Blank:
        return "B";
    case TermKind::Literal:
        return "L" + t.value + "\x1f" + t.datatype + "\x1f" + t.lang;
    }
    return {};
}

// Two refinement rounds over blank node neighborhood signatures, then a
// greedy matching on identical signatures.
std::map<std::string, std::vector<std::string>> blank_signatures(const Graph &g) {
    std::unordered_map<std::string, std::string> color;
    for (const auto &t : g) {
        if (t.s.is_blank())
            color.emplace(t.s.value, "b");
        if (t.o.is_blank())
            color.emplace(t.o.value, "b");
    }
    for (int round = 0; round < 3; ++round) {
        std::unordered_map<std::string, std::vector<std::string>> parts;
        for (const auto &t : g) {
            if (t.s.is_blank()) {
                std::string obj = t.o.is_blank() ? "B" + color[t.o.value] : term_sig(t.o);
                parts[t.s.value].push_back(">" + t.p.value + "\x1f" + obj);
            }
            if (t.o.is_blank()) {
                std::string subj = t.s.is_blank() ? "B" + color[t.s.value] : term_sig(t.s);
                parts[t.o.value].push_back("<" + t.p.value + "\x1f" + subj);
            }
        }
        std::unordered_map<std::string, std::string> next;
        for (auto &[label, vec] : parts) {
            std::sort(vec.begin(), vec.end());
            std::string sig;
            for (const auto &p : vec) {
                sig += p;
                sig += '\x1e';
            }
            next[label] = std::to_string(text::fnv1a64(sig));
        }
        for (auto &[label, c] : color)
            if (auto it = next.find(label); it != next.end())
                c = it->second;
    }
    std::map<std::string, std::vector<std::string>> by_sig;
    for (const auto &[label, c] : color)
        by_sig[c].push_back(label);
    for (auto &[sig, labels] : by_sig)
        std::sort(labels.begin(), labels.end());
    return by_sig;
}

Graph relabel(const Graph &g, const std::unordered_map<std::string, std::string> &map) {
    Graph out = g;
    for (auto &t : out) {
        if (t.s.is_blank())
            t.s.value = map.at(t.s.value);
        if (t.o.is_blank())
            t.o.value = map.at(t.o.value);
    }
    return normalize(std::move(out));
}

} // namespace

bool graph_equivalent(const Graph &a, const Graph &b) {
    if (a.size() != b.size() && normalize(a).size() != normalize(b).size())
        return false;
    auto sa = blank_signatures(a);
    auto sb = blank_signatures(b);
    if (sa.size() != sb.size())
        return false;
    std::unordered_map<std::string, std::string> ma, mb;
    auto ita = sa.begin();
    auto itb = sb.begin();
    int counter = 0;
    for (; ita != sa.end(); ++ita, ++itb) {
        if (ita->first != itb->first || ita->second.size() != itb->second.size())
            return false;
        for (std::size_t i = 0; i < ita->second.size(); ++i) {
            std::string canon = "c" + std::to_string(counter++);
            ma[ita->second[i]] = canon;
            mb[itb->second[i]] = canon;
        }
    }
    return relabel(a, ma) == relabel(b, mb);
}

std::string namespace_of(std::string_view iri) {
    auto pos = iri.find_last_of("#/");
    if (pos == std::string_view::npos)
        return std::string(iri);
    return std::string(iri.substr(0, pos + 1));
}

std::vector<Term> objects_of(const Graph &g, const Term &subject, std::string_view predicate) {
    std::vector<Term> out;
    for (const auto &t : g)
        if (t.s == subject && t.p.value == predicate)
            out.push_back(t.o);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace odaudit::rdf
