// RDF terms, triples and graph-level operations.
#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace odaudit::rdf {

enum class TermKind : std::uint8_t { Iri, Blank, Literal };

struct Term {
    TermKind kind = TermKind::Iri;
    std::string value;    // IRI string, blank label, or literal lexical form
    std::string datatype; // literal datatype IRI, empty for plain/lang literals
    std::string lang;     // language tag, lowercased

    auto operator<=>(const Term &) const = default;

    static Term iri(std::string v);
    static Term blank(std::string label);
    static Term literal(std::string lexical, std::string datatype = {}, std::string lang = {});

    bool is_iri() const { return kind == TermKind::Iri; }
    bool is_blank() const { return kind == TermKind::Blank; }
    bool is_literal() const { return kind == TermKind::Literal; }
};

struct Triple {
    Term s, p, o;
    auto operator<=>(const Triple &) const = default;
};

using Graph = std::vector<Triple>;

namespace vocab {
inline constexpr std::string_view rdf_type = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";
inline constexpr std::string_view rdf_first = "http://www.w3.org/1999/02/22-rdf-syntax-ns#first";
inline constexpr std::string_view rdf_rest = "http://www.w3.org/1999/02/22-rdf-syntax-ns#rest";
inline constexpr std::string_view rdf_nil = "http://www.w3.org/1999/02/22-rdf-syntax-ns#nil";
inline constexpr std::string_view xsd_string = "http://www.w3.org/2001/XMLSchema#string";
inline constexpr std::string_view xsd_integer = "http://www.w3.org/2001/XMLSchema#integer";
inline constexpr std::string_view xsd_decimal = "http://www.w3.org/2001/XMLSchema#decimal";
inline constexpr std::string_view xsd_double = "http://www.w3.org/2001/XMLSchema#double";
inline constexpr std::string_view xsd_boolean = "http://www.w3.org/2001/XMLSchema#boolean";
inline constexpr std::string_view xsd_date = "http://www.w3.org/2001/XMLSchema#date";
inline constexpr std::string_view xsd_date_time = "http://www.w3.org/2001/XMLSchema#dateTime";
inline constexpr std::string_view rdf_lang_string =
    "http://www.w3.org/1999/02/22-rdf-syntax-ns#langString";

inline constexpr std::string_view dcat = "http://www.w3.org/ns/dcat#";
inline constexpr std::string_view dct = "http://purl.org/dc/terms/";
inline constexpr std::string_view foaf = "http://xmlns.com/foaf/0.1/";
inline constexpr std::string_view vcard = "http://www.w3.org/2006/vcard/ns#";

inline constexpr std::string_view dcat_catalog = "http://www.w3.org/ns/dcat#Catalog";
inline constexpr std::string_view dcat_dataset_cls = "http://www.w3.org/ns/dcat#Dataset";
inline constexpr std::string_view dcat_distribution_cls =
    "http://www.w3.org/ns/dcat#Distribution";
inline constexpr std::string_view dcat_dataset = "http://www.w3.org/ns/dcat#dataset";
inline constexpr std::string_view dcat_distribution = "http://www.w3.org/ns/dcat#distribution";
inline constexpr std::string_view dcat_access_url = "http://www.w3.org/ns/dcat#accessURL";
inline constexpr std::string_view dcat_download_url = "http://www.w3.org/ns/dcat#downloadURL";
inline constexpr std::string_view dcat_keyword = "http://www.w3.org/ns/dcat#keyword";
inline constexpr std::string_view dcat_contact_point = "http://www.w3.org/ns/dcat#contactPoint";
inline constexpr std::string_view dcat_media_type = "http://www.w3.org/ns/dcat#mediaType";

inline constexpr std::string_view dct_title = "http://purl.org/dc/terms/title";
inline constexpr std::string_view dct_description = "http://purl.org/dc/terms/description";
inline constexpr std::string_view dct_identifier = "http://purl.org/dc/terms/identifier";
inline constexpr std::string_view dct_issued = "http://purl.org/dc/terms/issued";
inline constexpr std::string_view dct_modified = "http://purl.org/dc/terms/modified";
inline constexpr std::string_view dct_publisher = "http://purl.org/dc/terms/publisher";
inline constexpr std::string_view dct_spatial = "http://purl.org/dc/terms/spatial";
inline constexpr std::string_view dct_temporal = "http://purl.org/dc/terms/temporal";
inline constexpr std::string_view dct_license = "http://purl.org/dc/terms/license";
inline constexpr std::string_view dct_format = "http://purl.org/dc/terms/format";

inline constexpr std::string_view foaf_name = "http://xmlns.com/foaf/0.1/name";
inline constexpr std::string_view vcard_fn = "http://www.w3.org/2006/vcard/ns#fn";
inline constexpr std::string_view vcard_has_email = "http://www.w3.org/2006/vcard/ns#hasEmail";
inline constexpr std::string_view vcard_kind = "http://www.w3.org/2006/vcard/ns#Kind";
} // namespace vocab

// Sorted, deduplicated copy.
Graph normalize(Graph g);
bool is_normalized(const Graph &g);

Graph set_union(const Graph &a, const Graph &b);

// Exact equality on normalized triple sets; blank labels compare literally.
bool graph_equal(const Graph &a, const Graph &b);

// Equality up to consistent blank node relabeling. Uses iterative signature
// refinement, sufficient for the tree-shaped catalog graphs handled here.
bool graph_equivalent(const Graph &a, const Graph &b);

// The namespace prefix of an IRI: everything up to and including the last
// '#' or '/', or the whole IRI when neither occurs.
std::string namespace_of(std::string_view iri);

// Objects of (subject, predicate) pairs, in normalized order.
std::vector<Term> objects_of(const Graph &g, const Term &subject, std::string_view predicate);

} // namespace odaudit::rdf
