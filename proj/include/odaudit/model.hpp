// Normalized domain model: portals, catalogs, datasets, distributions.
#pragma once

#include "odaudit/rdf.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace odaudit::model {

struct Date {
    int year = 1970;
    int month = 1;
    int day = 1;

    auto operator<=>(const Date &) const = default;

    // Accepts xsd:date and xsd:dateTime lexical forms, with or without
    // timezone designators; only the calendar date is retained.
    static std::optional<Date> parse(std::string_view lexical);
    std::string str() const;
    long days() const; // days since 1970-01-01
};

long days_between(const Date &from, const Date &to);

enum class ApiKind { none, dcat, ckan, dkan };

ApiKind api_kind_from_string(std::string_view s);
std::string_view to_string(ApiKind kind);
bool is_open_api(ApiKind kind);

struct PortalDescriptor {
    std::string id;
    std::string name;
    std::string endpoint_url;
    ApiKind api_kind = ApiKind::none;
    std::string location_code;
    std::string landscape_id;
};

struct CatalogGraph {
    std::string catalog_iri;
    rdf::Graph triples;
    std::string source_portal;
    Date crawl_date;
};

struct LandscapeRegistry {
    std::string landscape_id;
    std::vector<PortalDescriptor> portals;
    std::vector<CatalogGraph> merged_catalogs;
};

struct LicenseRef {
    bool is_iri = false;
    std::string value;
    auto operator<=>(const LicenseRef &) const = default;
};

struct DistributionRecord {
    rdf::Term node;
    std::optional<std::string> access_url;
    std::optional<std::string> format_raw;
    std::optional<std::string> format_norm;
    std::optional<LicenseRef> license_ref;
};

struct DatasetRecord {
    rdf::Term node;
    std::optional<std::string> identifier;
    std::optional<std::string> title;
    std::optional<std::string> description;
    std::vector<std::string> keywords;
    std::optional<Date> issued;
    std::optional<Date> modified;
    std::vector<std::string> themes;
    bool has_contact_point = false;
    bool has_publisher = false;
    bool has_spatial = false;
    bool has_temporal = false;
    std::vector<DistributionRecord> distributions;
    // IRIs of every catalog node that links this dataset via dcat:dataset.
    std::vector<std::string> catalogs;
};

// Free-text format strings to canonical lowercase tokens.
class FormatTable {
public:
    static FormatTable defaults();
    static FormatTable load_csv(std::string_view content);
    void add_alias(std::string alias, std::string canonical);
    std::optional<std::string> normalize(std::string_view raw) const;

private:
    std::map<std::string, std::string> aliases_;
};

struct ProjectionTally {
    std::size_t blank_datasets = 0;
    std::size_t malformed_dates = 0;
};

// One record per non-blank dataset node linked from any catalog node via
// dcat:dataset; blank dataset nodes are counted and skipped.
std::vector<DatasetRecord> project_datasets(const CatalogGraph &catalog,
                                            const FormatTable &formats,
                                            ProjectionTally *tally = nullptr);

// Pure triple-set union. Throws std::invalid_argument when two inputs from
// different portals declare the same catalog IRI.
CatalogGraph merge_catalogs(const std::vector<CatalogGraph> &catalogs);

std::string normalize_keyword(std::string_view raw);

struct PortalList {
    std::string landscape_id;
    std::vector<PortalDescriptor> portals;
};

// CSV columns: id, name, endpoint_url, api_kind, location_code, landscape_id.
// A header row is recognized and skipped. Throws std::invalid_argument on
// duplicate ids.
PortalList parse_portal_list(std::string_view content);
std::string render_portal_list(const PortalList &list);

} // namespace odaudit::model
