// All quantitative catalog metrics: key data, uniqueness, interoperability,
// licenses, replicas, keyword information content, completeness, freshness,
// location coverage, namespace and format distributions.
#pragma once

#include "odaudit/model.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace odaudit::metrics {

struct Ratio {
    std::uint64_t numerator = 0;
    std::uint64_t denominator = 0;
    double value() const {
        return denominator == 0 ? 0.0
                                : static_cast<double>(numerator) /
                                      static_cast<double>(denominator);
    }
};

struct Summary {
    std::size_t count = 0;
    double mean = 0, min = 0, q1 = 0, median = 0, q3 = 0, max = 0;
};

// Linear-interpolation quantiles over a copy of the input.
Summary summarize(std::vector<double> values);

// Precomputed joined view every metric reads from.
struct RegistryView {
    std::vector<model::PortalDescriptor> portals;
    model::CatalogGraph merged;
    std::vector<model::DatasetRecord> datasets;
    model::ProjectionTally tally;
    // catalog node key ("iri" or "_:label") → crawl date / source portal id
    std::map<std::string, model::Date> catalog_dates;
    std::map<std::string, std::string> catalog_portal;
    model::Date max_crawl_date;
};

RegistryView build_view(const model::LandscapeRegistry &registry,
                        const model::FormatTable &formats);

struct KeyData {
    std::uint64_t dataset_count = 0;
    std::uint64_t distribution_count = 0;
    std::uint64_t access_url_count = 0;
    std::uint64_t catalog_count = 0; // divisor used for the per-catalog means
    Ratio mean_datasets, mean_distributions, mean_access_urls;
};

// Distinct counts over the catalog→dataset→distribution→accessURL join with
// blank dataset/distribution nodes filtered out.
KeyData key_data(const RegistryView &view);

struct PropertyStats {
    std::size_t count = 0;
    double mean = 0, stddev = 0, min = 0, max = 0;
};

struct UniquenessResult {
    std::map<std::string, PropertyStats> per_property;
    PropertyStats compound;
    std::size_t duplicates_removed = 0;
    std::size_t excluded_no_properties = 0;
};

// score(tf,vf) = ln(1 + (tf - vf + 0.5)/(vf + 0.5)); the reported value is
// score(tf,vf)/score(tf,1), so a globally unique value scores 1.
double uniqueness_score(std::uint64_t t_f, std::uint64_t v_f);
double uniqueness_value(std::uint64_t t_f, std::uint64_t v_f);

UniquenessResult uniqueness(const RegistryView &view);

struct LocationTable {
    std::map<int, std::uint64_t> regions_per_level;
};
// CSV rows: level,region_count (header optional).
LocationTable parse_location_table(std::string_view content);

struct LocationCoverage {
    std::map<int, Ratio> per_level;
    std::size_t unmappable = 0;
    std::size_t missing = 0;
};
// Region code level = code length - 2 (NUTS convention).
LocationCoverage location_coverage(const std::vector<model::PortalDescriptor> &portals,
                                   const LocationTable &table);

struct Interoperability {
    Ratio open_ratio;        // portals with a machine API / all portals
    Ratio dcat_ratio;        // portals with native DCAT / all portals
    Ratio open_format_ratio; // datasets with >=1 open-format distribution / all datasets
};
Interoperability interoperability_ratios(const RegistryView &view,
                                         const std::set<std::string> &open_formats);

// Newline-separated token/IRI lists; '#' starts a comment.
std::set<std::string> parse_token_list(std::string_view content);

std::map<std::string, std::uint64_t> format_histogram(const RegistryView &view);

struct NamespaceDistribution {
    std::map<std::string, std::uint64_t> counts;
    std::uint64_t relative_iris = 0;
};
NamespaceDistribution namespace_distribution(const RegistryView &view);

struct LicenseRatios {
    Ratio license_ratio;      // distributions with any license reference
    Ratio open_license_ratio; // distributions with an open-license IRI
};
LicenseRatios license_ratios(const RegistryView &view,
                             const std::set<std::string> &open_licenses);

struct ReplicaResult {
    // Datasets carrying an access URL that occurs under at least two distinct
    // catalog nodes, over all datasets on the join chain.
    Ratio dataset_ratio;
    // Stricter variant: the URL must belong to a dataset that is itself
    // registered under two catalogs.
    Ratio same_dataset_variant;
};
ReplicaResult replica_ratio(const RegistryView &view);

struct KeywordICResult {
    std::map<std::string, std::pair<double, double>> per_dataset; // node → raw, normalized
    double mean_normalized = 0;
    Summary normalized_summary;
    std::size_t keywordless = 0;
    bool degenerate = false;
};
KeywordICResult keyword_ic(const RegistryView &view);

struct Completeness {
    Ratio mandatory;   // title and description present
    Ratio recommended; // distribution, keyword, temporal, contact, spatial, publisher
};
Completeness completeness(const RegistryView &view);

struct FreshnessSummary {
    Summary issued_months, modified_months;
    std::size_t missing_issued = 0, missing_modified = 0;
    std::size_t clamped = 0;
};
// scope_portal empty → whole registry, else only datasets of that portal.
FreshnessSummary freshness(const RegistryView &view, const std::string &scope_portal = {});

long months_between(const model::Date &from, const model::Date &to);

} // namespace odaudit::metrics
