#include "odaudit/metrics.hpp"

#include "odaudit/csv.hpp"
#include "odaudit/text.hpp"
#include "odaudit/url.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <map>
#include <set>
#include <tuple>

namespace odaudit::metrics {

Summary summarize(std::vector<double> values) {
    Summary s;
    if (values.empty())
        return s;
    std::sort(values.begin(), values.end());
    s.count = values.size();
    double total = 0;
    for (double v : values)
        total += v;
    s.mean = total / static_cast<double>(values.size());
    s.min = values.front();
    s.max = values.back();
    auto quantile = [&](double p) {
        double h = p * static_cast<double>(values.size() - 1);
        std::size_t lo = static_cast<std::size_t>(h);
        double frac = h - static_cast<double>(lo);
        if (lo + 1 >= values.size())
            return values[lo];
        return values[lo] + frac * (values[lo + 1] - values[lo]);
    };
    s.q1 = quantile(0.25);
    s.median = quantile(0.5);
    s.q3 = quantile(0.75);
    return s;
}

RegistryView build_view(const model::LandscapeRegistry &registry,
                        const model::FormatTable &formats) {
    RegistryView view;
    view.portals = registry.portals;
    view.merged = model::merge_catalogs(registry.merged_catalogs);
    view.datasets = model::project_datasets(view.merged, formats, &view.tally);

    bool first = true;
    for (const auto &catalog : registry.merged_catalogs) {
        if (first || view.max_crawl_date < catalog.crawl_date)
            view.max_crawl_date = catalog.crawl_date;
        first = false;
        for (const auto &t : catalog.triples) {
            if (t.p.value != rdf::vocab::dcat_dataset || t.s.is_literal())
                continue;
            std::string key = t.s.is_blank() ? "_:" + t.s.value : t.s.value;
            auto it = view.catalog_dates.find(key);
            if (it == view.catalog_dates.end() || it->second < catalog.crawl_date)
                view.catalog_dates[key] = catalog.crawl_date;
            view.catalog_portal.emplace(std::move(key), catalog.source_portal);
        }
    }
    return view;
}

namespace {

// The SPARQL-shaped join: datasets linked from a catalog, IRI distribution
// nodes, and the access URL terms below them.
struct JoinChain {
    // dataset node value → set of url terms (only via non-blank distributions)
    std::map<std::string, std::set<rdf::Term>> dataset_urls;
    std::map<std::string, std::set<std::string>> dataset_catalogs;
    std::set<rdf::Term> chained_distributions;
    std::set<rdf::Term> chained_urls;
    std::uint64_t catalog_count = 0;
};

JoinChain build_chain(const RegistryView &view) {
    JoinChain chain;
    std::map<std::string, std::set<std::string>> linked; // dataset iri → catalog keys
    std::map<std::string, std::vector<const rdf::Term *>> distributions; // ds iri → dist
    std::map<std::string, std::vector<const rdf::Term *>> urls;          // dist iri → url
    std::set<std::string> catalog_nodes;

    for (const auto &t : view.merged.triples) {
        if (t.p.value == rdf::vocab::dcat_dataset && !t.s.is_literal()) {
            catalog_nodes.insert(t.s.is_blank() ? "_:" + t.s.value : t.s.value);
            if (t.o.is_iri())
                linked[t.o.value].insert(t.s.is_blank() ? "_:" + t.s.value : t.s.value);
        } else if (t.p.value == rdf::vocab::dcat_distribution && t.s.is_iri() &&
                   t.o.is_iri()) {
            distributions[t.s.value].push_back(&t.o);
        } else if (t.p.value == rdf::vocab::dcat_access_url && t.s.is_iri()) {
            urls[t.s.value].push_back(&t.o);
        }
    }
    chain.catalog_count = catalog_nodes.size();

    for (const auto &[ds, cats] : linked) {
        auto dist_it = distributions.find(ds);
        if (dist_it == distributions.end())
            continue;
        std::set<rdf::Term> ds_urls;
        for (const auto *dist : dist_it->second) {
            auto url_it = urls.find(dist->value);
            if (url_it == urls.end() || url_it->second.empty())
                continue;
            chain.chained_distributions.insert(*dist);
            for (const auto *u : url_it->second) {
                ds_urls.insert(*u);
                chain.chained_urls.insert(*u);
            }
        }
        if (!ds_urls.empty()) {
            chain.dataset_urls.emplace(ds, std::move(ds_urls));
            chain.dataset_catalogs.emplace(ds, cats);
        }
    }
    return chain;
}

bool present(const std::optional<std::string> &value) { return value && !value->empty(); }

} // namespace

KeyData key_data(const RegistryView &view) {
    JoinChain chain = build_chain(view);
    KeyData k;
    k.dataset_count = chain.dataset_urls.size();
    k.distribution_count = chain.chained_distributions.size();
    k.access_url_count = chain.chained_urls.size();
    k.catalog_count = chain.catalog_count;
    k.mean_datasets = {k.dataset_count, k.catalog_count};
    k.mean_distributions = {k.distribution_count, k.catalog_count};
    k.mean_access_urls = {k.access_url_count, k.catalog_count};
    return k;
}

double uniqueness_score(std::uint64_t t_f, std::uint64_t v_f) {
    double tf = static_cast<double>(t_f);
    double vf = static_cast<double>(v_f);
    return std::log(1.0 + (tf - vf + 0.5) / (vf + 0.5));
}

double uniqueness_value(std::uint64_t t_f, std::uint64_t v_f) {
    return uniqueness_score(t_f, v_f) / uniqueness_score(t_f, 1);
}

namespace {

PropertyStats stats_of(const std::vector<double> &values) {
    PropertyStats s;
    if (values.empty())
        return s;
    s.count = values.size();
    double total = 0;
    s.min = values.front();
    s.max = values.front();
    for (double v : values) {
        total += v;
        s.min = std::min(s.min, v);
        s.max = std::max(s.max, v);
    }
    s.mean = total / static_cast<double>(values.size());
    double sq = 0;
    for (double v : values)
        sq += (v - s.mean) * (v - s.mean);
    s.stddev = std::sqrt(sq / static_cast<double>(values.size()));
    return s;
}

} // namespace

UniquenessResult uniqueness(const RegistryView &view) {
    UniquenessResult result;

    // Deduplicate: identical identifier, title, description and access URL
    // set collapse into the first representative.
    std::vector<const model::DatasetRecord *> kept;
    {
        std::set<std::tuple<std::string, std::string, std::string, std::string>> seen;
        for (const auto &ds : view.datasets) {
            std::set<std::string> url_set;
            for (const auto &dist : ds.distributions)
                if (dist.access_url)
                    url_set.insert(*dist.access_url);
            std::string urls;
            for (const auto &u : url_set) {
                urls += u;
                urls.push_back('\x1f');
            }
            auto key = std::make_tuple(ds.identifier.value_or("\x1e"),
                                       ds.title.value_or("\x1e"),
                                       ds.description.value_or("\x1e"), std::move(urls));
            if (seen.insert(std::move(key)).second)
                kept.push_back(&ds);
            else
                ++result.duplicates_removed;
        }
    }

    struct Property {
        const char *name;
        const std::optional<std::string> &(*get)(const model::DatasetRecord &);
    };
    static constexpr auto get_identifier =
        +[](const model::DatasetRecord &d) -> const std::optional<std::string> & {
        return d.identifier;
    };
    static constexpr auto get_title =
        +[](const model::DatasetRecord &d) -> const std::optional<std::string> & {
        return d.title;
    };
    static constexpr auto get_description =
        +[](const model::DatasetRecord &d) -> const std::optional<std::string> & {
        return d.description;
    };
    const Property properties[] = {{"identifier", get_identifier},
                                   {"title", get_title},
                                   {"description", get_description}};

    std::map<const model::DatasetRecord *, std::vector<double>> per_dataset;
    for (const auto &property : properties) {
        std::map<std::string, std::uint64_t> value_freq;
        std::uint64_t t_f = 0;
        for (const auto *ds : kept) {
            const auto &value = property.get(*ds);
            if (!present(value))
                continue;
            ++t_f;
            ++value_freq[*value];
        }
        std::vector<double> scores;
        for (const auto *ds : kept) {
            const auto &value = property.get(*ds);
            if (!present(value))
                continue;
            double u = uniqueness_value(t_f, value_freq.at(*value));
            scores.push_back(u);
            per_dataset[ds].push_back(u);
        }
        result.per_property[property.name] = stats_of(scores);
    }

    std::vector<double> compound;
    for (const auto *ds : kept) {
        auto it = per_dataset.find(ds);
        if (it == per_dataset.end()) {
            ++result.excluded_no_properties;
            continue;
        }
        double total = 0;
        for (double v : it->second)
            total += v;
        compound.push_back(total / static_cast<double>(it->second.size()));
    }
    result.compound = stats_of(compound);
    return result;
}

LocationTable parse_location_table(std::string_view content) {
    LocationTable table;
    for (const auto &row : csv::parse(content)) {
        if (row.size() < 2)
            continue;
        std::string_view level = text::trim(row[0]);
        std::string_view count = text::trim(row[1]);
        int level_value = 0;
        std::uint64_t count_value = 0;
        auto [lp, lec] = std::from_chars(level.data(), level.data() + level.size(),
                                         level_value);
        auto [cp, cec] = std::from_chars(count.data(), count.data() + count.size(),
                                         count_value);
        if (lec != std::errc() || lp != level.data() + level.size())
            continue;
        if (cec != std::errc() || cp != count.data() + count.size())
            continue;
        table.regions_per_level[level_value] = count_value;
    }
    return table;
}

namespace {

std::optional<std::pair<int, std::string>> region_level(std::string_view raw) {
    std::string code;
    for (char c : text::trim(raw))
        code.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
    if (code.size() < 2 || code.size() > 5)
        return std::nullopt;
    for (char c : code)
        if (!std::isalnum(static_cast<unsigned char>(c)))
            return std::nullopt;
    return std::make_pair(static_cast<int>(code.size()) - 2, code);
}

} // namespace

LocationCoverage location_coverage(const std::vector<model::PortalDescriptor> &portals,
                                   const LocationTable &table) {
    LocationCoverage coverage;
    std::map<int, std::set<std::string>> covered;
    for (const auto &portal : portals) {
        if (text::trim(portal.location_code).empty()) {
            ++coverage.missing;
            continue;
        }
        auto mapped = region_level(portal.location_code);
        if (!mapped || !table.regions_per_level.count(mapped->first)) {
            ++coverage.unmappable;
            continue;
        }
        covered[mapped->first].insert(mapped->second);
    }
    for (const auto &[level, regions] : table.regions_per_level) {
        auto it = covered.find(level);
        std::uint64_t numerator = it == covered.end() ? 0 : it->second.size();
        coverage.per_level[level] = {numerator, regions};
    }
    return coverage;
}

std::set<std::string> parse_token_list(std::string_view content) {
    std::set<std::string> tokens;
    std::size_t start = 0;
    while (start <= content.size()) {
        std::size_t end = content.find('\n', start);
        std::string_view line = content.substr(
            start, end == std::string_view::npos ? content.size() - start : end - start);
        auto hash = line.find('#');
        if (hash != std::string_view::npos)
            line = line.substr(0, hash);
        line = text::trim(line);
        if (!line.empty())
            tokens.insert(std::string(line));
        if (end == std::string_view::npos)
            break;
        start = end + 1;
    }
    return tokens;
}

Interoperability interoperability_ratios(const RegistryView &view,
                                         const std::set<std::string> &open_formats) {
    Interoperability inter;
    std::uint64_t open = 0, dcat = 0;
    for (const auto &portal : view.portals) {
        if (model::is_open_api(portal.api_kind))
            ++open;
        if (portal.api_kind == model::ApiKind::dcat)
            ++dcat;
    }
    inter.open_ratio = {open, view.portals.size()};
    inter.dcat_ratio = {dcat, view.portals.size()};

    std::uint64_t with_open_format = 0;
    for (const auto &ds : view.datasets) {
        bool hit = false;
        for (const auto &dist : ds.distributions)
            if (dist.format_norm && open_formats.count(*dist.format_norm)) {
                hit = true;
                break;
            }
        if (hit)
            ++with_open_format;
    }
    inter.open_format_ratio = {with_open_format, view.datasets.size()};
    return inter;
}

std::map<std::string, std::uint64_t> format_histogram(const RegistryView &view) {
    std::map<std::string, std::uint64_t> histogram;
    for (const auto &ds : view.datasets)
        for (const auto &dist : ds.distributions)
            ++histogram[dist.format_norm.value_or("unknown")];
    return histogram;
}

NamespaceDistribution namespace_distribution(const RegistryView &view) {
    NamespaceDistribution dist;
    auto add = [&](const std::string &iri) {
        auto parsed = url::parse(iri);
        if (!parsed || parsed->scheme.empty()) {
            ++dist.relative_iris;
            return;
        }
        ++dist.counts[rdf::namespace_of(iri)];
    };
    for (const auto &t : view.merged.triples) {
        add(t.p.value);
        if (t.p.value == rdf::vocab::rdf_type && t.o.is_iri())
            add(t.o.value);
    }
    return dist;
}

LicenseRatios license_ratios(const RegistryView &view,
                             const std::set<std::string> &open_licenses) {
    LicenseRatios ratios;
    std::uint64_t total = 0, licensed = 0, open = 0;
    for (const auto &ds : view.datasets)
        for (const auto &dist : ds.distributions) {
            ++total;
            if (!dist.license_ref)
                continue;
            ++licensed;
            if (dist.license_ref->is_iri &&
                open_licenses.count(std::string(text::trim(dist.license_ref->value))))
                ++open;
        }
    ratios.license_ratio = {licensed, total};
    ratios.open_license_ratio = {open, total};
    return ratios;
}

ReplicaResult replica_ratio(const RegistryView &view) {
    JoinChain chain = build_chain(view);
    ReplicaResult result;

    std::map<rdf::Term, std::set<std::string>> url_catalogs;
    std::map<rdf::Term, bool> url_multi_dataset;
    for (const auto &[ds, urls] : chain.dataset_urls) {
        const auto &cats = chain.dataset_catalogs.at(ds);
        for (const auto &u : urls) {
            url_catalogs[u].insert(cats.begin(), cats.end());
            if (cats.size() >= 2)
                url_multi_dataset[u] = true;
        }
    }

    std::uint64_t cross_catalog = 0, via_multi_dataset = 0;
    for (const auto &[ds, urls] : chain.dataset_urls) {
        bool cross = false, multi = false;
        for (const auto &u : urls) {
            if (url_catalogs.at(u).size() >= 2)
                cross = true;
            if (url_multi_dataset.count(u))
                multi = true;
        }
        cross_catalog += cross;
        via_multi_dataset += multi;
    }
    result.dataset_ratio = {cross_catalog, chain.dataset_urls.size()};
    result.same_dataset_variant = {via_multi_dataset, chain.dataset_urls.size()};
    return result;
}

KeywordICResult keyword_ic(const RegistryView &view) {
    KeywordICResult result;

    std::vector<std::set<std::string>> folded(view.datasets.size());
    std::map<std::string, std::uint64_t> freq;
    for (std::size_t i = 0; i < view.datasets.size(); ++i) {
        for (const auto &keyword : view.datasets[i].keywords)
            folded[i].insert(text::fold_case(keyword));
        for (const auto &k : folded[i])
            ++freq[k];
        if (folded[i].empty())
            ++result.keywordless;
    }
    std::uint64_t n = 0;
    for (const auto &[k, f] : freq)
        n = std::max(n, f);

    std::vector<double> raw(view.datasets.size(), 0.0);
    for (std::size_t i = 0; i < view.datasets.size(); ++i) {
        if (folded[i].empty())
            continue;
        double total = 0;
        for (const auto &k : folded[i])
            total += std::log(static_cast<double>(n) / static_cast<double>(freq.at(k)));
        raw[i] = total / static_cast<double>(folded[i].size());
    }

    double min = 0, max = 0;
    if (!raw.empty()) {
        min = *std::min_element(raw.begin(), raw.end());
        max = *std::max_element(raw.begin(), raw.end());
    }
    result.degenerate = raw.empty() || min == max;

    std::vector<double> normalized(raw.size(), 0.0);
    if (!result.degenerate)
        for (std::size_t i = 0; i < raw.size(); ++i)
            normalized[i] = (raw[i] - min) / (max - min);

    double total = 0;
    for (std::size_t i = 0; i < raw.size(); ++i) {
        std::string key = view.datasets[i].node.is_blank() ? "_:" + view.datasets[i].node.value
                                                           : view.datasets[i].node.value;
        result.per_dataset[key] = {raw[i], normalized[i]};
        total += normalized[i];
    }
    result.mean_normalized = raw.empty() ? 0.0 : total / static_cast<double>(raw.size());
    result.normalized_summary = summarize(normalized);
    return result;
}

Completeness completeness(const RegistryView &view) {
    Completeness c;
    std::uint64_t mandatory = 0, recommended = 0;
    for (const auto &ds : view.datasets) {
        if (present(ds.title) && present(ds.description))
            ++mandatory;
        if (!ds.distributions.empty() && !ds.keywords.empty() && ds.has_temporal &&
            ds.has_contact_point && ds.has_spatial && ds.has_publisher)
            ++recommended;
    }
    c.mandatory = {mandatory, view.datasets.size()};
    c.recommended = {recommended, view.datasets.size()};
    return c;
}

long months_between(const model::Date &from, const model::Date &to) {
    long days = model::days_between(from, to);
    if (days <= 0)
        return 0;
    return static_cast<long>(std::floor(static_cast<double>(days) / 30.44));
}

FreshnessSummary freshness(const RegistryView &view, const std::string &scope_portal) {
    FreshnessSummary summary;
    std::vector<double> issued, modified;
    for (const auto &ds : view.datasets) {
        model::Date reference = view.max_crawl_date;
        bool in_scope = scope_portal.empty();
        bool dated = false;
        for (const auto &cat : ds.catalogs) {
            if (auto it = view.catalog_dates.find(cat); it != view.catalog_dates.end()) {
                if (!dated || reference < it->second)
                    reference = it->second;
                dated = true;
            }
            if (!in_scope) {
                auto portal = view.catalog_portal.find(cat);
                if (portal != view.catalog_portal.end() && portal->second == scope_portal)
                    in_scope = true;
            }
        }
        if (!in_scope)
            continue;
        auto account = [&](const std::optional<model::Date> &ts, std::vector<double> &out,
                           std::size_t &missing) {
            if (!ts) {
                ++missing;
                return;
            }
            if (model::days_between(*ts, reference) < 0)
                ++summary.clamped;
            out.push_back(static_cast<double>(months_between(*ts, reference)));
        };
        account(ds.issued, issued, summary.missing_issued);
        account(ds.modified, modified, summary.missing_modified);
    }
    summary.issued_months = summarize(std::move(issued));
    summary.modified_months = summarize(std::move(modified));
    return summary;
}

} // namespace odaudit::metrics
