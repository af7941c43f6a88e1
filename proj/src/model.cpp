#include "odaudit/model.hpp"

#include "odaudit/csv.hpp"
#include "odaudit/text.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace odaudit::model {

namespace {

bool parse_int(std::string_view s, int &out) {
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size();
}

} // namespace

std::optional<Date> Date::parse(std::string_view lexical) {
    std::string_view s = text::trim(lexical);
    bool negative = false;
    if (!s.empty() && s.front() == '-') {
        negative = true;
        s.remove_prefix(1);
    }
    if (s.size() < 10 || s[4] != '-' || s[7] != '-')
        return std::nullopt;
    Date d;
    if (!parse_int(s.substr(0, 4), d.year) || !parse_int(s.substr(5, 2), d.month) ||
        !parse_int(s.substr(8, 2), d.day))
        return std::nullopt;
    if (negative)
        d.year = -d.year;
    if (s.size() > 10 && s[10] != 'T' && s[10] != 't' && s[10] != ' ')
        return std::nullopt;
    std::chrono::year_month_day ymd{std::chrono::year{d.year},
                                    std::chrono::month{static_cast<unsigned>(d.month)},
                                    std::chrono::day{static_cast<unsigned>(d.day)}};
    if (!ymd.ok())
        return std::nullopt;
    return d;
}

std::string Date::str() const {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", year, month, day);
    return buf;
}

long Date::days() const {
    std::chrono::year_month_day ymd{std::chrono::year{year},
                                    std::chrono::month{static_cast<unsigned>(month)},
                                    std::chrono::day{static_cast<unsigned>(day)}};
    return std::chrono::sys_days{ymd}.time_since_epoch().count();
}

long days_between(const Date &from, const Date &to) { return to.days() - from.days(); }

ApiKind api_kind_from_string(std::string_view s) {
    std::string v = text::lower_ascii(text::trim(s));
    if (v == "dcat")
        return ApiKind::dcat;
    if (v == "ckan")
        return ApiKind::ckan;
    if (v == "dkan")
        return ApiKind::dkan;
    return ApiKind::none;
}

std::string_view to_string(ApiKind kind) {
    switch (kind) {
    case ApiKind::dcat: return "dcat";
    case ApiKind::ckan: return "ckan";
    case ApiKind::dkan: return "dkan";
    case ApiKind::none: return "none";
    }
    return "none";
}

bool is_open_api(ApiKind kind) { return kind != ApiKind::none; }

FormatTable FormatTable::defaults() {
    FormatTable t;
    t.add_alias("geo+json", "geojson");
    t.add_alias("vnd.geo+json", "geojson");
    t.add_alias("vnd.ms-excel", "xls");
    t.add_alias("vnd.openxmlformats-officedocument.spreadsheetml.sheet", "xlsx");
    t.add_alias("vnd.oasis.opendocument.spreadsheet", "ods");
    t.add_alias("ld+json", "json-ld");
    t.add_alias("jsonld", "json-ld");
    t.add_alias("rdf+xml", "rdf");
    t.add_alias("ttl", "turtle");
    t.add_alias("plain", "txt");
    t.add_alias("comma-separated-values", "csv");
    t.add_alias("x-zip-compressed", "zip");
    t.add_alias("octet-stream", "bin");
    t.add_alias("gtfs", "gtfs");
    t.add_alias("wms_srvc", "wms");
    return t;
}

FormatTable FormatTable::load_csv(std::string_view content) {
    FormatTable t = defaults();
    for (const auto &row : csv::parse(content)) {
        if (row.size() < 2)
            continue;
        std::string alias = text::lower_ascii(text::trim(row[0]));
        std::string canonical = text::lower_ascii(text::trim(row[1]));
        if (alias.empty() || canonical.empty() || alias == "alias")
            continue;
        t.add_alias(std::move(alias), std::move(canonical));
    }
    return t;
}

void FormatTable::add_alias(std::string alias, std::string canonical) {
    aliases_[std::move(alias)] = std::move(canonical);
}

std::optional<std::string> FormatTable::normalize(std::string_view raw) const {
    std::string_view s = text::trim(raw);
    auto semi = s.find(';');
    if (semi != std::string_view::npos)
        s = text::trim(s.substr(0, semi));
    std::string v = text::lower_ascii(s);
    if (v.rfind("application/", 0) == 0)
        v.erase(0, 12);
    else if (v.rfind("text/", 0) == 0)
        v.erase(0, 5);
    if (v.empty())
        return std::nullopt;
    if (auto it = aliases_.find(v); it != aliases_.end())
        return it->second;
    return v;
}

std::string normalize_keyword(std::string_view raw) { return std::string(text::trim(raw)); }

namespace {

struct TermHash {
    std::size_t operator()(const rdf::Term &t) const {
        return text::fnv1a64(t.value,
                             text::fnv1a64(t.datatype,
                                           text::fnv1a64(t.lang, static_cast<std::uint64_t>(
                                                                     t.kind))));
    }
};

// Per-subject predicate index built once so projection is not quadratic.
struct SubjectIndex {
    std::unordered_map<rdf::Term,
                       std::unordered_map<std::string_view, std::vector<const rdf::Term *>>,
                       TermHash>
        map;

    explicit SubjectIndex(const rdf::Graph &g) {
        for (const auto &t : g)
            map[t.s][t.p.value].push_back(&t.o);
    }

    const std::vector<const rdf::Term *> *get(const rdf::Term &s,
                                              std::string_view predicate) const {
        auto it = map.find(s);
        if (it == map.end())
            return nullptr;
        auto jt = it->second.find(predicate);
        if (jt == it->second.end())
            return nullptr;
        return &jt->second;
    }
};

std::optional<std::string> smallest_literal(const SubjectIndex &index, const rdf::Term &s,
                                            std::string_view predicate) {
    const auto *objects = index.get(s, predicate);
    if (!objects)
        return std::nullopt;
    const std::string *best = nullptr;
    for (const auto *o : *objects)
        if (o->is_literal() && (!best || o->value < *best))
            best = &o->value;
    if (!best)
        return std::nullopt;
    return *best;
}

std::optional<Date> smallest_date(const SubjectIndex &index, const rdf::Term &s,
                                  std::string_view predicate, std::size_t &malformed) {
    const auto *objects = index.get(s, predicate);
    if (!objects)
        return std::nullopt;
    std::optional<Date> best;
    bool saw_value = false;
    for (const auto *o : *objects) {
        if (!o->is_literal())
            continue;
        saw_value = true;
        auto parsed = Date::parse(o->value);
        if (!parsed)
            continue;
        if (!best || *parsed < *best)
            best = parsed;
    }
    if (saw_value && !best)
        ++malformed;
    return best;
}

} // namespace

std::vector<DatasetRecord> project_datasets(const CatalogGraph &catalog,
                                            const FormatTable &formats,
                                            ProjectionTally *tally) {
    ProjectionTally local;
    SubjectIndex index(catalog.triples);

    std::map<rdf::Term, std::set<std::string>> dataset_catalogs;
    for (const auto &t : catalog.triples) {
        if (t.p.value != rdf::vocab::dcat_dataset || t.s.is_literal())
            continue;
        if (t.o.is_blank()) {
            ++local.blank_datasets;
            continue;
        }
        if (!t.o.is_iri())
            continue;
        std::string cat_key = t.s.is_blank() ? "_:" + t.s.value : t.s.value;
        dataset_catalogs[t.o].insert(std::move(cat_key));
    }

    std::vector<DatasetRecord> records;
    records.reserve(dataset_catalogs.size());
    for (const auto &[node, cats] : dataset_catalogs) {
        DatasetRecord rec;
        rec.node = node;
        rec.catalogs.assign(cats.begin(), cats.end());
        rec.identifier = smallest_literal(index, node, rdf::vocab::dct_identifier);
        rec.title = smallest_literal(index, node, rdf::vocab::dct_title);
        rec.description = smallest_literal(index, node, rdf::vocab::dct_description);
        rec.issued = smallest_date(index, node, rdf::vocab::dct_issued, local.malformed_dates);
        rec.modified =
            smallest_date(index, node, rdf::vocab::dct_modified, local.malformed_dates);

        if (const auto *keywords = index.get(node, rdf::vocab::dcat_keyword)) {
            for (const auto *o : *keywords) {
                if (!o->is_literal())
                    continue;
                std::string k = normalize_keyword(o->value);
                if (!k.empty())
                    rec.keywords.push_back(std::move(k));
            }
            std::sort(rec.keywords.begin(), rec.keywords.end());
        }
        if (const auto *themes = index.get(node, "http://www.w3.org/ns/dcat#theme")) {
            for (const auto *o : *themes)
                if (o->is_iri())
                    rec.themes.push_back(o->value);
            std::sort(rec.themes.begin(), rec.themes.end());
            rec.themes.erase(std::unique(rec.themes.begin(), rec.themes.end()),
                             rec.themes.end());
        }
        rec.has_contact_point = index.get(node, rdf::vocab::dcat_contact_point) != nullptr;
        rec.has_publisher = index.get(node, rdf::vocab::dct_publisher) != nullptr;
        rec.has_spatial = index.get(node, rdf::vocab::dct_spatial) != nullptr;
        rec.has_temporal = index.get(node, rdf::vocab::dct_temporal) != nullptr;

        if (const auto *dists = index.get(node, rdf::vocab::dcat_distribution)) {
            std::set<rdf::Term> dist_nodes;
            for (const auto *o : *dists)
                if (o->is_iri() || o->is_blank())
                    dist_nodes.insert(*o);
            for (const auto &dist_node : dist_nodes) {
                DistributionRecord dist;
                dist.node = dist_node;
                if (const auto *urls = index.get(dist_node, rdf::vocab::dcat_access_url)) {
                    const std::string *best = nullptr;
                    for (const auto *o : *urls)
                        if (!best || o->value < *best)
                            best = &o->value;
                    if (best)
                        dist.access_url = *best;
                }
                dist.format_raw = smallest_literal(index, dist_node, rdf::vocab::dct_format);
                if (!dist.format_raw)
                    dist.format_raw =
                        smallest_literal(index, dist_node, rdf::vocab::dcat_media_type);
                if (dist.format_raw)
                    dist.format_norm = formats.normalize(*dist.format_raw);
                if (const auto *licenses = index.get(dist_node, rdf::vocab::dct_license)) {
                    const rdf::Term *best = nullptr;
                    for (const auto *o : *licenses)
                        if (o->is_iri() || o->is_literal())
                            if (!best || o->is_iri() > best->is_iri() ||
                                (o->is_iri() == best->is_iri() && o->value < best->value))
                                best = o;
                    if (best)
                        dist.license_ref = LicenseRef{best->is_iri(), best->value};
                }
                rec.distributions.push_back(std::move(dist));
            }
        }
        records.push_back(std::move(rec));
    }
    if (tally)
        *tally = local;
    return records;
}

CatalogGraph merge_catalogs(const std::vector<CatalogGraph> &catalogs) {
    if (catalogs.empty())
        return {};
    if (catalogs.size() == 1)
        return catalogs.front();

    std::unordered_map<std::string, std::string> owners;
    for (const auto &c : catalogs) {
        if (c.catalog_iri.empty())
            continue;
        auto [it, inserted] = owners.emplace(c.catalog_iri, c.source_portal);
        if (!inserted && it->second != c.source_portal)
            throw std::invalid_argument("duplicate catalog IRI '" + c.catalog_iri +
                                        "' from portals '" + it->second + "' and '" +
                                        c.source_portal + "'");
    }

    CatalogGraph merged;
    merged.catalog_iri = "urn:odaudit:merged";
    merged.crawl_date = catalogs.front().crawl_date;
    rdf::Graph all;
    for (const auto &c : catalogs) {
        all.insert(all.end(), c.triples.begin(), c.triples.end());
        if (merged.crawl_date < c.crawl_date)
            merged.crawl_date = c.crawl_date;
    }
    merged.triples = rdf::normalize(std::move(all));
    return merged;
}

PortalList parse_portal_list(std::string_view content) {
    PortalList list;
    std::set<std::string> seen;
    for (const auto &row : csv::parse(content)) {
        if (row.empty() || (row.size() == 1 && text::trim(row[0]).empty()))
            continue;
        if (text::lower_ascii(text::trim(row[0])) == "id")
            continue;
        PortalDescriptor p;
        p.id = std::string(text::trim(row[0]));
        if (row.size() > 1)
            p.name = std::string(text::trim(row[1]));
        if (row.size() > 2)
            p.endpoint_url = std::string(text::trim(row[2]));
        if (row.size() > 3)
            p.api_kind = api_kind_from_string(row[3]);
        if (row.size() > 4)
            p.location_code = std::string(text::trim(row[4]));
        if (row.size() > 5)
            p.landscape_id = std::string(text::trim(row[5]));
        if (p.id.empty())
            throw std::invalid_argument("portal row with empty id");
        if (!seen.insert(p.id).second)
            throw std::invalid_argument("duplicate portal id '" + p.id + "'");
        if (list.landscape_id.empty())
            list.landscape_id = p.landscape_id;
        list.portals.push_back(std::move(p));
    }
    return list;
}

std::string render_portal_list(const PortalList &list) {
    std::string out = "id,name,endpoint_url,api_kind,location_code,landscape_id\n";
    for (const auto &p : list.portals)
        out += csv::join_row({p.id, p.name, p.endpoint_url, std::string(to_string(p.api_kind)),
                              p.location_code, p.landscape_id});
    return out;
}

} // namespace odaudit::model
