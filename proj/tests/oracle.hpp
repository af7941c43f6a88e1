// Independent brute-force reference implementations of every reported metric,
// plus a synthetic registry generator with planted duplicates, replicas, dead
// links, missing fields and closed licenses. The oracles restate the formulas
// with naive nested loops so agreement is evidence, not tautology.
#pragma once

#include "odaudit/accessibility.hpp"
#include "odaudit/metrics.hpp"
#include "odaudit/model.hpp"
#include "odaudit/rdf.hpp"
#include "odaudit/text.hpp"

#include <cmath>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

namespace oracle {

using namespace odaudit;

inline bool approx(double a, double b, double eps = 1e-12) {
    return std::fabs(a - b) <= eps;
}

struct Stats {
    std::size_t count = 0;
    double mean = 0, stddev = 0, min = 0, max = 0;
};

inline Stats stats(const std::vector<double> &values) {
    Stats s;
    s.count = values.size();
    if (values.empty())
        return s;
    double sum = 0;
    s.min = values[0];
    s.max = values[0];
    for (double v : values) {
        sum += v;
        if (v < s.min)
            s.min = v;
        if (v > s.max)
            s.max = v;
    }
    s.mean = sum / double(values.size());
    double sq = 0;
    for (double v : values)
        sq += (v - s.mean) * (v - s.mean);
    s.stddev = std::sqrt(sq / double(values.size()));
    return s;
}

struct Quantiles {
    std::size_t count = 0;
    double mean = 0, min = 0, q1 = 0, median = 0, q3 = 0, max = 0;
};

// R-7 linear interpolation, restated.
inline Quantiles quantiles(std::vector<double> values) {
    Quantiles q;
    q.count = values.size();
    if (values.empty())
        return q;
    std::sort(values.begin(), values.end());
    double sum = 0;
    for (double v : values)
        sum += v;
    q.mean = sum / double(values.size());
    q.min = values.front();
    q.max = values.back();
    auto at = [&](double p) {
        double h = p * double(values.size() - 1);
        auto i = std::size_t(h);
        if (i + 1 == values.size())
            return values[i];
        return values[i] * (1.0 - (h - double(i))) + values[i + 1] * (h - double(i));
    };
    q.q1 = at(0.25);
    q.median = at(0.5);
    q.q3 = at(0.75);
    return q;
}

inline std::string node_key(const rdf::Term &t) {
    return t.is_blank() ? "_:" + t.value : t.value;
}

// ---- key data: the catalog→dataset→distribution→accessURL join ----

struct KeyDataOracle {
    std::uint64_t datasets = 0, distributions = 0, urls = 0, catalogs = 0;
};

inline KeyDataOracle key_data(const rdf::Graph &g) {
    KeyDataOracle k;
    std::set<std::string> catalogs, datasets, distributions;
    std::set<rdf::Term> urls;
    for (const auto &t : g)
        if (t.p.value == rdf::vocab::dcat_dataset && !t.s.is_literal())
            catalogs.insert(node_key(t.s));
    for (const auto &t1 : g) {
        if (t1.p.value != rdf::vocab::dcat_dataset || t1.s.is_literal() || !t1.o.is_iri())
            continue;
        for (const auto &t2 : g) {
            if (t2.p.value != rdf::vocab::dcat_distribution || t2.s != t1.o ||
                !t2.o.is_iri())
                continue;
            for (const auto &t3 : g) {
                if (t3.p.value != rdf::vocab::dcat_access_url || t3.s != t2.o)
                    continue;
                datasets.insert(t1.o.value);
                distributions.insert(t2.o.value);
                urls.insert(t3.o);
            }
        }
    }
    k.datasets = datasets.size();
    k.distributions = distributions.size();
    k.urls = urls.size();
    k.catalogs = catalogs.size();
    return k;
}

// ---- uniqueness ----

struct UniquenessOracle {
    std::map<std::string, Stats> per_property;
    Stats compound;
    std::size_t duplicates = 0, excluded = 0;
};

inline UniquenessOracle uniqueness(const std::vector<model::DatasetRecord> &records) {
    UniquenessOracle result;

    auto urls_of = [](const model::DatasetRecord &d) {
        std::set<std::string> urls;
        for (const auto &dist : d.distributions)
            if (dist.access_url)
                urls.insert(*dist.access_url);
        return urls;
    };
    auto same = [&](const model::DatasetRecord &a, const model::DatasetRecord &b) {
        return a.identifier == b.identifier && a.title == b.title &&
               a.description == b.description && urls_of(a) == urls_of(b);
    };

    std::vector<const model::DatasetRecord *> kept;
    for (const auto &record : records) {
        bool duplicate = false;
        for (const auto *prior : kept)
            if (same(record, *prior)) {
                duplicate = true;
                break;
            }
        if (duplicate)
            ++result.duplicates;
        else
            kept.push_back(&record);
    }

    auto value_of = [](const model::DatasetRecord &d, int p) -> std::optional<std::string> {
        const auto &v = p == 0 ? d.identifier : p == 1 ? d.title : d.description;
        if (!v || v->empty())
            return std::nullopt;
        return v;
    };
    const char *names[] = {"identifier", "title", "description"};

    std::vector<std::vector<double>> own(kept.size());
    for (int p = 0; p < 3; ++p) {
        std::uint64_t tf = 0;
        for (const auto *d : kept)
            if (value_of(*d, p))
                ++tf;
        std::vector<double> scores;
        for (std::size_t i = 0; i < kept.size(); ++i) {
            auto value = value_of(*kept[i], p);
            if (!value)
                continue;
            std::uint64_t vf = 0;
            for (const auto *other : kept)
                if (auto ov = value_of(*other, p); ov && *ov == *value)
                    ++vf;
            double numer = std::log(1.0 + (double(tf) - double(vf) + 0.5) / (double(vf) + 0.5));
            double denom = std::log(1.0 + (double(tf) - 0.5) / 1.5);
            double u = numer / denom;
            scores.push_back(u);
            own[i].push_back(u);
        }
        result.per_property[names[p]] = stats(scores);
    }

    std::vector<double> compound;
    for (const auto &scores : own) {
        if (scores.empty()) {
            ++result.excluded;
            continue;
        }
        double sum = 0;
        for (double v : scores)
            sum += v;
        compound.push_back(sum / double(scores.size()));
    }
    result.compound = stats(compound);
    return result;
}

// ---- count ratios ----

using Fraction = std::pair<std::uint64_t, std::uint64_t>;

inline Fraction open_portal_ratio(const std::vector<model::PortalDescriptor> &portals) {
    std::uint64_t n = 0;
    for (const auto &p : portals)
        if (p.api_kind != model::ApiKind::none)
            ++n;
    return {n, portals.size()};
}

inline Fraction dcat_portal_ratio(const std::vector<model::PortalDescriptor> &portals) {
    std::uint64_t n = 0;
    for (const auto &p : portals)
        if (p.api_kind == model::ApiKind::dcat)
            ++n;
    return {n, portals.size()};
}

inline Fraction open_format_ratio(const std::vector<model::DatasetRecord> &records,
                                  const std::set<std::string> &open_formats) {
    std::uint64_t n = 0;
    for (const auto &d : records) {
        bool open = false;
        for (const auto &dist : d.distributions)
            if (dist.format_norm && open_formats.count(*dist.format_norm))
                open = true;
        if (open)
            ++n;
    }
    return {n, records.size()};
}

struct LicenseOracle {
    Fraction licensed, open;
};

inline LicenseOracle licenses(const std::vector<model::DatasetRecord> &records,
                              const std::set<std::string> &open_licenses) {
    std::uint64_t total = 0, licensed = 0, open = 0;
    for (const auto &d : records)
        for (const auto &dist : d.distributions) {
            ++total;
            if (!dist.license_ref)
                continue;
            ++licensed;
            if (dist.license_ref->is_iri &&
                open_licenses.count(std::string(text::trim(dist.license_ref->value))))
                ++open;
        }
    return {{licensed, total}, {open, total}};
}

inline Fraction mandatory_ratio(const std::vector<model::DatasetRecord> &records) {
    std::uint64_t n = 0;
    for (const auto &d : records)
        if (d.title && !d.title->empty() && d.description && !d.description->empty())
            ++n;
    return {n, records.size()};
}

inline Fraction recommended_ratio(const std::vector<model::DatasetRecord> &records) {
    std::uint64_t n = 0;
    for (const auto &d : records)
        if (!d.distributions.empty() && !d.keywords.empty() && d.has_temporal &&
            d.has_contact_point && d.has_spatial && d.has_publisher)
            ++n;
    return {n, records.size()};
}

// ---- replica detection over the raw graph ----

struct ReplicaOracle {
    Fraction cross_catalog, same_dataset;
};

inline ReplicaOracle replica(const rdf::Graph &g) {
    // Chained datasets with their url terms and catalog keys, by nested scans.
    struct Entry {
        std::string dataset;
        std::set<rdf::Term> urls;
        std::set<std::string> catalogs;
    };
    std::vector<Entry> entries;
    std::set<std::string> seen;
    for (const auto &t1 : g) {
        if (t1.p.value != rdf::vocab::dcat_dataset || t1.s.is_literal() || !t1.o.is_iri())
            continue;
        if (!seen.insert(t1.o.value).second)
            continue;
        Entry e;
        e.dataset = t1.o.value;
        for (const auto &tc : g)
            if (tc.p.value == rdf::vocab::dcat_dataset && !tc.s.is_literal() &&
                tc.o == t1.o)
                e.catalogs.insert(node_key(tc.s));
        for (const auto &t2 : g) {
            if (t2.p.value != rdf::vocab::dcat_distribution || t2.s != t1.o ||
                !t2.o.is_iri())
                continue;
            for (const auto &t3 : g)
                if (t3.p.value == rdf::vocab::dcat_access_url && t3.s == t2.o)
                    e.urls.insert(t3.o);
        }
        if (!e.urls.empty())
            entries.push_back(std::move(e));
    }

    std::uint64_t cross = 0, same = 0;
    for (const auto &e : entries) {
        bool is_cross = false, is_same = false;
        for (const auto &u : e.urls) {
            std::set<std::string> catalogs_of_url;
            for (const auto &other : entries)
                if (other.urls.count(u)) {
                    catalogs_of_url.insert(other.catalogs.begin(), other.catalogs.end());
                    if (other.catalogs.size() >= 2)
                        is_same = true;
                }
            if (catalogs_of_url.size() >= 2)
                is_cross = true;
        }
        cross += is_cross;
        same += is_same;
    }
    return {{cross, entries.size()}, {same, entries.size()}};
}

// ---- keyword information content ----

struct KeywordOracle {
    std::vector<double> raw, normalized; // by record order
    double mean_normalized = 0;
    std::size_t keywordless = 0;
    bool degenerate = false;
};

inline KeywordOracle keyword_ic(const std::vector<model::DatasetRecord> &records) {
    KeywordOracle result;
    std::vector<std::set<std::string>> sets;
    for (const auto &d : records) {
        std::set<std::string> s;
        for (const auto &k : d.keywords)
            s.insert(text::fold_case(k));
        if (s.empty())
            ++result.keywordless;
        sets.push_back(std::move(s));
    }
    auto freq = [&](const std::string &k) {
        std::uint64_t n = 0;
        for (const auto &s : sets)
            if (s.count(k))
                ++n;
        return n;
    };
    std::uint64_t max_freq = 0;
    for (const auto &s : sets)
        for (const auto &k : s)
            max_freq = std::max(max_freq, freq(k));

    for (const auto &s : sets) {
        double ic = 0;
        for (const auto &k : s)
            ic += -std::log(double(freq(k)) / double(max_freq)) / double(s.size());
        result.raw.push_back(s.empty() ? 0.0 : ic);
    }

    double lo = 0, hi = 0;
    if (!result.raw.empty()) {
        lo = result.raw[0];
        hi = result.raw[0];
        for (double v : result.raw) {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    result.degenerate = result.raw.empty() || lo == hi;
    double sum = 0;
    for (double v : result.raw) {
        double n = result.degenerate ? 0.0 : (v - lo) / (hi - lo);
        result.normalized.push_back(n);
        sum += n;
    }
    result.mean_normalized = result.raw.empty() ? 0.0 : sum / double(result.raw.size());
    return result;
}

// ---- freshness ----

struct FreshnessOracle {
    std::vector<double> issued, modified;
    std::size_t missing_issued = 0, missing_modified = 0, clamped = 0;
};

inline FreshnessOracle freshness(const model::LandscapeRegistry &reg,
                                 const std::vector<model::DatasetRecord> &records) {
    std::map<std::string, model::Date> node_date;
    model::Date fallback{1970, 1, 1};
    bool have_any = false;
    for (const auto &cg : reg.merged_catalogs) {
        if (!have_any || fallback < cg.crawl_date)
            fallback = cg.crawl_date;
        have_any = true;
        for (const auto &t : cg.triples) {
            if (t.p.value != rdf::vocab::dcat_dataset || t.s.is_literal())
                continue;
            std::string key = node_key(t.s);
            auto it = node_date.find(key);
            if (it == node_date.end() || it->second < cg.crawl_date)
                node_date[key] = cg.crawl_date;
        }
    }

    FreshnessOracle result;
    for (const auto &d : records) {
        model::Date reference = fallback;
        bool found = false;
        for (const auto &cat : d.catalogs) {
            auto it = node_date.find(cat);
            if (it != node_date.end() && (!found || reference < it->second)) {
                reference = it->second;
                found = true;
            }
        }
        auto months = [&](const model::Date &ts) {
            long days = model::days_between(ts, reference);
            if (days < 0)
                ++result.clamped;
            if (days <= 0)
                return 0.0;
            return std::floor(double(days) / 30.44);
        };
        if (d.issued)
            result.issued.push_back(months(*d.issued));
        else
            ++result.missing_issued;
        if (d.modified)
            result.modified.push_back(months(*d.modified));
        else
            ++result.missing_modified;
    }
    return result;
}

// ---- accessibility ----

inline Fraction accessibility(const std::vector<accessibility::ProbeResult> &probes,
                              const std::vector<model::DatasetRecord> &records) {
    std::uint64_t total = 0, live = 0;
    for (const auto &d : records)
        for (const auto &dist : d.distributions) {
            ++total;
            if (!dist.access_url)
                continue;
            for (const auto &p : probes)
                if (p.url == *dist.access_url &&
                    p.outcome == accessibility::Outcome::status && p.status_code == 200) {
                    ++live;
                    break;
                }
        }
    return {live, total};
}

inline std::map<std::string, std::uint64_t>
format_histogram(const std::vector<model::DatasetRecord> &records) {
    std::map<std::string, std::uint64_t> h;
    for (const auto &d : records)
        for (const auto &dist : d.distributions)
            h[dist.format_norm ? *dist.format_norm : "unknown"] += 1;
    return h;
}

// ---- synthetic registries with planted phenomena ----

struct Synthetic {
    model::LandscapeRegistry registry;
    std::vector<accessibility::ProbeResult> probes; // planted live/dead outcomes
};

inline Synthetic synthetic_registry(std::uint32_t seed) {
    std::mt19937 rng(seed);
    auto pct = [&](int p) { return int(rng() % 100) < p; };
    auto pick = [&](const std::vector<std::string> &pool) {
        return pool[rng() % pool.size()];
    };

    const std::vector<std::string> words = {
        "wasser", "verkehr", "haushalt", "umwelt",  "karte",  "bericht",
        "schule", "energie", "laerm",    "statistik", "plan", "daten"};
    const std::vector<std::string> keywords = {
        "umwelt", "verkehr", "haushalt", "karte", "statistik", "energie",
        "wasser", "digital", "geo",      "bildung", "klima",   "offen"};
    const std::vector<std::string> formats = {
        "CSV", "JSON", "pdf", "XLSX", "text/csv", "application/json", "HTML", "shp"};
    const std::string open_license = "http://dcat-ap.de/def/licenses/dl-by-de/2.0";
    const std::string open_license2 = "https://www.govdata.de/dl-de/zero-2-0";
    const std::string closed_license = "http://example.org/licenses/internal-use-only";

    Synthetic synth;
    synth.registry.landscape_id = "synthetic";
    int catalog_count = 2 + int(rng() % 2);
    int total_datasets = 0;

    std::vector<std::string> shared_urls;
    for (int i = 0; i < 6; ++i)
        shared_urls.push_back("http://shared.example/file" + std::to_string(i));

    std::set<std::string> dead;
    std::set<std::string> all_urls;
    std::vector<std::string> all_dataset_iris;

    for (int c = 0; c < catalog_count; ++c) {
        std::string portal = "portal" + std::to_string(c);
        std::string base = "http://" + portal + ".example";
        model::PortalDescriptor pd;
        pd.id = portal;
        pd.name = "Portal " + std::to_string(c);
        pd.endpoint_url = base + "/api";
        pd.api_kind = c % 3 == 0   ? model::ApiKind::dcat
                      : c % 3 == 1 ? model::ApiKind::ckan
                                   : model::ApiKind::none;
        pd.location_code = c == 0 ? "DE11" : c == 1 ? "DE2" : "";
        pd.landscape_id = "synthetic";
        synth.registry.portals.push_back(pd);

        model::CatalogGraph cg;
        cg.catalog_iri = base + "/catalog";
        cg.source_portal = portal;
        cg.crawl_date = model::Date{2024, 5, 1 + c};

        rdf::Graph &g = cg.triples;
        rdf::Term cat = rdf::Term::iri(cg.catalog_iri);
        g.push_back({cat, rdf::Term::iri(std::string(rdf::vocab::rdf_type)),
                     rdf::Term::iri(std::string(rdf::vocab::dcat_catalog))});

        int n = 10 + int(rng() % 26);
        if (total_datasets + n > 100)
            n = 100 - total_datasets;
        total_datasets += n;

        std::string prev_title, prev_desc, prev_id;
        std::vector<std::string> prev_urls;
        for (int j = 0; j < n; ++j) {
            std::string ds_iri = base + "/ds/" + std::to_string(j);
            all_dataset_iris.push_back(ds_iri);
            rdf::Term ds = rdf::Term::iri(ds_iri);
            g.push_back({cat, rdf::Term::iri(std::string(rdf::vocab::dcat_dataset)), ds});
            g.push_back({ds, rdf::Term::iri(std::string(rdf::vocab::rdf_type)),
                         rdf::Term::iri(std::string(rdf::vocab::dcat_dataset_cls))});

            bool clone = j > 0 && pct(8);
            std::string title, desc, ident;
            std::vector<std::string> ds_urls;
            if (clone) {
                title = prev_title;
                desc = prev_desc;
                ident = prev_id;
                ds_urls = prev_urls;
            } else {
                if (pct(85))
                    title = pick(words) + " " + pick(words) + (pct(25) ? "" : " " + std::to_string(rng() % 40));
                if (pct(70))
                    desc = "Beschreibung " + pick(words) + " " + pick(words) + " " + pick(words);
                if (pct(80))
                    ident = pct(15) ? "dup-id-" + std::to_string(rng() % 3)
                                    : portal + "-id-" + std::to_string(j);
                int dists = int(rng() % 4);
                for (int d = 0; d < dists; ++d) {
                    std::string u = pct(12) ? shared_urls[rng() % shared_urls.size()]
                                            : base + "/files/" + std::to_string(j) + "-" +
                                                  std::to_string(d);
                    ds_urls.push_back(u);
                }
            }
            if (!title.empty())
                g.push_back({ds, rdf::Term::iri(std::string(rdf::vocab::dct_title)),
                             rdf::Term::literal(title)});
            if (!desc.empty())
                g.push_back({ds, rdf::Term::iri(std::string(rdf::vocab::dct_description)),
                             rdf::Term::literal(desc)});
            if (!ident.empty())
                g.push_back({ds, rdf::Term::iri(std::string(rdf::vocab::dct_identifier)),
                             rdf::Term::literal(ident)});

            int kw = int(rng() % 6);
            for (int k = 0; k < kw; ++k)
                g.push_back({ds, rdf::Term::iri(std::string(rdf::vocab::dcat_keyword)),
                             rdf::Term::literal(pick(keywords))});
            if (pct(75)) {
                int y = 2018 + int(rng() % 8); // occasionally after the crawl date
                std::string date = std::to_string(y) + "-0" + std::to_string(1 + rng() % 9) +
                                   "-1" + std::to_string(rng() % 9);
                g.push_back({ds, rdf::Term::iri(std::string(rdf::vocab::dct_issued)),
                             rdf::Term::literal(date, std::string(rdf::vocab::xsd_date))});
            }
            if (pct(60)) {
                std::string date = pct(6) ? "not-a-date"
                                          : std::to_string(2019 + rng() % 7) + "-1" +
                                                std::to_string(rng() % 2) + "-0" +
                                                std::to_string(1 + rng() % 9) + "T12:00:00Z";
                g.push_back({ds, rdf::Term::iri(std::string(rdf::vocab::dct_modified)),
                             rdf::Term::literal(date,
                                                std::string(rdf::vocab::xsd_date_time))});
            }
            if (pct(50))
                g.push_back({ds, rdf::Term::iri(std::string(rdf::vocab::dcat_contact_point)),
                             rdf::Term::blank("contact" + std::to_string(j))});
            if (pct(50))
                g.push_back({ds, rdf::Term::iri(std::string(rdf::vocab::dct_publisher)),
                             rdf::Term::iri(base + "/org/1")});
            if (pct(50))
                g.push_back({ds, rdf::Term::iri(std::string(rdf::vocab::dct_spatial)),
                             rdf::Term::iri("http://dcs.example/" + std::to_string(rng() % 4))});
            if (pct(50))
                g.push_back({ds, rdf::Term::iri(std::string(rdf::vocab::dct_temporal)),
                             rdf::Term::blank("temporal" + std::to_string(j))});

            for (std::size_t d = 0; d < ds_urls.size(); ++d) {
                bool blank_dist = pct(5);
                rdf::Term dist = blank_dist
                                     ? rdf::Term::blank("dist" + std::to_string(j) + "_" +
                                                        std::to_string(d))
                                     : rdf::Term::iri(ds_iri + "/dist/" + std::to_string(d));
                g.push_back(
                    {ds, rdf::Term::iri(std::string(rdf::vocab::dcat_distribution)), dist});
                const std::string &u = ds_urls[d];
                g.push_back({dist, rdf::Term::iri(std::string(rdf::vocab::dcat_access_url)),
                             rdf::Term::iri(u)});
                all_urls.insert(u);
                if (pct(20))
                    dead.insert(u);
                if (pct(70))
                    g.push_back({dist, rdf::Term::iri(std::string(rdf::vocab::dct_format)),
                                 rdf::Term::literal(pick(formats))});
                if (pct(60)) {
                    bool open = pct(65);
                    bool literal = pct(20);
                    if (literal)
                        g.push_back({dist,
                                     rdf::Term::iri(std::string(rdf::vocab::dct_license)),
                                     rdf::Term::literal("Datenlizenz Deutschland")});
                    else
                        g.push_back({dist,
                                     rdf::Term::iri(std::string(rdf::vocab::dct_license)),
                                     rdf::Term::iri(open ? (pct(50) ? open_license
                                                                    : open_license2)
                                                         : closed_license)});
                }
            }
            prev_title = title;
            prev_desc = desc;
            prev_id = ident;
            prev_urls = ds_urls;
        }

        // Register a handful of foreign datasets under this catalog too, so
        // some datasets live under two catalog nodes.
        if (c > 0)
            for (const auto &foreign : all_dataset_iris)
                if (pct(4))
                    g.push_back({cat, rdf::Term::iri(std::string(rdf::vocab::dcat_dataset)),
                                 rdf::Term::iri(foreign)});

        synth.registry.merged_catalogs.push_back(std::move(cg));
    }

    for (const auto &u : all_urls) {
        accessibility::ProbeResult p;
        p.url = u;
        if (dead.count(u)) {
            switch (rng() % 3) {
            case 0:
                p.outcome = accessibility::Outcome::status;
                p.status_code = 404;
                break;
            case 1:
                p.outcome = accessibility::Outcome::status;
                p.status_code = 500;
                break;
            default:
                p.outcome = accessibility::Outcome::timeout;
                break;
            }
        } else {
            p.outcome = accessibility::Outcome::status;
            p.status_code = 200;
        }
        synth.probes.push_back(std::move(p));
    }
    return synth;
}

// Runs every metric against its oracle; returns human-readable mismatches.
inline std::vector<std::string> compare_all(const Synthetic &synth) {
    std::vector<std::string> failures;
    auto fail = [&](const std::string &what) { failures.push_back(what); };
    auto check_fraction = [&](const std::string &name, const metrics::Ratio &got,
                              const Fraction &want) {
        if (got.numerator != want.first || got.denominator != want.second)
            fail(name + ": got " + std::to_string(got.numerator) + "/" +
                 std::to_string(got.denominator) + ", oracle " +
                 std::to_string(want.first) + "/" + std::to_string(want.second));
    };
    auto check_close = [&](const std::string &name, double got, double want) {
        if (!approx(got, want))
            fail(name + ": got " + std::to_string(got) + ", oracle " +
                 std::to_string(want));
    };
    auto check_stats = [&](const std::string &name, const metrics::PropertyStats &got,
                           const Stats &want) {
        if (got.count != want.count)
            fail(name + ".count: got " + std::to_string(got.count) + ", oracle " +
                 std::to_string(want.count));
        check_close(name + ".mean", got.mean, want.mean);
        check_close(name + ".stddev", got.stddev, want.stddev);
        check_close(name + ".min", got.min, want.min);
        check_close(name + ".max", got.max, want.max);
    };
    auto check_quantiles = [&](const std::string &name, const metrics::Summary &got,
                               const Quantiles &want) {
        if (got.count != want.count)
            fail(name + ".count: got " + std::to_string(got.count) + ", oracle " +
                 std::to_string(want.count));
        check_close(name + ".mean", got.mean, want.mean);
        check_close(name + ".min", got.min, want.min);
        check_close(name + ".q1", got.q1, want.q1);
        check_close(name + ".median", got.median, want.median);
        check_close(name + ".q3", got.q3, want.q3);
        check_close(name + ".max", got.max, want.max);
    };

    const std::set<std::string> open_formats = {"csv",  "json",    "geojson", "xml",
                                                "gml",  "html",    "rdf",     "turtle",
                                                "json-ld", "txt", "ods"};
    const std::set<std::string> open_licenses = {
        "http://dcat-ap.de/def/licenses/dl-by-de/2.0",
        "https://www.govdata.de/dl-de/zero-2-0"};

    auto view = metrics::build_view(synth.registry, model::FormatTable::defaults());

    {
        auto got = metrics::key_data(view);
        auto want = key_data(view.merged.triples);
        if (got.dataset_count != want.datasets)
            fail("key_data.datasets: got " + std::to_string(got.dataset_count) +
                 ", oracle " + std::to_string(want.datasets));
        if (got.distribution_count != want.distributions)
            fail("key_data.distributions: got " + std::to_string(got.distribution_count) +
                 ", oracle " + std::to_string(want.distributions));
        if (got.access_url_count != want.urls)
            fail("key_data.urls: got " + std::to_string(got.access_url_count) +
                 ", oracle " + std::to_string(want.urls));
        if (got.catalog_count != want.catalogs)
            fail("key_data.catalogs: got " + std::to_string(got.catalog_count) +
                 ", oracle " + std::to_string(want.catalogs));
    }
    {
        auto got = metrics::uniqueness(view);
        auto want = uniqueness(view.datasets);
        if (got.duplicates_removed != want.duplicates)
            fail("uniqueness.duplicates: got " + std::to_string(got.duplicates_removed) +
                 ", oracle " + std::to_string(want.duplicates));
        if (got.excluded_no_properties != want.excluded)
            fail("uniqueness.excluded: got " +
                 std::to_string(got.excluded_no_properties) + ", oracle " +
                 std::to_string(want.excluded));
        for (const auto &[name, stats] : want.per_property) {
            auto it = got.per_property.find(name);
            if (it == got.per_property.end()) {
                fail("uniqueness missing property " + name);
                continue;
            }
            check_stats("uniqueness." + name, it->second, stats);
        }
        check_stats("uniqueness.compound", got.compound, want.compound);
    }
    {
        auto got = metrics::interoperability_ratios(view, open_formats);
        check_fraction("open_ratio", got.open_ratio, open_portal_ratio(view.portals));
        check_fraction("dcat_ratio", got.dcat_ratio, dcat_portal_ratio(view.portals));
        check_fraction("open_format_ratio", got.open_format_ratio,
                       open_format_ratio(view.datasets, open_formats));
    }
    {
        auto got = metrics::license_ratios(view, open_licenses);
        auto want = licenses(view.datasets, open_licenses);
        check_fraction("license_ratio", got.license_ratio, want.licensed);
        check_fraction("open_license_ratio", got.open_license_ratio, want.open);
    }
    {
        auto got = metrics::replica_ratio(view);
        auto want = replica(view.merged.triples);
        check_fraction("replica.dataset_ratio", got.dataset_ratio, want.cross_catalog);
        check_fraction("replica.same_dataset", got.same_dataset_variant,
                       want.same_dataset);
    }
    {
        auto got = metrics::keyword_ic(view);
        auto want = keyword_ic(view.datasets);
        if (got.keywordless != want.keywordless)
            fail("keyword_ic.keywordless: got " + std::to_string(got.keywordless) +
                 ", oracle " + std::to_string(want.keywordless));
        if (got.degenerate != want.degenerate)
            fail("keyword_ic.degenerate disagrees");
        check_close("keyword_ic.mean", got.mean_normalized, want.mean_normalized);
        for (std::size_t i = 0; i < view.datasets.size(); ++i) {
            std::string key = node_key(view.datasets[i].node);
            auto it = got.per_dataset.find(key);
            if (it == got.per_dataset.end()) {
                fail("keyword_ic missing dataset " + key);
                continue;
            }
            if (!approx(it->second.first, want.raw[i]) ||
                !approx(it->second.second, want.normalized[i]))
                fail("keyword_ic mismatch for " + key);
        }
        check_quantiles("keyword_ic.summary", got.normalized_summary,
                        quantiles(want.normalized));
    }
    {
        auto got = metrics::completeness(view);
        check_fraction("completeness.mandatory", got.mandatory,
                       mandatory_ratio(view.datasets));
        check_fraction("completeness.recommended", got.recommended,
                       recommended_ratio(view.datasets));
    }
    {
        auto got = metrics::freshness(view);
        auto want = freshness(synth.registry, view.datasets);
        if (got.missing_issued != want.missing_issued ||
            got.missing_modified != want.missing_modified)
            fail("freshness.missing counts disagree");
        if (got.clamped != want.clamped)
            fail("freshness.clamped: got " + std::to_string(got.clamped) + ", oracle " +
                 std::to_string(want.clamped));
        check_quantiles("freshness.issued", got.issued_months, quantiles(want.issued));
        check_quantiles("freshness.modified", got.modified_months,
                        quantiles(want.modified));
    }
    {
        auto got = accessibility::accessibility_ratio(synth.probes, view.datasets);
        check_fraction("accessibility_ratio", got, accessibility(synth.probes, view.datasets));
        auto histogram = accessibility::status_histogram(synth.probes);
        std::uint64_t total = 0;
        for (const auto &[cls, count] : histogram)
            total += count;
        if (total != synth.probes.size())
            fail("status_histogram does not sum to probe count");
    }
    {
        auto got = metrics::format_histogram(view);
        if (got != format_histogram(view.datasets))
            fail("format_histogram disagrees");
    }
    return failures;
}

} // namespace oracle
