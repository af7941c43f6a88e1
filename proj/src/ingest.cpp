#include "odaudit/ingest.hpp"

#include "odaudit/registry.hpp"
#include "odaudit/text.hpp"
#include "odaudit/turtle.hpp"
#include "odaudit/url.hpp"

#include <algorithm>
#include <atomic>
#include <condition_variable>
#include <mutex>
#include <set>
#include <thread>

namespace odaudit::ingest {

using nlohmann::json;
using rdf::Term;

namespace {

std::string strip_trailing_slash(std::string s) {
    while (!s.empty() && s.back() == '/')
        s.pop_back();
    return s;
}

net::FetchResult fetch_with_retries(net::HttpClient &client, const std::string &url,
                                    const net::RequestOptions &options, int max_retries,
                                    std::chrono::milliseconds backoff_base) {
    net::FetchResult result;
    for (int attempt = 0;; ++attempt) {
        result = client.request("GET", url, options);
        bool retryable = result.ok() ? result.status >= 500
                                     : result.transport != net::Transport::invalid_url;
        if (!retryable || attempt >= max_retries)
            return result;
        if (backoff_base.count() > 0)
            std::this_thread::sleep_for(backoff_base * (1L << attempt));
    }
}

[[noreturn]] void throw_fetch_error(const std::string &what, const net::FetchResult &result) {
    if (result.ok())
        throw HarvestError(what + ": HTTP " + std::to_string(result.status), result.status);
    std::string detail;
    switch (result.transport) {
    case net::Transport::timeout: detail = "timeout"; break;
    case net::Transport::invalid_url: detail = "invalid URL"; break;
    default: detail = "connection error"; break;
    }
    if (!result.error.empty())
        detail += " (" + result.error + ")";
    throw HarvestError(what + ": " + detail);
}

std::string get_string(const json &obj, const std::string &key) {
    auto it = obj.find(key);
    if (it == obj.end())
        return {};
    if (it->is_string())
        return std::string(text::trim(it->get<std::string>()));
    if (it->is_number_integer())
        return std::to_string(it->get<long long>());
    return {};
}

std::string first_string(const json &obj, const std::vector<std::string> &keys) {
    for (const auto &key : keys) {
        std::string v = get_string(obj, key);
        if (!v.empty())
            return v;
    }
    return {};
}

} // namespace

CkanFieldMapping CkanFieldMapping::from_json(const json &j) {
    CkanFieldMapping m;
    auto str = [&](const char *key, std::string &field) {
        if (j.contains(key) && j.at(key).is_string())
            field = j.at(key).get<std::string>();
    };
    auto list = [&](const char *key, std::vector<std::string> &field) {
        if (j.contains(key) && j.at(key).is_array()) {
            field.clear();
            for (const auto &v : j.at(key))
                if (v.is_string())
                    field.push_back(v.get<std::string>());
        }
    };
    list("title_keys", m.title_keys);
    str("description_key", m.description_key);
    str("identifier_key", m.identifier_key);
    str("tags_key", m.tags_key);
    str("tag_name_key", m.tag_name_key);
    str("issued_key", m.issued_key);
    str("modified_key", m.modified_key);
    str("resources_key", m.resources_key);
    str("resource_url_key", m.resource_url_key);
    str("resource_format_key", m.resource_format_key);
    str("resource_id_key", m.resource_id_key);
    str("license_url_key", m.license_url_key);
    list("license_text_keys", m.license_text_keys);
    str("organization_key", m.organization_key);
    list("contact_keys", m.contact_keys);
    str("contact_email_key", m.contact_email_key);
    return m;
}

json CkanFieldMapping::to_json() const {
    json j;
    j["title_keys"] = title_keys;
    j["description_key"] = description_key;
    j["identifier_key"] = identifier_key;
    j["tags_key"] = tags_key;
    j["tag_name_key"] = tag_name_key;
    j["issued_key"] = issued_key;
    j["modified_key"] = modified_key;
    j["resources_key"] = resources_key;
    j["resource_url_key"] = resource_url_key;
    j["resource_format_key"] = resource_format_key;
    j["resource_id_key"] = resource_id_key;
    j["license_url_key"] = license_url_key;
    j["license_text_keys"] = license_text_keys;
    j["organization_key"] = organization_key;
    j["contact_keys"] = contact_keys;
    j["contact_email_key"] = contact_email_key;
    return j;
}

rdf::Graph packages_to_dcat(const json &packages, const model::PortalDescriptor &portal,
                            const CkanFieldMapping &mapping, std::size_t &skipped) {
    rdf::Graph g;
    std::string base = strip_trailing_slash(portal.endpoint_url);
    Term catalog = Term::iri(base + "#catalog");
    g.push_back({catalog, Term::iri(std::string(rdf::vocab::rdf_type)),
                 Term::iri(std::string(rdf::vocab::dcat_catalog))});
    if (!portal.name.empty())
        g.push_back({catalog, Term::iri(std::string(rdf::vocab::dct_title)),
                     Term::literal(portal.name)});

    std::size_t genid = 0;
    for (const auto &pkg : packages) {
        if (!pkg.is_object()) {
            ++skipped;
            continue;
        }
        std::string id = get_string(pkg, mapping.identifier_key);
        if (id.empty()) {
            ++skipped;
            continue;
        }
        Term ds = Term::iri(base + "/dataset/" + id);
        g.push_back({catalog, Term::iri(std::string(rdf::vocab::dcat_dataset)), ds});
        g.push_back({ds, Term::iri(std::string(rdf::vocab::rdf_type)),
                     Term::iri(std::string(rdf::vocab::dcat_dataset_cls))});
        g.push_back({ds, Term::iri(std::string(rdf::vocab::dct_identifier)), Term::literal(id)});

        std::string title = first_string(pkg, mapping.title_keys);
        if (!title.empty())
            g.push_back({ds, Term::iri(std::string(rdf::vocab::dct_title)),
                         Term::literal(title)});
        std::string description = get_string(pkg, mapping.description_key);
        if (!description.empty())
            g.push_back({ds, Term::iri(std::string(rdf::vocab::dct_description)),
                         Term::literal(description)});

        if (auto tags = pkg.find(mapping.tags_key); tags != pkg.end() && tags->is_array()) {
            for (const auto &tag : *tags) {
                std::string name;
                if (tag.is_string())
                    name = std::string(text::trim(tag.get<std::string>()));
                else if (tag.is_object())
                    name = get_string(tag, mapping.tag_name_key);
                if (!name.empty())
                    g.push_back({ds, Term::iri(std::string(rdf::vocab::dcat_keyword)),
                                 Term::literal(name)});
            }
        }

        std::string issued = get_string(pkg, mapping.issued_key);
        if (!issued.empty())
            g.push_back({ds, Term::iri(std::string(rdf::vocab::dct_issued)),
                         Term::literal(issued, std::string(rdf::vocab::xsd_date_time))});
        std::string modified = get_string(pkg, mapping.modified_key);
        if (!modified.empty())
            g.push_back({ds, Term::iri(std::string(rdf::vocab::dct_modified)),
                         Term::literal(modified, std::string(rdf::vocab::xsd_date_time))});

        if (auto org = pkg.find(mapping.organization_key);
            org != pkg.end() && org->is_object()) {
            std::string org_id = first_string(*org, {"id", "name"});
            std::string org_name = first_string(*org, {"title", "name"});
            if (!org_id.empty()) {
                Term publisher = Term::iri(base + "/organization/" + org_id);
                g.push_back({ds, Term::iri(std::string(rdf::vocab::dct_publisher)), publisher});
                if (!org_name.empty())
                    g.push_back({publisher, Term::iri(std::string(rdf::vocab::foaf_name)),
                                 Term::literal(org_name)});
            }
        }

        std::string contact = first_string(pkg, mapping.contact_keys);
        if (!contact.empty()) {
            Term point = Term::iri(ds.value + "#contactPoint");
            g.push_back({ds, Term::iri(std::string(rdf::vocab::dcat_contact_point)), point});
            g.push_back({point, Term::iri(std::string(rdf::vocab::rdf_type)),
                         Term::iri(std::string(rdf::vocab::vcard_kind))});
            g.push_back({point, Term::iri(std::string(rdf::vocab::vcard_fn)),
                         Term::literal(contact)});
            std::string email = get_string(pkg, mapping.contact_email_key);
            if (!email.empty())
                g.push_back({point, Term::iri(std::string(rdf::vocab::vcard_has_email)),
                             Term::iri("mailto:" + email)});
        }

        std::string license_iri = get_string(pkg, mapping.license_url_key);
        if (!license_iri.empty()) {
            auto parsed = url::parse(license_iri);
            if (!parsed || parsed->scheme.empty())
                license_iri.clear();
        }
        std::string license_text =
            license_iri.empty() ? first_string(pkg, mapping.license_text_keys) : std::string{};

        if (auto resources = pkg.find(mapping.resources_key);
            resources != pkg.end() && resources->is_array()) {
            for (const auto &res : *resources) {
                if (!res.is_object())
                    continue;
                std::string rid = get_string(res, mapping.resource_id_key);
                Term dist = rid.empty()
                                ? Term::blank("genid" + std::to_string(++genid))
                                : Term::iri(ds.value + "/resource/" + rid);
                g.push_back({ds, Term::iri(std::string(rdf::vocab::dcat_distribution)), dist});
                g.push_back({dist, Term::iri(std::string(rdf::vocab::rdf_type)),
                             Term::iri(std::string(rdf::vocab::dcat_distribution_cls))});
                std::string res_url = get_string(res, mapping.resource_url_key);
                if (!res_url.empty())
                    g.push_back({dist, Term::iri(std::string(rdf::vocab::dcat_access_url)),
                                 Term::iri(url::percent_encode_spaces(res_url))});
                std::string format = get_string(res, mapping.resource_format_key);
                if (!format.empty())
                    g.push_back({dist, Term::iri(std::string(rdf::vocab::dct_format)),
                                 Term::literal(format)});
                if (!license_iri.empty())
                    g.push_back({dist, Term::iri(std::string(rdf::vocab::dct_license)),
                                 Term::iri(license_iri)});
                else if (!license_text.empty())
                    g.push_back({dist, Term::iri(std::string(rdf::vocab::dct_license)),
                                 Term::literal(license_text)});
            }
        }
    }
    return rdf::normalize(std::move(g));
}

std::pair<model::CatalogGraph, RepairLog> harvest_dcat(const HarvestJob &job,
                                                       net::HttpClient &client) {
    net::RequestOptions options;
    options.timeout = job.timeout;
    options.follow_redirects = true;
    options.headers = {
        {"Accept", "text/turtle, application/n-triples;q=0.9, */*;q=0.1"},
        {"User-Agent", "odaudit/0.1"},
    };
    auto response = fetch_with_retries(client, job.portal.endpoint_url, options,
                                       job.max_retries, job.backoff_base);
    if (!response.ok() || response.status < 200 || response.status >= 300)
        throw_fetch_error("harvest of '" + job.portal.id + "' failed", response);

    auto repair = turtle::parse_with_repair(std::move(response.body), job.portal.endpoint_url);
    RepairLog log;
    log.removed_lines = repair.removed_lines;
    log.repaired_iris = repair.repaired_iris;
    log.source = job.portal.id;
    if (repair.graph.empty() && repair.removed_lines > 0)
        throw HarvestError("payload from '" + job.portal.id +
                           "' is not parseable as Turtle (format error)");

    model::CatalogGraph catalog;
    catalog.triples = std::move(repair.graph);
    catalog.source_portal = job.portal.id;
    catalog.crawl_date = job.crawl_date;

    std::set<std::string> typed_catalogs;
    std::set<std::string> linkers;
    std::set<Term> typed_datasets;
    std::set<Term> linked_datasets;
    for (const auto &t : catalog.triples) {
        if (t.p.value == rdf::vocab::rdf_type && t.o.is_iri()) {
            if (t.o.value == rdf::vocab::dcat_catalog && t.s.is_iri())
                typed_catalogs.insert(t.s.value);
            else if (t.o.value == rdf::vocab::dcat_dataset_cls)
                typed_datasets.insert(t.s);
        }
        if (t.p.value == rdf::vocab::dcat_dataset) {
            if (t.s.is_iri())
                linkers.insert(t.s.value);
            linked_datasets.insert(t.o);
        }
    }
    if (!typed_catalogs.empty()) {
        catalog.catalog_iri = *typed_catalogs.begin();
    } else if (!linkers.empty()) {
        catalog.catalog_iri = *linkers.begin();
    } else {
        catalog.catalog_iri = strip_trailing_slash(job.portal.endpoint_url) + "#catalog";
        Term node = Term::iri(catalog.catalog_iri);
        catalog.triples.push_back({node, Term::iri(std::string(rdf::vocab::rdf_type)),
                                   Term::iri(std::string(rdf::vocab::dcat_catalog))});
        for (const auto &ds : typed_datasets)
            if (!linked_datasets.count(ds))
                catalog.triples.push_back(
                    {node, Term::iri(std::string(rdf::vocab::dcat_dataset)), ds});
        catalog.triples = rdf::normalize(std::move(catalog.triples));
    }
    return {std::move(catalog), std::move(log)};
}

std::pair<model::CatalogGraph, RepairLog> harvest_json(const HarvestJob &job,
                                                       net::HttpClient &client,
                                                       const CkanFieldMapping &mapping) {
    net::RequestOptions options;
    options.timeout = job.timeout;
    options.follow_redirects = true;
    options.headers = {
        {"Accept", "application/json"},
        {"User-Agent", "odaudit/0.1"},
    };
    std::string base = strip_trailing_slash(job.portal.endpoint_url);
    bool dkan = job.portal.api_kind == model::ApiKind::dkan;

    json packages = json::array();
    for (std::size_t offset = 0;;) {
        std::string page_url =
            dkan ? base + "/api/3/action/current_package_list_with_resources?limit=" +
                       std::to_string(job.page_size) + "&offset=" + std::to_string(offset)
                 : base + "/api/3/action/package_search?rows=" +
                       std::to_string(job.page_size) + "&start=" + std::to_string(offset);
        auto response =
            fetch_with_retries(client, page_url, options, job.max_retries, job.backoff_base);
        if (!response.ok() || response.status < 200 || response.status >= 300)
            throw_fetch_error("harvest of '" + job.portal.id + "' failed", response);

        json body;
        try {
            body = json::parse(response.body);
        } catch (const json::exception &e) {
            throw HarvestError("portal '" + job.portal.id + "' returned invalid JSON: " +
                               e.what());
        }
        if (body.contains("success") && body.at("success").is_boolean() &&
            !body.at("success").get<bool>())
            throw HarvestError("portal '" + job.portal.id + "' API reported failure");

        json page = json::array();
        std::size_t total = 0;
        if (auto result = body.find("result"); result != body.end()) {
            if (result->is_object()) {
                if (auto rows = result->find("results");
                    rows != result->end() && rows->is_array())
                    page = *rows;
                total = result->value("count", static_cast<std::size_t>(0));
            } else if (result->is_array()) {
                page = *result;
                if (page.size() == 1 && page.at(0).is_array())
                    page = page.at(0);
            }
        }
        for (auto &pkg : page)
            packages.push_back(std::move(pkg));
        offset += page.size();
        if (page.empty() || page.size() < static_cast<std::size_t>(job.page_size))
            break;
        if (total > 0 && offset >= total)
            break;
    }

    RepairLog log;
    log.source = job.portal.id;
    model::CatalogGraph catalog;
    catalog.triples = packages_to_dcat(packages, job.portal, mapping, log.skipped_packages);
    catalog.source_portal = job.portal.id;
    catalog.crawl_date = job.crawl_date;
    catalog.catalog_iri = base + "#catalog";
    return {std::move(catalog), std::move(log)};
}

rdf::Graph rewrite_namespaces(rdf::Graph g,
                              const std::map<std::string, std::string> &rewrites) {
    if (rewrites.empty())
        return g;
    auto rewrite = [&](std::string &iri) {
        const std::string *from = nullptr;
        const std::string *to = nullptr;
        for (const auto &[key, value] : rewrites)
            if (iri.size() >= key.size() && iri.compare(0, key.size(), key) == 0 &&
                (!from || key.size() > from->size())) {
                from = &key;
                to = &value;
            }
        if (from)
            iri = *to + iri.substr(from->size());
    };
    for (auto &t : g) {
        if (t.s.is_iri())
            rewrite(t.s.value);
        if (t.p.is_iri())
            rewrite(t.p.value);
        if (t.o.is_iri())
            rewrite(t.o.value);
        if (t.o.is_literal() && !t.o.datatype.empty())
            rewrite(t.o.datatype);
    }
    return rdf::normalize(std::move(g));
}

std::vector<PortalOutcome> run_pipeline(model::LandscapeRegistry &registry,
                                        net::HttpClient &client,
                                        const PipelineOptions &options) {
    std::vector<const model::PortalDescriptor *> crawlable;
    for (const auto &portal : registry.portals)
        if (portal.api_kind != model::ApiKind::none)
            crawlable.push_back(&portal);

    std::vector<PortalOutcome> outcomes(crawlable.size());
    std::vector<std::optional<model::CatalogGraph>> harvested(crawlable.size());

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= crawlable.size())
                return;
            const auto &portal = *crawlable[i];
            PortalOutcome &outcome = outcomes[i];
            outcome.portal_id = portal.id;
            HarvestJob job;
            job.portal = portal;
            job.page_size = options.page_size;
            job.max_retries = options.max_retries;
            job.timeout = options.timeout;
            job.backoff_base = options.backoff_base;
            job.crawl_date = options.crawl_date;
            try {
                auto [catalog, log] = portal.api_kind == model::ApiKind::dcat
                                          ? harvest_dcat(job, client)
                                          : harvest_json(job, client, options.mapping);
                catalog.triples =
                    rewrite_namespaces(std::move(catalog.triples), options.namespace_rewrites);
                outcome.ok = true;
                outcome.repair = log;
                outcome.triple_count = catalog.triples.size();
                harvested[i] = std::move(catalog);
            } catch (const std::exception &e) {
                outcome.ok = false;
                outcome.error = e.what();
            }
        }
    };

    std::size_t thread_count = std::min<std::size_t>(
        std::max(1, options.concurrency), std::max<std::size_t>(1, crawlable.size()));
    std::vector<std::thread> threads;
    threads.reserve(thread_count);
    for (std::size_t i = 0; i < thread_count; ++i)
        threads.emplace_back(worker);
    for (auto &t : threads)
        t.join();

    for (std::size_t i = 0; i < crawlable.size(); ++i) {
        if (!harvested[i])
            continue;
        auto &catalogs = registry.merged_catalogs;
        catalogs.erase(std::remove_if(catalogs.begin(), catalogs.end(),
                                      [&](const model::CatalogGraph &c) {
                                          return c.source_portal == outcomes[i].portal_id;
                                      }),
                       catalogs.end());
        catalogs.push_back(std::move(*harvested[i]));
    }
    return outcomes;
}

} // namespace odaudit::ingest
