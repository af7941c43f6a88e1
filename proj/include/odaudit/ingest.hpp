// Harvesting: DCAT endpoints, CKAN/DKAN JSON APIs, repair accounting, and the
// multi-portal crawl pipeline.
#pragma once

#include "odaudit/http_client.hpp"
#include "odaudit/model.hpp"

#include <nlohmann/json.hpp>

#include <chrono>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace odaudit::ingest {

struct HarvestJob {
    model::PortalDescriptor portal;
    int page_size = 100;
    int max_retries = 3;
    std::chrono::milliseconds timeout{30000};
    std::chrono::milliseconds backoff_base{1000};
    model::Date crawl_date;
};

struct RepairLog {
    std::size_t removed_lines = 0;
    std::size_t repaired_iris = 0;
    std::size_t skipped_packages = 0;
    std::string source;
};

struct HarvestError : std::runtime_error {
    int status = 0;
    explicit HarvestError(const std::string &message, int status_ = 0)
        : std::runtime_error(message), status(status_) {}
};

// Field names used to translate CKAN/DKAN package JSON into DCAT triples.
// Serializable so deployments can adjust it without recompiling.
struct CkanFieldMapping {
    std::vector<std::string> title_keys{"title", "name"};
    std::string description_key = "notes";
    std::string identifier_key = "id";
    std::string tags_key = "tags";
    std::string tag_name_key = "name";
    std::string issued_key = "metadata_created";
    std::string modified_key = "metadata_modified";
    std::string resources_key = "resources";
    std::string resource_url_key = "url";
    std::string resource_format_key = "format";
    std::string resource_id_key = "id";
    std::string license_url_key = "license_url";
    std::vector<std::string> license_text_keys{"license_title", "license_id"};
    std::string organization_key = "organization";
    std::vector<std::string> contact_keys{"maintainer", "author"};
    std::string contact_email_key = "maintainer_email";

    static CkanFieldMapping from_json(const nlohmann::json &j);
    nlohmann::json to_json() const;
};

// Fetches the endpoint with a Turtle Accept header and parses line-tolerantly.
// Throws HarvestError when the endpoint stays unreachable after retries or the
// payload is wholly unparseable.
std::pair<model::CatalogGraph, RepairLog> harvest_dcat(const HarvestJob &job,
                                                       net::HttpClient &client);

// Pages through the CKAN/DKAN package API and converts packages to DCAT.
std::pair<model::CatalogGraph, RepairLog>
harvest_json(const HarvestJob &job, net::HttpClient &client,
             const CkanFieldMapping &mapping = {});

// Conversion core, exposed for golden-file testing without a server.
rdf::Graph packages_to_dcat(const nlohmann::json &packages,
                            const model::PortalDescriptor &portal,
                            const CkanFieldMapping &mapping, std::size_t &skipped);

// Replaces IRI prefixes per the rewrite map (longest prefix wins).
rdf::Graph rewrite_namespaces(rdf::Graph g, const std::map<std::string, std::string> &rewrites);

struct PipelineOptions {
    int concurrency = 4;
    int page_size = 100;
    int max_retries = 3;
    std::chrono::milliseconds timeout{30000};
    std::chrono::milliseconds backoff_base{1000};
    model::Date crawl_date;
    std::map<std::string, std::string> namespace_rewrites;
    CkanFieldMapping mapping;
};

struct PortalOutcome {
    std::string portal_id;
    bool ok = false;
    std::string error;
    RepairLog repair;
    std::size_t triple_count = 0;
};

// Harvests every api_kind != none portal concurrently (bounded) and appends
// the resulting catalogs to the registry. Failures are reported per portal;
// the pipeline always completes.
std::vector<PortalOutcome> run_pipeline(model::LandscapeRegistry &registry,
                                        net::HttpClient &client,
                                        const PipelineOptions &options);

} // namespace odaudit::ingest
