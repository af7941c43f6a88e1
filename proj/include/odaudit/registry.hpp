// Registry directory layout and persistence.
//
//   <registry>/portals.csv       portal list snapshot taken at crawl time
//   <registry>/catalogs/*.ttl    one Turtle file per portal (or foreign dump)
//   <registry>/merged.ttl        deterministic merge of all catalog files
//   <registry>/crawl.json        crawl dates and landscape id
//   <registry>/probes.jsonl      probe cache (see accessibility)
//   <registry>/.lock             advisory lock taken by CLI commands
#pragma once

#include "odaudit/model.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace odaudit::registry {

struct Paths {
    std::filesystem::path root;
    std::filesystem::path portals_csv() const { return root / "portals.csv"; }
    std::filesystem::path catalogs_dir() const { return root / "catalogs"; }
    std::filesystem::path catalog_ttl(const std::string &portal_id) const {
        return catalogs_dir() / (portal_id + ".ttl");
    }
    std::filesystem::path merged_ttl() const { return root / "merged.ttl"; }
    std::filesystem::path crawl_json() const { return root / "crawl.json"; }
    std::filesystem::path probes_jsonl() const { return root / "probes.jsonl"; }
    std::filesystem::path lock_file() const { return root / ".lock"; }
};

struct CrawlInfo {
    std::string landscape_id;
    std::map<std::string, model::Date> crawl_dates; // portal id → date
};

struct LoadNote {
    std::string file;
    std::string message;
};

struct LoadResult {
    model::LandscapeRegistry registry;
    std::vector<LoadNote> notes;
    std::vector<std::string> catalog_files; // stems, sorted
};

// Filesystem-safe, blank-label-safe version of a file stem.
std::string sanitize_stem(std::string_view stem);

// Prefixes every blank label with "<scope>_" so labels never collide when
// graphs from several files are merged.
rdf::Graph scope_blank_labels(rdf::Graph g, const std::string &scope);

void save_crawl_info(const Paths &paths, const CrawlInfo &info);
std::optional<CrawlInfo> load_crawl_info(const Paths &paths);

// Writes the graph as deterministic Turtle under catalogs/<portal_id>.ttl.
void save_catalog(const Paths &paths, const std::string &portal_id, const rdf::Graph &graph);

// Loads every catalogs/*.ttl with scoped blank labels. Crawl date per file:
// crawl.json entry, else `fallback_date`, else the latest issued/modified
// literal in the graph, else 1970-01-01 (noted). Portals come from
// portals.csv when present; files without a portal row get a synthesized
// api_kind=none descriptor so foreign dumps are analyzable.
LoadResult load(const Paths &paths, std::optional<model::Date> fallback_date = std::nullopt);

std::string read_file(const std::filesystem::path &path);
void write_file(const std::filesystem::path &path, std::string_view content);

} // namespace odaudit::registry
