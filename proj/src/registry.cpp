#include "odaudit/registry.hpp"

#include "odaudit/text.hpp"
#include "odaudit/turtle.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cctype>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace odaudit::registry {

namespace fs = std::filesystem;
using nlohmann::json;

std::string read_file(const fs::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot read " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const fs::path &path, std::string_view content) {
    if (path.has_parent_path())
        fs::create_directories(path.parent_path());
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw std::runtime_error("cannot write " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
    }
    fs::rename(tmp, path);
}

std::string sanitize_stem(std::string_view stem) {
    std::string out;
    for (char c : stem) {
        if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-')
            out.push_back(c);
        else
            out.push_back('_');
    }
    if (out.empty())
        out = "catalog";
    return out;
}

rdf::Graph scope_blank_labels(rdf::Graph g, const std::string &scope) {
    for (auto &t : g) {
        if (t.s.is_blank())
            t.s.value = scope + "_" + t.s.value;
        if (t.o.is_blank())
            t.o.value = scope + "_" + t.o.value;
    }
    return rdf::normalize(std::move(g));
}

void save_crawl_info(const Paths &paths, const CrawlInfo &info) {
    json j;
    j["landscape_id"] = info.landscape_id;
    json dates = json::object();
    for (const auto &[portal, date] : info.crawl_dates)
        dates[portal] = date.str();
    j["crawl_dates"] = dates;
    write_file(paths.crawl_json(), j.dump(2) + "\n");
}

std::optional<CrawlInfo> load_crawl_info(const Paths &paths) {
    std::error_code ec;
    if (!fs::exists(paths.crawl_json(), ec))
        return std::nullopt;
    CrawlInfo info;
    try {
        json j = json::parse(read_file(paths.crawl_json()));
        info.landscape_id = j.value("landscape_id", "");
        if (j.contains("crawl_dates"))
            for (const auto &[portal, value] : j.at("crawl_dates").items())
                if (auto d = model::Date::parse(value.get<std::string>()))
                    info.crawl_dates[portal] = *d;
    } catch (const json::exception &) {
        return std::nullopt;
    }
    return info;
}

void save_catalog(const Paths &paths, const std::string &portal_id, const rdf::Graph &graph) {
    write_file(paths.catalog_ttl(sanitize_stem(portal_id)), turtle::to_turtle(graph));
}

namespace {

std::optional<model::Date> latest_date_literal(const rdf::Graph &g) {
    std::optional<model::Date> latest;
    for (const auto &t : g) {
        if (!t.o.is_literal())
            continue;
        if (t.p.value != rdf::vocab::dct_modified && t.p.value != rdf::vocab::dct_issued)
            continue;
        auto d = model::Date::parse(t.o.value);
        if (d && (!latest || *latest < *d))
            latest = d;
    }
    return latest;
}

std::string detect_catalog_iri(const rdf::Graph &g) {
    std::set<std::string> typed;
    for (const auto &t : g)
        if (t.p.value == rdf::vocab::rdf_type && t.s.is_iri() && t.o.is_iri() &&
            t.o.value == rdf::vocab::dcat_catalog)
            typed.insert(t.s.value);
    if (!typed.empty())
        return *typed.begin();
    std::set<std::string> linkers;
    for (const auto &t : g)
        if (t.p.value == rdf::vocab::dcat_dataset && t.s.is_iri())
            linkers.insert(t.s.value);
    if (!linkers.empty())
        return *linkers.begin();
    return {};
}

} // namespace

LoadResult load(const Paths &paths, std::optional<model::Date> fallback_date) {
    LoadResult result;
    auto crawl_info = load_crawl_info(paths);
    if (crawl_info)
        result.registry.landscape_id = crawl_info->landscape_id;

    std::map<std::string, model::PortalDescriptor> portals_by_id;
    std::error_code ec;
    if (fs::exists(paths.portals_csv(), ec)) {
        auto list = model::parse_portal_list(read_file(paths.portals_csv()));
        if (result.registry.landscape_id.empty())
            result.registry.landscape_id = list.landscape_id;
        for (auto &p : list.portals) {
            std::string id = p.id;
            portals_by_id.emplace(std::move(id), std::move(p));
        }
    }

    std::vector<fs::path> files;
    if (fs::exists(paths.catalogs_dir(), ec))
        for (const auto &entry : fs::directory_iterator(paths.catalogs_dir()))
            if (entry.is_regular_file() && entry.path().extension() == ".ttl")
                files.push_back(entry.path());
    std::sort(files.begin(), files.end());

    std::set<std::string> used_scopes;
    for (const auto &file : files) {
        std::string stem = file.stem().string();
        std::string scope = sanitize_stem(stem);
        int suffix = 2;
        while (!used_scopes.insert(scope).second)
            scope = sanitize_stem(stem) + "_" + std::to_string(suffix++);
        result.catalog_files.push_back(stem);

        auto repair = turtle::parse_with_repair(read_file(file));
        if (repair.removed_lines > 0)
            result.notes.push_back(
                {stem, "dropped " + std::to_string(repair.removed_lines) +
                           " unparseable line(s) while loading"});
        if (repair.repaired_iris > 0)
            result.notes.push_back(
                {stem, "repaired " + std::to_string(repair.repaired_iris) + " IRI(s)"});

        model::CatalogGraph catalog;
        catalog.triples = scope_blank_labels(std::move(repair.graph), scope);
        catalog.source_portal = stem;
        catalog.catalog_iri = detect_catalog_iri(catalog.triples);

        if (crawl_info && crawl_info->crawl_dates.count(stem)) {
            catalog.crawl_date = crawl_info->crawl_dates.at(stem);
        } else if (fallback_date) {
            catalog.crawl_date = *fallback_date;
        } else if (auto latest = latest_date_literal(catalog.triples)) {
            catalog.crawl_date = *latest;
            result.notes.push_back(
                {stem, "no crawl date recorded; using latest metadata date " + latest->str()});
        } else {
            catalog.crawl_date = model::Date{};
            result.notes.push_back({stem, "no crawl date recorded; using 1970-01-01"});
        }

        if (!portals_by_id.count(stem)) {
            model::PortalDescriptor synthesized;
            synthesized.id = stem;
            synthesized.api_kind = model::ApiKind::none;
            synthesized.landscape_id = result.registry.landscape_id;
            portals_by_id.emplace(stem, std::move(synthesized));
            result.notes.push_back({stem, "no portal row; synthesized descriptor"});
        }
        result.registry.merged_catalogs.push_back(std::move(catalog));
    }

    result.registry.portals.reserve(portals_by_id.size());
    for (auto &[id, portal] : portals_by_id)
        result.registry.portals.push_back(std::move(portal));
    return result;
}

} // namespace odaudit::registry
