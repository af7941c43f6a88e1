#include "odaudit/report.hpp"

#include "odaudit/version.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <stdexcept>

namespace odaudit::report {

using nlohmann::ordered_json;

std::string format_ratio_value(std::uint64_t numerator, std::uint64_t denominator) {
    if (denominator == 0)
        return "0.000";
    std::uint64_t scaled = (numerator * 1000 + denominator / 2) / denominator;
    char buf[40];
    std::snprintf(buf, sizeof buf, "%llu.%03llu",
                  static_cast<unsigned long long>(scaled / 1000),
                  static_cast<unsigned long long>(scaled % 1000));
    return buf;
}

namespace {

double ratio_number(const metrics::Ratio &r) {
    if (r.denominator == 0)
        return 0.0;
    std::uint64_t scaled = (r.numerator * 1000 + r.denominator / 2) / r.denominator;
    return static_cast<double>(scaled) / 1000.0;
}

double round6(double v) {
    double r = std::round(v * 1e6) / 1e6;
    return r == 0.0 ? 0.0 : r;
}

ordered_json ratio_json(const metrics::Ratio &r) {
    ordered_json j;
    j["numerator"] = r.numerator;
    j["denominator"] = r.denominator;
    j["value"] = ratio_number(r);
    return j;
}

ordered_json stats_json(const metrics::PropertyStats &s) {
    ordered_json j;
    j["count"] = s.count;
    j["mean"] = round6(s.mean);
    j["stddev"] = round6(s.stddev);
    j["min"] = round6(s.min);
    j["max"] = round6(s.max);
    return j;
}

ordered_json summary_json(const metrics::Summary &s) {
    ordered_json j;
    j["count"] = s.count;
    j["mean"] = round6(s.mean);
    j["min"] = round6(s.min);
    j["q1"] = round6(s.q1);
    j["median"] = round6(s.median);
    j["q3"] = round6(s.q3);
    j["max"] = round6(s.max);
    return j;
}

ordered_json skipped_json(const std::string &reason) {
    ordered_json j;
    j["skipped"] = true;
    j["reason"] = reason;
    return j;
}

ordered_json freshness_json(const metrics::FreshnessSummary &f) {
    ordered_json j;
    j["issued_months"] = summary_json(f.issued_months);
    j["modified_months"] = summary_json(f.modified_months);
    j["missing_issued"] = f.missing_issued;
    j["missing_modified"] = f.missing_modified;
    j["clamped_future_timestamps"] = f.clamped;
    return j;
}

} // namespace

QualityReport assemble(const Inputs &inputs, const Content &content) {
    if (!content.key_data)
        throw std::invalid_argument("report assembly requires key data");

    ordered_json j;
    j["schema_version"] = std::string(kSchemaVersion);
    j["tool"] = {{"name", std::string(kToolName)}, {"version", std::string(kVersion)}};
    j["landscape_id"] = inputs.landscape_id;

    ordered_json in;
    in["registry_dir"] = inputs.registry_dir;
    in["catalog_files"] = inputs.catalog_files;
    in["crawl_dates"] = inputs.crawl_dates;
    in["portal_count"] = inputs.portal_count;
    in["catalog_count"] = inputs.catalog_count;
    in["triple_count"] = inputs.triple_count;
    in["config_hash"] = inputs.config_hash;
    j["inputs"] = in;

    {
        const auto &k = *content.key_data;
        ordered_json kd;
        kd["dataset_count"] = k.dataset_count;
        kd["distribution_count"] = k.distribution_count;
        kd["access_url_count"] = k.access_url_count;
        kd["catalog_count"] = k.catalog_count;
        ordered_json means;
        means["divisor"] = k.catalog_count;
        means["datasets"] = ratio_json(k.mean_datasets);
        means["distributions"] = ratio_json(k.mean_distributions);
        means["access_urls"] = ratio_json(k.mean_access_urls);
        kd["per_catalog_means"] = means;
        j["key_data"] = kd;
    }

    if (content.uniqueness) {
        const auto &u = *content.uniqueness;
        ordered_json uj;
        ordered_json props;
        for (const auto &[name, stats] : u.per_property)
            props[name] = stats_json(stats);
        uj["per_property"] = props;
        uj["compound"] = stats_json(u.compound);
        uj["duplicates_removed"] = u.duplicates_removed;
        uj["excluded_without_properties"] = u.excluded_no_properties;
        j["uniqueness"] = uj;
    } else {
        j["uniqueness"] = skipped_json("not computed");
    }

    if (content.interoperability) {
        ordered_json ij;
        ij["open_ratio"] = ratio_json(content.interoperability->open_ratio);
        ij["dcat_ratio"] = ratio_json(content.interoperability->dcat_ratio);
        ij["open_format_ratio"] = ratio_json(content.interoperability->open_format_ratio);
        j["interoperability"] = ij;
    } else {
        j["interoperability"] = skipped_json("not computed");
    }

    if (content.licenses) {
        ordered_json lj;
        lj["license_ratio"] = ratio_json(content.licenses->license_ratio);
        lj["open_license_ratio"] = ratio_json(content.licenses->open_license_ratio);
        j["license"] = lj;
    } else {
        j["license"] = skipped_json("not computed");
    }

    {
        ordered_json fj;
        if (content.replica) {
            ordered_json rj;
            rj["dataset_ratio"] = ratio_json(content.replica->dataset_ratio);
            rj["same_dataset_variant"] = ratio_json(content.replica->same_dataset_variant);
            fj["replica"] = rj;
        } else {
            fj["replica"] = skipped_json("not computed");
        }
        if (content.keyword_ic) {
            const auto &ic = *content.keyword_ic;
            ordered_json icj;
            icj["mean_normalized"] = round6(ic.mean_normalized);
            icj["normalized_summary"] = summary_json(ic.normalized_summary);
            icj["datasets_without_keywords"] = ic.keywordless;
            icj["degenerate_scale"] = ic.degenerate;
            fj["keyword_ic"] = icj;
        } else {
            fj["keyword_ic"] = skipped_json("not computed");
        }
        if (content.accessibility) {
            const auto &a = *content.accessibility;
            ordered_json aj;
            aj["distribution_ratio"] = ratio_json(a.distribution_ratio);
            aj["url_level_ratio"] = ratio_json(a.url_level_ratio);
            aj["status_histogram"] = a.histogram;
            aj["probed_urls"] = a.probed_urls;
            aj["cache_hits"] = a.cache_hits;
            fj["accessibility"] = aj;
        } else {
            fj["accessibility"] = skipped_json(content.accessibility_skip_reason.empty()
                                                   ? "not computed"
                                                   : content.accessibility_skip_reason);
        }
        j["findability"] = fj;
    }

    if (content.completeness) {
        ordered_json cj;
        cj["mandatory"] = ratio_json(content.completeness->mandatory);
        cj["recommended"] = ratio_json(content.completeness->recommended);
        j["completeness"] = cj;
    } else {
        j["completeness"] = skipped_json("not computed");
    }

    if (content.freshness_all) {
        ordered_json fj;
        fj["all"] = freshness_json(*content.freshness_all);
        if (!content.freshness_per_portal.empty()) {
            ordered_json per;
            for (const auto &[portal, summary] : content.freshness_per_portal)
                per[portal] = freshness_json(summary);
            fj["per_portal"] = per;
        }
        j["freshness"] = fj;
    } else {
        j["freshness"] = skipped_json("not computed");
    }

    if (content.location) {
        ordered_json lj;
        ordered_json levels;
        for (const auto &[level, ratio] : content.location->per_level)
            levels["level_" + std::to_string(level)] = ratio_json(ratio);
        lj["per_level"] = levels;
        lj["unmappable_codes"] = content.location->unmappable;
        lj["portals_without_code"] = content.location->missing;
        j["location_coverage"] = lj;
    } else {
        j["location_coverage"] = skipped_json(content.location_skip_reason.empty()
                                                  ? "no region table supplied"
                                                  : content.location_skip_reason);
    }

    if (content.namespaces) {
        ordered_json nj;
        nj["counts"] = content.namespaces->counts;
        nj["relative_iris"] = content.namespaces->relative_iris;
        j["namespaces"] = nj;
    } else {
        j["namespaces"] = skipped_json("not computed");
    }

    if (content.format_histogram) {
        j["format_histogram"] = *content.format_histogram;
    } else {
        j["format_histogram"] = skipped_json("not computed");
    }

    if (content.topics) {
        const auto &t = *content.topics;
        ordered_json tj;
        tj["k"] = t.k;
        tj["iterations"] = t.iterations;
        tj["seed"] = t.seed;
        tj["alpha"] = round6(t.alpha);
        tj["beta"] = round6(t.beta);
        tj["perplexity"] = round6(t.perplexity);
        tj["documents"] = t.documents;
        tj["vocabulary"] = t.vocabulary;
        tj["dropped_documents"] = t.dropped_documents;
        tj["field"] = t.field;
        tj["stopword_list"] = t.stopword_list;
        ordered_json topics_array = ordered_json::array();
        for (std::size_t i = 0; i < t.terms.size(); ++i) {
            ordered_json topic;
            topic["topic"] = i;
            ordered_json terms = ordered_json::array();
            for (const auto &term : t.terms[i]) {
                ordered_json tt;
                tt["term"] = term.term;
                tt["weight"] = round6(term.weight);
                tt["count"] = term.corpus_count;
                terms.push_back(tt);
            }
            topic["terms"] = terms;
            topics_array.push_back(topic);
        }
        tj["top_terms"] = topics_array;
        j["topics"] = tj;
    } else {
        j["topics"] = skipped_json(content.topics_skip_reason.empty()
                                       ? "not computed"
                                       : content.topics_skip_reason);
    }

    {
        ordered_json dj;
        dj["tallies"] = content.tallies;
        dj["notes"] = content.notes;
        j["diagnostics"] = dj;
    }

    return QualityReport{std::move(j)};
}

std::string render_json(const QualityReport &report) { return report.body.dump(2) + "\n"; }

QualityReport parse_json(std::string_view content) {
    ordered_json j = ordered_json::parse(content);
    if (!j.is_object())
        throw std::invalid_argument("report JSON must be an object");
    return QualityReport{std::move(j)};
}

namespace {

std::string fixed3(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

std::string ratio_cell(const ordered_json &node) {
    if (!node.is_object() || !node.contains("numerator"))
        return "-";
    std::uint64_t num = node.value("numerator", 0ULL);
    std::uint64_t den = node.value("denominator", 0ULL);
    return format_ratio_value(num, den) + " (" + std::to_string(num) + "/" +
           std::to_string(den) + ")";
}

bool skipped(const ordered_json &node) {
    return node.is_object() && node.value("skipped", false);
}

void section_or_skip(std::string &md, const ordered_json &body, const char *key,
                     const char *heading, const std::function<void(const ordered_json &)> &fn) {
    if (!body.contains(key))
        return;
    md += "\n## ";
    md += heading;
    md += "\n\n";
    const auto &node = body.at(key);
    if (skipped(node)) {
        md += "Skipped: " + node.value("reason", std::string("unknown")) + "\n";
        return;
    }
    fn(node);
}

void summary_row(std::string &md, const std::string &label, const ordered_json &s) {
    md += "| " + label + " | " + std::to_string(s.value("count", 0ULL)) + " | " +
          fixed3(s.value("mean", 0.0)) + " | " + fixed3(s.value("min", 0.0)) + " | " +
          fixed3(s.value("q1", 0.0)) + " | " + fixed3(s.value("median", 0.0)) + " | " +
          fixed3(s.value("q3", 0.0)) + " | " + fixed3(s.value("max", 0.0)) + " |\n";
}

} // namespace

std::string render_markdown(const QualityReport &report) {
    const auto &body = report.body;
    std::string md;
    md += "# Open data catalog quality report\n\n";
    md += "- Landscape: " + body.value("landscape_id", std::string("(unnamed)")) + "\n";
    if (body.contains("tool"))
        md += "- Tool: " + body.at("tool").value("name", std::string()) + " " +
              body.at("tool").value("version", std::string()) + "\n";
    if (body.contains("inputs")) {
        const auto &in = body.at("inputs");
        md += "- Catalogs: " + std::to_string(in.value("catalog_count", 0ULL)) +
              ", portals: " + std::to_string(in.value("portal_count", 0ULL)) +
              ", triples: " + std::to_string(in.value("triple_count", 0ULL)) + "\n";
        md += "- Config hash: " + in.value("config_hash", std::string()) + "\n";
    }

    section_or_skip(md, body, "key_data", "Key data", [&](const ordered_json &k) {
        md += "| Measure | Count | Mean per catalog |\n|---|---|---|\n";
        const auto &means = k.at("per_catalog_means");
        md += "| Datasets | " + std::to_string(k.value("dataset_count", 0ULL)) + " | " +
              ratio_cell(means.at("datasets")) + " |\n";
        md += "| Distributions | " + std::to_string(k.value("distribution_count", 0ULL)) +
              " | " + ratio_cell(means.at("distributions")) + " |\n";
        md += "| Access URLs | " + std::to_string(k.value("access_url_count", 0ULL)) + " | " +
              ratio_cell(means.at("access_urls")) + " |\n";
        md += "\nMeans divide by " + std::to_string(k.value("catalog_count", 0ULL)) +
              " catalog node(s).\n";
    });

    section_or_skip(md, body, "uniqueness", "Uniqueness", [&](const ordered_json &u) {
        md += "| Property | Count | Mean | Stddev | Min | Max |\n|---|---|---|---|---|---|\n";
        auto row = [&](const std::string &label, const ordered_json &s) {
            md += "| " + label + " | " + std::to_string(s.value("count", 0ULL)) + " | " +
                  fixed3(s.value("mean", 0.0)) + " | " + fixed3(s.value("stddev", 0.0)) +
                  " | " + fixed3(s.value("min", 0.0)) + " | " + fixed3(s.value("max", 0.0)) +
                  " |\n";
        };
        for (const auto &[name, stats] : u.at("per_property").items())
            row(name, stats);
        row("compound", u.at("compound"));
        md += "\nDuplicates removed: " + std::to_string(u.value("duplicates_removed", 0ULL)) +
              "\n";
    });

    section_or_skip(md, body, "interoperability", "Interoperability",
                    [&](const ordered_json &i) {
                        md += "| Ratio | Value |\n|---|---|\n";
                        md += "| Open API | " + ratio_cell(i.at("open_ratio")) + " |\n";
                        md += "| Native DCAT | " + ratio_cell(i.at("dcat_ratio")) + " |\n";
                        md += "| Open format | " + ratio_cell(i.at("open_format_ratio")) +
                              " |\n";
                    });

    section_or_skip(md, body, "license", "Licensing", [&](const ordered_json &l) {
        md += "| Ratio | Value |\n|---|---|\n";
        md += "| Licensed distributions | " + ratio_cell(l.at("license_ratio")) + " |\n";
        md += "| Open-licensed distributions | " + ratio_cell(l.at("open_license_ratio")) +
              " |\n";
    });

    section_or_skip(md, body, "findability", "Findability", [&](const ordered_json &f) {
        if (f.contains("replica") && !skipped(f.at("replica"))) {
            md += "| Replica ratio | Value |\n|---|---|\n";
            md += "| Cross-catalog URL | " + ratio_cell(f.at("replica").at("dataset_ratio")) +
                  " |\n";
            md += "| Same-dataset variant | " +
                  ratio_cell(f.at("replica").at("same_dataset_variant")) + " |\n\n";
        }
        if (f.contains("keyword_ic") && !skipped(f.at("keyword_ic"))) {
            md += "Mean normalized keyword information content: " +
                  fixed3(f.at("keyword_ic").value("mean_normalized", 0.0)) + "\n\n";
        }
        if (f.contains("accessibility")) {
            const auto &a = f.at("accessibility");
            if (skipped(a)) {
                md += "Accessibility skipped: " + a.value("reason", std::string()) + "\n";
            } else {
                md += "| Accessibility | Value |\n|---|---|\n";
                md += "| Distribution level | " + ratio_cell(a.at("distribution_ratio")) +
                      " |\n";
                md += "| URL level | " + ratio_cell(a.at("url_level_ratio")) + " |\n\n";
                md += "| Status class | Count |\n|---|---|\n";
                for (const auto &[cls, count] : a.at("status_histogram").items())
                    md += "| " + cls + " | " + std::to_string(count.get<std::uint64_t>()) +
                          " |\n";
            }
        }
    });

    section_or_skip(md, body, "completeness", "Completeness", [&](const ordered_json &c) {
        md += "| Fields | Value |\n|---|---|\n";
        md += "| Mandatory | " + ratio_cell(c.at("mandatory")) + " |\n";
        md += "| Recommended | " + ratio_cell(c.at("recommended")) + " |\n";
    });

    section_or_skip(md, body, "freshness", "Freshness (months)", [&](const ordered_json &f) {
        md += "| Scope | Count | Mean | Min | Q1 | Median | Q3 | Max |\n"
              "|---|---|---|---|---|---|---|---|\n";
        if (f.contains("all")) {
            summary_row(md, "all: issued", f.at("all").at("issued_months"));
            summary_row(md, "all: modified", f.at("all").at("modified_months"));
        }
        if (f.contains("per_portal"))
            for (const auto &[portal, summary] : f.at("per_portal").items()) {
                summary_row(md, portal + ": issued", summary.at("issued_months"));
                summary_row(md, portal + ": modified", summary.at("modified_months"));
            }
    });

    section_or_skip(md, body, "location_coverage", "Location coverage",
                    [&](const ordered_json &l) {
                        md += "| Level | Coverage |\n|---|---|\n";
                        for (const auto &[level, ratio] : l.at("per_level").items())
                            md += "| " + level + " | " + ratio_cell(ratio) + " |\n";
                    });

    section_or_skip(md, body, "namespaces", "Namespaces", [&](const ordered_json &n) {
        std::vector<std::pair<std::uint64_t, std::string>> rows;
        for (const auto &[ns, count] : n.at("counts").items())
            rows.emplace_back(count.get<std::uint64_t>(), ns);
        std::sort(rows.begin(), rows.end(), [](const auto &a, const auto &b) {
            if (a.first != b.first)
                return a.first > b.first;
            return a.second < b.second;
        });
        md += "| Namespace | Occurrences |\n|---|---|\n";
        std::size_t limit = std::min<std::size_t>(rows.size(), 15);
        for (std::size_t i = 0; i < limit; ++i)
            md += "| " + rows[i].second + " | " + std::to_string(rows[i].first) + " |\n";
    });

    section_or_skip(md, body, "format_histogram", "Formats", [&](const ordered_json &f) {
        std::vector<std::pair<std::uint64_t, std::string>> rows;
        for (const auto &[format, count] : f.items())
            rows.emplace_back(count.get<std::uint64_t>(), format);
        std::sort(rows.begin(), rows.end(), [](const auto &a, const auto &b) {
            if (a.first != b.first)
                return a.first > b.first;
            return a.second < b.second;
        });
        md += "| Format | Distributions |\n|---|---|\n";
        std::size_t limit = std::min<std::size_t>(rows.size(), 15);
        for (std::size_t i = 0; i < limit; ++i)
            md += "| " + rows[i].second + " | " + std::to_string(rows[i].first) + " |\n";
    });

    section_or_skip(md, body, "topics", "Topics", [&](const ordered_json &t) {
        md += "k=" + std::to_string(t.value("k", 0u)) +
              ", iterations=" + std::to_string(t.value("iterations", 0u)) +
              ", perplexity=" + fixed3(t.value("perplexity", 0.0)) + "\n\n";
        if (t.contains("top_terms"))
            for (const auto &topic : t.at("top_terms")) {
                md += "- Topic " + std::to_string(topic.value("topic", 0ULL)) + ": ";
                bool first = true;
                for (const auto &term : topic.at("terms")) {
                    if (!first)
                        md += ", ";
                    md += term.value("term", std::string());
                    first = false;
                }
                md += "\n";
            }
    });

    if (body.contains("diagnostics")) {
        md += "\n## Diagnostics\n\n";
        const auto &d = body.at("diagnostics");
        if (d.contains("tallies"))
            for (const auto &[key, value] : d.at("tallies").items())
                md += "- " + key + ": " + std::to_string(value.get<std::uint64_t>()) + "\n";
        if (d.contains("notes"))
            for (const auto &note : d.at("notes"))
                md += "- " + note.get<std::string>() + "\n";
    }
    return md;
}

namespace {

std::string csv_of_histogram(const ordered_json &hist, const char *label) {
    std::string out = std::string(label) + ",count\n";
    if (!hist.is_object())
        return out;
    std::vector<std::pair<std::uint64_t, std::string>> rows;
    for (const auto &[key, count] : hist.items())
        rows.emplace_back(count.get<std::uint64_t>(), key);
    std::sort(rows.begin(), rows.end(), [](const auto &a, const auto &b) {
        if (a.first != b.first)
            return a.first > b.first;
        return a.second < b.second;
    });
    for (const auto &[count, key] : rows)
        out += key + "," + std::to_string(count) + "\n";
    return out;
}

void boxplot_row(std::string &out, const std::string &scope, const std::string &field,
                 const ordered_json &s) {
    out += scope + "," + field + "," + std::to_string(s.value("count", 0ULL)) + "," +
           fixed3(s.value("mean", 0.0)) + "," + fixed3(s.value("min", 0.0)) + "," +
           fixed3(s.value("q1", 0.0)) + "," + fixed3(s.value("median", 0.0)) + "," +
           fixed3(s.value("q3", 0.0)) + "," + fixed3(s.value("max", 0.0)) + "\n";
}

} // namespace

std::map<std::string, std::string> render_files(const QualityReport &report,
                                                const std::string &format) {
    std::map<std::string, std::string> files;
    if (format == "json") {
        files["report.json"] = render_json(report);
        return files;
    }
    if (format == "markdown") {
        files["report.md"] = render_markdown(report);
        return files;
    }
    if (format != "csv-bundle")
        throw std::invalid_argument("unknown report format '" + format + "'");

    const auto &body = report.body;

    std::string freshness = "scope,field,count,mean,min,q1,median,q3,max\n";
    if (body.contains("freshness") && !skipped(body.at("freshness"))) {
        const auto &f = body.at("freshness");
        if (f.contains("all")) {
            boxplot_row(freshness, "all", "issued", f.at("all").at("issued_months"));
            boxplot_row(freshness, "all", "modified", f.at("all").at("modified_months"));
        }
        if (f.contains("per_portal"))
            for (const auto &[portal, summary] : f.at("per_portal").items()) {
                boxplot_row(freshness, portal, "issued", summary.at("issued_months"));
                boxplot_row(freshness, portal, "modified", summary.at("modified_months"));
            }
    }
    files["plots/freshness_boxplot.csv"] = freshness;

    std::string ic = "scope,count,mean,min,q1,median,q3,max\n";
    if (body.contains("findability")) {
        const auto &f = body.at("findability");
        if (f.contains("keyword_ic") && !skipped(f.at("keyword_ic")) &&
            f.at("keyword_ic").contains("normalized_summary")) {
            const auto &s = f.at("keyword_ic").at("normalized_summary");
            ic += "all," + std::to_string(s.value("count", 0ULL)) + "," +
                  fixed3(s.value("mean", 0.0)) + "," + fixed3(s.value("min", 0.0)) + "," +
                  fixed3(s.value("q1", 0.0)) + "," + fixed3(s.value("median", 0.0)) + "," +
                  fixed3(s.value("q3", 0.0)) + "," + fixed3(s.value("max", 0.0)) + "\n";
        }
    }
    files["plots/keyword_ic_boxplot.csv"] = ic;

    if (body.contains("format_histogram") && !skipped(body.at("format_histogram")))
        files["plots/format_histogram.csv"] =
            csv_of_histogram(body.at("format_histogram"), "format");
    else
        files["plots/format_histogram.csv"] = "format,count\n";

    std::string status = "status,count\n";
    if (body.contains("findability")) {
        const auto &f = body.at("findability");
        if (f.contains("accessibility") && !skipped(f.at("accessibility")) &&
            f.at("accessibility").contains("status_histogram"))
            status = csv_of_histogram(f.at("accessibility").at("status_histogram"), "status");
    }
    files["plots/status_histogram.csv"] = status;
    return files;
}

} // namespace odaudit::report
