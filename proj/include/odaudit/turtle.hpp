// Turtle reading and deterministic Turtle/N-Triples writing.
//
// The strict parser covers the constructs found in DCAT catalog exports:
// prefix and base directives in both Turtle and SPARQL spelling, prefixed
// names with local escapes, anonymous and labeled blank nodes, property
// lists, collections, and every literal form. Errors carry the line of the
// offending token so malformed dumps can be repaired line by line.
#pragma once

#include "odaudit/rdf.hpp"

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace odaudit::turtle {

struct TurtleError : std::runtime_error {
    std::size_t line;
    TurtleError(std::size_t line_, const std::string &message)
        : std::runtime_error(message), line(line_) {}
};

struct ParseOptions {
    std::string base;
    // Replace raw spaces inside <...> IRIs with %20 instead of failing.
    bool repair_iri_spaces = false;
};

struct ParseStats {
    std::size_t repaired_iris = 0;
};

// Throws TurtleError on the first syntax problem.
rdf::Graph parse(std::string_view content, const ParseOptions &options = {},
                 ParseStats *stats = nullptr);

struct RepairResult {
    rdf::Graph graph;
    std::size_t removed_lines = 0;
    std::size_t repaired_iris = 0;
    std::vector<std::string> messages;
};

// Strict parse in a loop: each failure blanks the offending line and retries,
// so one bad statement does not discard an otherwise usable dump.
RepairResult parse_with_repair(std::string content, const std::string &base = {});

// Sorted by subject, predicate, object with a fixed prefix table. Two graphs
// with equal triple sets serialize to identical bytes.
std::string to_turtle(const rdf::Graph &g);
std::string to_ntriples(const rdf::Graph &g);

} // namespace odaudit::turtle
