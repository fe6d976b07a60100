#pragma once

#include <stdexcept>
#include <string>

namespace hypertda {

// Fatal input-format problems (malformed CSV header, unusable config file).
struct FormatError : std::runtime_error {
    explicit FormatError(const std::string& what) : std::runtime_error(what) {}
};

// Invalid configuration values (bad field pair, campaign interval outside span, ...).
struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Asked for a dimension the complex was not materialized through.
struct DimensionError : std::logic_error {
    explicit DimensionError(const std::string& what) : std::logic_error(what) {}
};

// Closure subset enumeration would exceed the configured budget.
struct BudgetError : std::runtime_error {
    BudgetError(const std::string& what, std::string node)
        : std::runtime_error(what), offending_node(std::move(node)) {}
    std::string offending_node;
};

// Unknown node/vertex id.
struct LookupError : std::out_of_range {
    explicit LookupError(const std::string& what) : std::out_of_range(what) {}
};

// Mismatched inputs (e.g. a cycle that cannot have come from the given hypergraph).
struct ConsistencyError : std::logic_error {
    explicit ConsistencyError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace hypertda
