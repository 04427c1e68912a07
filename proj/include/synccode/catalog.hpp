#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "synccode/code.hpp"
#include "synccode/verifier.hpp"

namespace synccode {

/// One catalogued code. n is the verified reliability (empty for soft codes).
struct CatalogEntry {
    int d;
    int k;
    Reliability n;
    std::string source;  // native-solver | oracle | imported | paper
    Code code;
    std::optional<std::string> timestamp;
};

/// Line format: `d=<int> k=<int> n=<int|none> src=<tag> code=<string> [ts=<stamp>]`.
/// Comments start with '#', blank lines are ignored.
std::string format_entry(const CatalogEntry& entry);
CatalogEntry parse_entry(const std::string& line);

/// Build an entry from a code: d, k and n are computed, never trusted.
CatalogEntry make_entry(const Code& code, std::string source,
                        std::optional<std::string> timestamp = std::nullopt);

/// Every entry is re-verified on load: stored d, k and n must match the
/// recomputed values, else the load aborts with a diagnostic.
std::vector<CatalogEntry> load_catalog(std::istream& in);
std::vector<CatalogEntry> load_catalog_file(const std::string& path);

void save_catalog(std::ostream& out, const std::vector<CatalogEntry>& entries);
void save_catalog_file(const std::string& path, const std::vector<CatalogEntry>& entries);

}  // namespace synccode
