#include "synccode/catalog.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace synccode {

std::string format_entry(const CatalogEntry& entry) {
    std::ostringstream os;
    os << "d=" << entry.d << " k=" << entry.k << " n=";
    if (entry.n)
        os << *entry.n;
    else
        os << "none";
    os << " src=" << entry.source << " code=" << entry.code.str();
    if (entry.timestamp) os << " ts=" << *entry.timestamp;
    return os.str();
}

CatalogEntry parse_entry(const std::string& line) {
    std::istringstream ls(line);
    std::string tok;
    std::optional<int> d, k;
    std::optional<Reliability> n;
    std::optional<std::string> src, codestr, ts;
    while (ls >> tok) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("catalog: malformed token '" + tok + "' in: " + line);
        const std::string key = tok.substr(0, eq);
        const std::string val = tok.substr(eq + 1);
        if (key == "d") d = std::stoi(val);
        else if (key == "k") k = std::stoi(val);
        else if (key == "n") n = (val == "none") ? Reliability{} : Reliability{std::stoi(val)};
        else if (key == "src") src = val;
        else if (key == "code") codestr = val;
        else if (key == "ts") ts = val;
        else throw std::runtime_error("catalog: unknown key '" + key + "' in: " + line);
    }
    if (!d || !k || !n || !src || !codestr)
        throw std::runtime_error("catalog: entry is missing a required field: " + line);
    return CatalogEntry{*d, *k, *n, *src, Code::parse(*codestr), ts};
}

CatalogEntry make_entry(const Code& code, std::string source,
                        std::optional<std::string> timestamp) {
    return CatalogEntry{code.data_bits(), code.control_bits(), reliability(code),
                        std::move(source), code, std::move(timestamp)};
}

namespace {

void verify_entry(const CatalogEntry& e, std::size_t line_no) {
    const auto fail = [&](const std::string& what) {
        throw std::runtime_error("catalog: entry at line " + std::to_string(line_no) +
                                 " fails verification (" + what + "): " + format_entry(e));
    };
    if (e.code.data_bits() != e.d) fail("d does not match the wildcard count");
    if (e.code.control_bits() != e.k) fail("k does not match the control-bit count");
    const auto r = reliability(e.code);
    if (r != e.n) {
        fail("stated n=" + (e.n ? std::to_string(*e.n) : std::string("none")) +
             " but computed " + (r ? std::to_string(*r) : std::string("none")));
    }
}

}  // namespace

std::vector<CatalogEntry> load_catalog(std::istream& in) {
    std::vector<CatalogEntry> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        CatalogEntry e = parse_entry(line);
        verify_entry(e, line_no);
        out.push_back(std::move(e));
    }
    return out;
}

std::vector<CatalogEntry> load_catalog_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("catalog: cannot open " + path);
    return load_catalog(in);
}

void save_catalog(std::ostream& out, const std::vector<CatalogEntry>& entries) {
    for (const auto& e : entries) out << format_entry(e) << "\n";
}

void save_catalog_file(const std::string& path, const std::vector<CatalogEntry>& entries) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("catalog: cannot open " + path + " for writing");
    save_catalog(out, entries);
}

}  // namespace synccode
