// synccode: search for, prove minimality of, verify and apply
// (d,k,n)-synchronization codes.
//
// Exit codes follow the SAT-solver convention: 0 on success/Sat, 20 on
// Unsat/Infinite/FAIL, 3 on timeout/Unknown, 2 on usage errors.

#include <atomic>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "synccode/catalog.hpp"
#include "synccode/codec.hpp"
#include "synccode/code.hpp"
#include "synccode/oracle.hpp"
#include "synccode/pb_export.hpp"
#include "synccode/solver.hpp"
#include "synccode/verifier.hpp"

namespace {

constexpr int EXIT_SAT = 0;
constexpr int EXIT_FAILURE_GENERIC = 1;
constexpr int EXIT_USAGE = 2;
constexpr int EXIT_UNKNOWN = 3;
constexpr int EXIT_UNSAT = 20;

using namespace synccode;

std::string read_stream(std::istream& in) {
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    return read_stream(in);
}

void write_file(const std::string& path, const std::string& data) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    out << data;
}

std::string now_utc() {
    const std::time_t t = std::time(nullptr);
    char buf[32];
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

std::string reliability_str(const Reliability& r) {
    return r ? std::to_string(*r) : std::string("none");
}

void print_code_line(const Code& code) {
    std::cout << "code=" << code.str() << " d=" << code.data_bits() << " k=" << code.control_bits()
              << " n=" << reliability_str(reliability(code)) << "\n";
}

int report_solve(const SolveResult& r) {
    std::fprintf(stderr, "nodes=%llu conflicts=%llu time=%.3fs\n",
                 static_cast<unsigned long long>(r.stats.nodes),
                 static_cast<unsigned long long>(r.stats.conflicts), r.stats.seconds);
    switch (r.status) {
        case SolveResult::Status::Sat:
            std::cout << "s SATISFIABLE\n";
            print_code_line(*r.code);
            return EXIT_SAT;
        case SolveResult::Status::Unsat:
            std::cout << "s UNSATISFIABLE\n";
            return EXIT_UNSAT;
        default:
            std::cout << "s UNKNOWN\n";
            return EXIT_UNKNOWN;
    }
}

int report_min_k(const MinKResult& r, int d, int n) {
    if (r.finite()) {
        std::cout << "k = " << r.k << "\n";
        print_code_line(*r.code);
        return EXIT_SAT;
    }
    if (r.infinite()) {
        std::cout << "k = INF (no (" << d << ",k," << n << ") code exists for any k; bound 2^n-d = "
                  << lemma1_bound(d, n) << ")\n";
        return EXIT_UNSAT;
    }
    std::cout << "k = ? (undecided; last k with a verdict: " << r.last_k_decided << ")\n";
    return EXIT_UNKNOWN;
}

// "A..B" or "A"
std::pair<int, int> parse_range(const std::string& text) {
    const auto dots = text.find("..");
    if (dots == std::string::npos) {
        const int v = std::stoi(text);
        return {v, v};
    }
    const int lo = std::stoi(text.substr(0, dots));
    const int hi = std::stoi(text.substr(dots + 2));
    if (hi < lo) throw CLI::ValidationError("range", "range upper bound below lower bound");
    return {lo, hi};
}

struct TableCell {
    int d, n;
    MinKResult result;
    std::vector<std::pair<int, double>> per_k_seconds;
    double seconds = 0.0;
};

// Sweep k = 0, 1, ... under a whole-cell deadline.
TableCell run_cell(int d, int n, double budget_seconds, bool symmetry) {
    TableCell cell{d, n, {}, {}, 0.0};
    const auto start = std::chrono::steady_clock::now();
    auto remaining = [&] {
        return budget_seconds -
               std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    };
    const std::int64_t bound = lemma1_bound(d, n);
    cell.result = MinKResult{MinKResult::Status::Infinite};
    for (std::int64_t k = 0; k <= bound; ++k) {
        SolverOptions opts;
        opts.symmetry_breaking = symmetry;
        opts.timeout_seconds = remaining();
        if (opts.timeout_seconds <= 0.0) {
            cell.result = MinKResult{MinKResult::Status::Unknown};
            cell.result.last_k_decided = static_cast<int>(k) - 1;
            break;
        }
        const int nn = static_cast<int>(std::min<std::int64_t>(n, d + k));
        const auto r = find_code(Params(d, static_cast<int>(k), nn), opts);
        cell.per_k_seconds.emplace_back(static_cast<int>(k), r.stats.seconds);
        if (r.sat()) {
            cell.result = MinKResult{MinKResult::Status::Finite};
            cell.result.k = static_cast<int>(k);
            cell.result.code = r.code;
            break;
        }
        if (r.timeout()) {
            cell.result = MinKResult{MinKResult::Status::Unknown};
            cell.result.last_k_decided = static_cast<int>(k) - 1;
            break;
        }
    }
    cell.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return cell;
}

int cmd_table(std::pair<int, int> drange, std::pair<int, int> nrange, double budget, bool symmetry,
              int jobs) {
    struct Task {
        int d, n;
    };
    std::vector<Task> tasks;
    for (int d = drange.first; d <= drange.second; ++d)
        for (int n = nrange.first; n <= nrange.second; ++n) tasks.push_back({d, n});

    std::vector<TableCell> cells(tasks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t idx = next.fetch_add(1);
            if (idx >= tasks.size()) return;
            cells[idx] = run_cell(tasks[idx].d, tasks[idx].n, budget, symmetry);
        }
    };
    if (jobs <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    // Grid in the published layout: rows d, columns n; INF for proved
    // nonexistence, blank for undecided.
    const int ncols = nrange.second - nrange.first + 1;
    std::printf("%-4s", "d\\n");
    for (int n = nrange.first; n <= nrange.second; ++n) std::printf(" %5d", n);
    std::printf("\n");
    std::size_t idx = 0;
    bool any_unknown = false;
    for (int d = drange.first; d <= drange.second; ++d) {
        std::printf("%-4d", d);
        for (int c = 0; c < ncols; ++c, ++idx) {
            const auto& cell = cells[idx];
            if (cell.result.finite())
                std::printf(" %5d", cell.result.k);
            else if (cell.result.infinite())
                std::printf(" %5s", "INF");
            else {
                std::printf(" %5s", "");
                any_unknown = true;
            }
        }
        std::printf("\n");
    }
    for (const auto& cell : cells) {
        std::fprintf(stderr, "cell d=%d n=%d time=%.3fs per-k:", cell.d, cell.n, cell.seconds);
        for (const auto& [k, s] : cell.per_k_seconds) std::fprintf(stderr, " %d:%.3fs", k, s);
        std::fprintf(stderr, "\n");
        if (cell.result.finite()) {
            std::fprintf(stderr, "cell d=%d n=%d code=%s\n", cell.d, cell.n,
                         cell.result.code->str().c_str());
        }
    }
    return any_unknown ? EXIT_UNKNOWN : EXIT_SAT;
}

BitBuffer read_bits(const std::string& path, bool text, std::int64_t bit_limit) {
    std::string raw;
    if (path.empty() || path == "-") {
        raw = read_stream(std::cin);
    } else {
        raw = read_file(path);
    }
    if (text) {
        while (!raw.empty() && (raw.back() == '\n' || raw.back() == '\r')) raw.pop_back();
        return BitBuffer::from_string(raw);
    }
    const auto* bytes = reinterpret_cast<const std::uint8_t*>(raw.data());
    const std::size_t total = raw.size() * 8;
    const std::size_t take =
        bit_limit >= 0 ? std::min<std::size_t>(total, static_cast<std::size_t>(bit_limit)) : total;
    return BitBuffer::from_bytes({bytes, raw.size()}, take);
}

void write_bits(const std::string& path, const BitBuffer& bits, bool text) {
    std::string payload;
    if (text) {
        payload = bits.to_string();
        payload.push_back('\n');
    } else {
        const auto bytes = bits.to_bytes();
        payload.assign(reinterpret_cast<const char*>(bytes.data()), bytes.size());
    }
    if (path.empty() || path == "-") {
        std::cout.write(payload.data(), static_cast<std::streamsize>(payload.size()));
        std::cout.flush();
    } else {
        write_file(path, payload);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"(d,k,n)-synchronization code toolkit"};
    app.require_subcommand(1);

    // --- find ---
    int fd = 0, fk = 0, fn = 0;
    double f_timeout = 18000.0;
    bool f_nosym = false;
    std::uint64_t f_nodes = 0;
    auto* find = app.add_subcommand("find", "decide whether a (d,k,n) code exists");
    find->add_option("--d", fd, "data bits per block")->required();
    find->add_option("--k", fk, "control bits per block")->required();
    find->add_option("--n", fn, "reliability window")->required();
    find->add_option("--timeout", f_timeout, "seconds before giving up");
    find->add_flag("--no-symmetry", f_nosym, "disable symmetry breaking");
    find->add_option("--node-limit", f_nodes, "stop after this many search nodes");

    // --- minx ---
    int md = 0, mn = 0;
    double m_timeout = 18000.0;
    bool m_nosym = false;
    auto* minx = app.add_subcommand("minx", "smallest k with a (d,k,n) code");
    minx->add_option("--d", md, "data bits per block")->required();
    minx->add_option("--n", mn, "reliability window")->required();
    minx->add_option("--timeout", m_timeout, "seconds per decision instance");
    minx->add_flag("--no-symmetry", m_nosym, "disable symmetry breaking");

    // --- verify ---
    std::string v_code;
    int v_n = 0;
    auto* verify = app.add_subcommand("verify", "check a code against the definition");
    verify->add_option("--code", v_code, "code over 0, 1, _")->required();
    verify->add_option("--n", v_n, "reliability window to check")->required();

    // --- reliability ---
    std::string r_code;
    auto* rel = app.add_subcommand("reliability", "exact reliability of a code");
    rel->add_option("--code", r_code, "code over 0, 1, _")->required();

    // --- oracle ---
    int od = 0, ok_ = -1, on = 0, o_maxlen = 14;
    std::uint64_t o_maxenum = 16'000'000;
    bool o_mink = false;
    auto* oracle = app.add_subcommand("oracle", "exhaustive-enumeration ground truth");
    oracle->add_option("--d", od, "data bits per block")->required();
    oracle->add_option("--k", ok_, "control bits (omit with --min-k)");
    oracle->add_option("--n", on, "reliability window")->required();
    oracle->add_flag("--min-k", o_mink, "sweep k upward instead of deciding one k");
    oracle->add_option("--max-length", o_maxlen, "refuse instances with d+k above this");
    oracle->add_option("--max-enum", o_maxenum, "refuse instances enumerating more candidates");

    // --- encode / decode ---
    std::string e_code, e_in, e_out;
    bool e_text = false, e_pad = false;
    auto* enc = app.add_subcommand("encode", "insert a code into a bitstream");
    enc->add_option("--code", e_code, "code over 0, 1, _")->required();
    enc->add_option("--in", e_in, "input file (default stdin)");
    enc->add_option("--out", e_out, "output file (default stdout)");
    enc->add_flag("--text", e_text, "treat input/output as ASCII '0'/'1'");
    enc->add_flag("--pad", e_pad, "zero-pad data to a multiple of d");

    std::string dc_code, dc_in, dc_out;
    bool dc_text = false;
    std::int64_t dc_offset = 0, dc_bits = -1;
    auto* dec = app.add_subcommand("decode", "recover payload bits from a synchronized stream");
    dec->add_option("--code", dc_code, "code over 0, 1, _")->required();
    dec->add_option("--in", dc_in, "input file (default stdin)");
    dec->add_option("--out", dc_out, "output file (default stdout)");
    dec->add_flag("--text", dc_text, "treat input/output as ASCII '0'/'1'");
    dec->add_option("--offset", dc_offset, "bit offset to start reading at")
        ->check(CLI::NonNegativeNumber);
    dec->add_option("--bits", dc_bits, "consider only the first N bits of the input");

    // --- export / import ---
    int xd = 0, xk = 0, xn = 0;
    std::string x_format = "opb", x_out;
    bool x_nosym = false;
    auto* expo = app.add_subcommand("export", "emit the pseudo-Boolean model as OPB or CNF");
    expo->add_option("--d", xd, "data bits per block")->required();
    expo->add_option("--k", xk, "control bits per block")->required();
    expo->add_option("--n", xn, "reliability window")->required();
    expo->add_option("--format", x_format, "opb or cnf")
        ->check(CLI::IsMember({"opb", "cnf"}));
    expo->add_flag("--no-symmetry", x_nosym, "omit symmetry-breaking constraints");
    expo->add_option("--out", x_out, "output file (default stdout)");

    std::string i_model, i_solution;
    auto* imp = app.add_subcommand("import", "reconstruct and verify an external solution");
    imp->add_option("--model", i_model, "the OPB/CNF file the solver was run on")->required();
    imp->add_option("--solution", i_solution, "solver output with v-lines (default stdin)");

    // --- table ---
    std::string t_d = "2..8", t_n = "2..13";
    double t_budget = 60.0;
    int t_jobs = 1;
    bool t_nosym = false;
    auto* table = app.add_subcommand("table", "minimum-k grid over ranges of d and n");
    table->add_option("--d", t_d, "d range, e.g. 2..4 or 3");
    table->add_option("--n", t_n, "n range, e.g. 2..13 or 8");
    table->add_option("--timeout", t_budget, "seconds per (d, n) cell");
    table->add_option("--jobs", t_jobs, "cells solved concurrently")->check(CLI::PositiveNumber);
    table->add_flag("--no-symmetry", t_nosym, "disable symmetry breaking");

    // --- catalog ---
    std::string cat_file, cat_add_code, cat_src = "imported";
    bool cat_verify_only = false;
    auto* cat = app.add_subcommand("catalog", "verify or extend a code catalog file");
    cat->add_option("--file", cat_file, "catalog path (or $SYNCCODE_CATALOG)");
    cat->add_option("--add", cat_add_code, "append this code (reliability is computed)");
    cat->add_option("--src", cat_src, "provenance tag for --add");
    cat->add_flag("--quiet", cat_verify_only, "verify without listing entries");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : EXIT_USAGE;
    }

    try {
        if (*find) {
            SolverOptions opts;
            opts.timeout_seconds = f_timeout;
            opts.symmetry_breaking = !f_nosym;
            opts.node_limit = f_nodes;
            return report_solve(find_code(Params(fd, fk, fn), opts));
        }
        if (*minx) {
            SolverOptions opts;
            opts.timeout_seconds = m_timeout;
            opts.symmetry_breaking = !m_nosym;
            return report_min_k(min_k(md, mn, opts), md, mn);
        }
        if (*verify) {
            const Code code = Code::parse(v_code);
            if (is_sync_code(code, v_n)) {
                std::cout << "OK: " << code.str() << " is a (" << code.data_bits() << ","
                          << code.control_bits() << "," << v_n << ")-synchronization code\n";
                return EXIT_SAT;
            }
            std::cout << "FAIL: " << code.str() << " is not synchronizable within " << v_n
                      << " bits (reliability=" << reliability_str(reliability(code)) << ")\n";
            return EXIT_UNSAT;
        }
        if (*rel) {
            const Code code = Code::parse(r_code);
            std::cout << "reliability=" << reliability_str(reliability(code)) << "\n";
            return EXIT_SAT;
        }
        if (*oracle) {
            OracleBudget budget;
            budget.max_length = o_maxlen;
            budget.max_enumerations = o_maxenum;
            if (o_mink) return report_min_k(oracle_min_k(od, on, budget), od, on);
            if (ok_ < 0) throw CLI::RequiredError("--k (or --min-k)");
            return report_solve(oracle_exists(Params(od, ok_, on), budget));
        }
        if (*enc) {
            const Code code = Code::parse(e_code);
            BitBuffer data = read_bits(e_in, e_text, -1);
            if (e_pad) {
                while (data.size() % static_cast<std::size_t>(code.data_bits()) != 0)
                    data.push_back(0);
            }
            const BitBuffer out = encode(data, code);
            write_bits(e_out, out, e_text);
            std::fprintf(stderr, "encoded %zu data bits into %zu stream bits\n", data.size(),
                         out.size());
            return EXIT_SAT;
        }
        if (*dec) {
            const Code code = Code::parse(dc_code);
            const BitBuffer stream = read_bits(dc_in, dc_text, dc_bits);
            DecodeStats stats;
            const BitBuffer out =
                decode(stream, code, static_cast<std::size_t>(dc_offset), &stats);
            write_bits(dc_out, out, dc_text);
            std::fprintf(stderr,
                         "decoded %zu blocks (%zu bits); skipped %zu leading, %zu trailing bits\n",
                         stats.blocks, out.size(), stats.leading_bits_skipped,
                         stats.trailing_bits_ignored);
            return EXIT_SAT;
        }
        if (*expo) {
            const Params p(xd, xk, xn);
            const std::string doc = x_format == "cnf" ? emit_cnf(p, !x_nosym)
                                                      : emit_opb(p, !x_nosym);
            if (x_out.empty())
                std::cout << doc;
            else
                write_file(x_out, doc);
            return EXIT_SAT;
        }
        if (*imp) {
            const auto map = VariableMap::parse_header(read_file(i_model));
            std::string solution;
            if (i_solution.empty())
                solution = read_stream(std::cin);
            else
                solution = read_file(i_solution);
            const Code code = import_solution(solution, map);
            std::cout << "verified\n";
            print_code_line(code);
            return EXIT_SAT;
        }
        if (*table) {
            return cmd_table(parse_range(t_d), parse_range(t_n), t_budget, !t_nosym, t_jobs);
        }
        if (*cat) {
            if (cat_file.empty()) {
                if (const char* env = std::getenv("SYNCCODE_CATALOG")) cat_file = env;
            }
            if (cat_file.empty())
                throw CLI::RequiredError("--file (or $SYNCCODE_CATALOG)");
            auto entries = load_catalog_file(cat_file);
            if (!cat_add_code.empty()) {
                const Code code = Code::parse(cat_add_code);
                const auto entry = make_entry(code, cat_src, now_utc());
                std::ofstream out(cat_file, std::ios::app);
                if (!out) throw std::runtime_error("cannot append to " + cat_file);
                out << format_entry(entry) << "\n";
                std::cout << "added: " << format_entry(entry) << "\n";
                return EXIT_SAT;
            }
            if (!cat_verify_only)
                for (const auto& e : entries) std::cout << format_entry(e) << "\n";
            std::cout << "verified " << entries.size() << " entries\n";
            return EXIT_SAT;
        }
    } catch (const CLI::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return EXIT_USAGE;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return EXIT_USAGE;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return EXIT_FAILURE_GENERIC;
    }
    return EXIT_USAGE;
}
