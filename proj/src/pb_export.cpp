#include "synccode/pb_export.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "synccode/verifier.hpp"

namespace synccode {

namespace {

bool symmetry_active(const Params& p, bool symmetry) {
    // The fixed 01 prefix needs two control bits; with k < 2 the block is
    // vacuous and would reference cells that cannot both be control bits.
    return symmetry && p.k >= 2;
}

void append_header(std::string& out, char prefix, const Params& p, bool symmetry) {
    std::ostringstream os;
    os << prefix << " (d,k,n)-synchronization code instance\n"
       << prefix << " d= " << p.d << " k= " << p.k << " n= " << p.n
       << " symmetry= " << (symmetry ? "on" : "off") << "\n"
       << prefix << " cells c_0..c_" << (p.length() - 1)
       << ": K_i=1 iff c_i is a control bit, V_i is its value (0 at data cells)\n"
       << prefix << " Y[i][g]=1 implies c_i and c_{i+g mod L} are differing control bits\n"
       << prefix << " var ids: K_i = 1+i ; V_i = L+1+i ; Y[i][g] = 2L+1+i*(L-1)+(g-1) ; L= "
       << p.length() << "\n";
    out += os.str();
}

struct OpbTerm {
    int coef;
    int var;
};

std::string opb_line(const std::vector<OpbTerm>& terms, const char* op, int rhs) {
    std::ostringstream os;
    for (const auto& t : terms) {
        os << (t.coef >= 0 ? "+" : "") << t.coef << " x" << t.var << " ";
    }
    os << op << " " << rhs << " ;\n";
    return os.str();
}

// --- CNF helpers ---

struct CnfBuilder {
    int next_var;
    std::vector<std::vector<int>> clauses;

    explicit CnfBuilder(int base) : next_var(base + 1) {}
    int new_var() { return next_var++; }
    void add(std::vector<int> c) { clauses.push_back(std::move(c)); }
};

// Sequential counter: R[i][j] <-> at least j of the first i inputs are true.
// Grid entries are 0 where the threshold is unreachable (j > i).
std::vector<std::vector<int>> counter_grid(CnfBuilder& b, const std::vector<int>& xs, int maxj) {
    const int m = static_cast<int>(xs.size());
    std::vector<std::vector<int>> R(m + 1, std::vector<int>(maxj + 1, 0));
    for (int i = 1; i <= m; ++i)
        for (int j = 1; j <= std::min(i, maxj); ++j) R[i][j] = b.new_var();
    for (int i = 1; i <= m; ++i) {
        const int x = xs[i - 1];
        for (int j = 1; j <= std::min(i, maxj); ++j) {
            const int rij = R[i][j];
            const int rup = (j <= i - 1) ? R[i - 1][j] : 0;  // absent = false
            if (j == 1) {
                if (rup) b.add({-rup, rij});
                b.add({-x, rij});
                std::vector<int> back{-rij};
                if (rup) back.push_back(rup);
                back.push_back(x);
                b.add(std::move(back));
            } else {
                const int rdiag = R[i - 1][j - 1];  // exists: j-1 <= i-1 and j-1 < maxj
                if (rup) b.add({-rup, rij});
                b.add({-x, -rdiag, rij});
                std::vector<int> back1{-rij};
                if (rup) back1.push_back(rup);
                back1.push_back(x);
                b.add(std::move(back1));
                std::vector<int> back2{-rij};
                if (rup) back2.push_back(rup);
                back2.push_back(rdiag);
                b.add(std::move(back2));
            }
        }
    }
    return R;
}

}  // namespace

VariableMap VariableMap::for_params(const Params& params, bool symmetry) {
    return VariableMap{params.d, params.k, params.n, symmetry};
}

VariableMap VariableMap::parse_header(std::string_view document) {
    std::istringstream in{std::string(document)};
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || (line[0] != '*' && line[0] != 'c')) continue;
        std::istringstream ls(line);
        std::string tok;
        ls >> tok;  // comment marker
        int d = -1, k = -1, n = -1;
        std::string sym;
        while (ls >> tok) {
            if (tok == "d=") ls >> d;
            else if (tok == "k=") ls >> k;
            else if (tok == "n=") ls >> n;
            else if (tok == "symmetry=") ls >> sym;
        }
        if (d >= 1 && k >= 0 && n >= 1) {
            return VariableMap{d, k, n, sym == "on"};
        }
    }
    throw std::runtime_error("parse_header: no 'd= .. k= .. n= ..' comment line found");
}

std::string emit_opb(const Params& p, bool symmetry) {
    const int L = p.length();
    const int n = p.n;
    const VariableMap map = VariableMap::for_params(p, symmetry);
    const bool sym = symmetry_active(p, symmetry);

    std::vector<std::string> lines;
    // Exactly k control bits.
    {
        std::vector<OpbTerm> terms;
        for (int i = 0; i < L; ++i) terms.push_back({1, map.k_var(i)});
        lines.push_back(opb_line(terms, "=", p.k));
    }
    // Y[i][g] = 1 implies K_i = K_{i+g} = 1 and V_i != V_{i+g}.
    for (int i = 0; i < L; ++i) {
        for (int g = 1; g < L; ++g) {
            const int y = map.y_var(i, g);
            const int ig = mod_reduce(i + g, L);
            lines.push_back(opb_line({{1, map.k_var(i)}, {-1, y}}, ">=", 0));
            lines.push_back(opb_line({{1, map.k_var(ig)}, {-1, y}}, ">=", 0));
            lines.push_back(opb_line({{1, map.v_var(i)}, {1, map.v_var(ig)}, {-1, y}}, ">=", 0));
            lines.push_back(
                opb_line({{-1, map.v_var(i)}, {-1, map.v_var(ig)}, {-1, y}}, ">=", -2));
        }
    }
    // Every pair of phases is separated inside the first phase's window.
    for (int i = 0; i < L; ++i) {
        for (int j = i + 1; j < L; ++j) {
            std::vector<OpbTerm> terms;
            for (int a = 0; a < n; ++a) terms.push_back({1, map.y_var(mod_reduce(i + a, L), j - i)});
            lines.push_back(opb_line(terms, ">=", 1));
        }
    }
    // V_i = 0 at data cells.
    for (int i = 0; i < L; ++i)
        lines.push_back(opb_line({{1, map.k_var(i)}, {-1, map.v_var(i)}}, ">=", 0));
    if (sym) {
        lines.push_back(opb_line({{1, map.k_var(0)}}, "=", 1));
        lines.push_back(opb_line({{1, map.k_var(1)}}, "=", 1));
        lines.push_back(opb_line({{1, map.v_var(0)}}, "=", 0));
        lines.push_back(opb_line({{1, map.v_var(1)}}, "=", 1));
        std::vector<OpbTerm> terms;
        for (int i = 0; i < L; ++i) terms.push_back({-1, map.v_var(i)});
        lines.push_back(opb_line(terms, ">=", -(p.k / 2)));
    }

    std::string out;
    out += "* #variable= " + std::to_string(map.base_vars()) +
           " #constraint= " + std::to_string(lines.size()) + "\n";
    append_header(out, '*', p, symmetry);
    for (const auto& l : lines) out += l;
    return out;
}

std::string emit_cnf(const Params& p, bool symmetry) {
    const int L = p.length();
    const int n = p.n;
    const VariableMap map = VariableMap::for_params(p, symmetry);
    const bool sym = symmetry_active(p, symmetry);

    CnfBuilder b(map.base_vars());

    for (int i = 0; i < L; ++i) {
        for (int g = 1; g < L; ++g) {
            const int y = map.y_var(i, g);
            const int ig = mod_reduce(i + g, L);
            b.add({-y, map.k_var(i)});
            b.add({-y, map.k_var(ig)});
            b.add({-y, map.v_var(i), map.v_var(ig)});
            b.add({-y, -map.v_var(i), -map.v_var(ig)});
        }
    }
    for (int i = 0; i < L; ++i) {
        for (int j = i + 1; j < L; ++j) {
            std::vector<int> clause;
            for (int a = 0; a < n; ++a) clause.push_back(map.y_var(mod_reduce(i + a, L), j - i));
            b.add(std::move(clause));
        }
    }
    for (int i = 0; i < L; ++i) b.add({map.k_var(i), -map.v_var(i)});

    // Sum K_i = k via a sequential counter.
    {
        std::vector<int> xs;
        for (int i = 0; i < L; ++i) xs.push_back(map.k_var(i));
        const auto R = counter_grid(b, xs, p.k + 1);
        if (p.k >= 1) b.add({R[L][p.k]});
        b.add({-R[L][p.k + 1]});
    }
    if (sym) {
        b.add({map.k_var(0)});
        b.add({map.k_var(1)});
        b.add({-map.v_var(0)});
        b.add({map.v_var(1)});
        // Sum V_i <= floor(k/2).
        const int cap = p.k / 2;
        std::vector<int> xs;
        for (int i = 0; i < L; ++i) xs.push_back(map.v_var(i));
        const auto R = counter_grid(b, xs, cap + 1);
        b.add({-R[L][cap + 1]});
    }

    std::string out;
    append_header(out, 'c', p, symmetry);
    out += "p cnf " + std::to_string(b.next_var - 1) + " " + std::to_string(b.clauses.size()) +
           "\n";
    for (const auto& clause : b.clauses) {
        std::string line;
        for (const int lit : clause) {
            line += std::to_string(lit);
            line += ' ';
        }
        line += "0\n";
        out += line;
    }
    return out;
}

Code import_solution(std::string_view document, const VariableMap& map) {
    const int L = map.length();
    if (document.find("UNSATISFIABLE") != std::string_view::npos)
        throw std::runtime_error("import_solution: document reports UNSATISFIABLE");

    std::vector<int> value(static_cast<std::size_t>(map.base_vars()) + 1, -1);
    auto assign = [&](long long var, bool val) {
        if (var < 1) throw std::runtime_error("import_solution: variable index out of range");
        if (var < static_cast<long long>(value.size())) value[static_cast<std::size_t>(var)] = val;
        // auxiliary variables beyond the base model are ignored
    };

    bool saw_values = false;
    std::istringstream in{std::string(document)};
    std::string line;
    while (std::getline(in, line)) {
        if (line.size() < 2 || line[0] != 'v' || !(line[1] == ' ' || line[1] == '\t')) continue;
        saw_values = true;
        std::istringstream ls(line.substr(1));
        std::string tok;
        while (ls >> tok) {
            bool neg = false;
            std::string_view t = tok;
            if (t.starts_with('-') || t.starts_with('~')) {
                neg = true;
                t.remove_prefix(1);
            }
            if (t.starts_with('x')) t.remove_prefix(1);
            long long idx = 0;
            const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), idx);
            if (ec != std::errc{} || ptr != t.data() + t.size())
                throw std::runtime_error("import_solution: unparsable token '" + tok + "'");
            if (idx == 0) continue;  // DIMACS terminator
            assign(idx, !neg);
        }
    }
    if (!saw_values) throw std::runtime_error("import_solution: no 'v' value lines found");

    int control = 0;
    std::vector<Symbol> syms(static_cast<std::size_t>(L));
    for (int i = 0; i < L; ++i) {
        const int kv = value[static_cast<std::size_t>(map.k_var(i))];
        const int vv = value[static_cast<std::size_t>(map.v_var(i))];
        if (kv < 0 || vv < 0)
            throw std::runtime_error("import_solution: assignment does not cover K_" +
                                     std::to_string(i) + "/V_" + std::to_string(i));
        if (kv) {
            ++control;
            syms[static_cast<std::size_t>(i)] = vv ? Symbol::One : Symbol::Zero;
        } else {
            syms[static_cast<std::size_t>(i)] = Symbol::Wild;
        }
    }
    if (control != map.k)
        throw std::runtime_error("import_solution: assignment has " + std::to_string(control) +
                                 " control bits, expected " + std::to_string(map.k));
    Code code(std::move(syms));
    if (!is_sync_code(code, map.n))
        throw std::runtime_error("import_solution: reconstructed code " + code.str() +
                                 " fails verification at n=" + std::to_string(map.n) +
                                 " (wrong encoding or wrong solver output)");
    return code;
}

}  // namespace synccode
