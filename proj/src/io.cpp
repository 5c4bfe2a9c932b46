#include "boxstab/io.hpp"

#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace boxstab {

namespace {

bool is_blank_or_comment(const std::string& line) {
    for (char ch : line) {
        if (ch == '#') return true;
        if (!std::isspace(static_cast<unsigned char>(ch))) return false;
    }
    return true;
}

// Splits into whitespace-separated tokens, remembering 1-based columns.
std::vector<std::pair<std::string, int>> tokenize(const std::string& line) {
    std::vector<std::pair<std::string, int>> out;
    std::size_t i = 0;
    while (i < line.size()) {
        if (std::isspace(static_cast<unsigned char>(line[i]))) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) ++j;
        out.emplace_back(line.substr(i, j - i), static_cast<int>(i) + 1);
        i = j;
    }
    return out;
}

std::int64_t parse_int(const std::string& tok, int line, int col) {
    try {
        std::size_t used = 0;
        const long long v = std::stoll(tok, &used);
        if (used != tok.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ParseError(line, col, "expected an integer, got '" + tok + "'");
    }
}

int read_header(std::istream& in, int& line_no) {
    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        if (is_blank_or_comment(line)) continue;
        auto toks = tokenize(line);
        if (toks.size() != 2 || toks[0].first != "d")
            throw ParseError(line_no, toks.empty() ? 1 : toks[0].second,
                             "expected header 'd <dim>'");
        const std::int64_t d = parse_int(toks[1].first, line_no, toks[1].second);
        if (d < 1) throw ParseError(line_no, toks[1].second, "dimension must be >= 1");
        return static_cast<int>(d);
    }
    throw ParseError(line_no + 1, 1, "missing header 'd <dim>'");
}

}  // namespace

PointSetReadResult read_point_set_verbose(std::istream& in) {
    int line_no = 0;
    const int d = read_header(in, line_no);
    std::vector<Point> pts;
    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        if (is_blank_or_comment(line)) continue;
        auto toks = tokenize(line);
        if (static_cast<int>(toks.size()) != d)
            throw ParseError(line_no, toks.empty() ? 1 : toks[0].second,
                             "expected " + std::to_string(d) + " coordinates, got " +
                                 std::to_string(toks.size()));
        Point p(d);
        for (int i = 0; i < d; ++i) p[i] = parse_int(toks[i].first, line_no, toks[i].second);
        pts.push_back(std::move(p));
    }
    const auto raw = static_cast<std::int64_t>(pts.size());
    PointSet set(d, std::move(pts));
    const std::int64_t dropped = raw - set.size();
    return PointSetReadResult{std::move(set), dropped};
}

PointSet read_point_set(std::istream& in) { return read_point_set_verbose(in).set; }

PointSet read_point_set_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    return read_point_set(in);
}

void write_point_set(std::ostream& out, const PointSet& s) {
    out << "d " << s.dim() << "\n";
    for (const Point& p : s.points()) {
        for (int i = 0; i < s.dim(); ++i) {
            if (i) out << ' ';
            out << p[i];
        }
        out << "\n";
    }
}

void write_point_set_file(const std::string& path, const PointSet& s) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    write_point_set(out, s);
}

std::string canonical_pts(const PointSet& s) {
    std::ostringstream out;
    write_point_set(out, s);
    return out.str();
}

CoverFamily read_cover(std::istream& in) {
    int line_no = 0;
    const int d = read_header(in, line_no);
    std::vector<std::vector<int>> sets;
    std::vector<Rat> weights;
    bool any_weight = false;
    std::string line;
    while (std::getline(in, line)) {
        ++line_no;
        if (is_blank_or_comment(line)) continue;
        auto toks = tokenize(line);
        std::vector<int> g;
        Rat w(1);
        bool has_weight = false;
        for (const auto& [tok, col] : toks) {
            if (tok.rfind("w=", 0) == 0) {
                try {
                    w = rat_from_string(tok.substr(2));
                } catch (const std::exception&) {
                    throw ParseError(line_no, col, "bad weight '" + tok + "'");
                }
                if (w < 0) throw ParseError(line_no, col, "weights must be nonnegative");
                has_weight = true;
                continue;
            }
            const std::int64_t idx = parse_int(tok, line_no, col);
            if (idx < 1 || idx > d)
                throw ParseError(line_no, col,
                                 "index " + std::to_string(idx) + " out of range 1.." +
                                     std::to_string(d));
            g.push_back(static_cast<int>(idx) - 1);  // file format is 1-based
        }
        if (g.empty())
            throw ParseError(line_no, toks.empty() ? 1 : toks[0].second, "empty cover set");
        sets.push_back(std::move(g));
        weights.push_back(w);
        any_weight = any_weight || has_weight;
    }
    if (sets.empty()) throw ParseError(line_no + 1, 1, "cover family has no sets");
    if (any_weight) return CoverFamily(d, std::move(sets), std::move(weights));
    return CoverFamily(d, std::move(sets));
}

CoverFamily read_cover_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    return read_cover(in);
}

void write_cover(std::ostream& out, const CoverFamily& g) {
    out << "d " << g.dim() << "\n";
    for (std::size_t k = 0; k < g.sets().size(); ++k) {
        const auto& set = g.sets()[k];
        for (std::size_t i = 0; i < set.size(); ++i) {
            if (i) out << ' ';
            out << set[i] + 1;
        }
        if (g.weighted()) out << " w=" << rat_to_string(g.weights()[k]);
        out << "\n";
    }
}

void write_cover_file(const std::string& path, const CoverFamily& g) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    write_cover(out, g);
}

std::string content_hash(const PointSet& s) {
    const std::string bytes = canonical_pts(s);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : bytes) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string format_real(long double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.15Lg", x);
    return buf;
}

std::string rat_to_string(const Rat& q) {
    Rat c = q;
    c.canonicalize();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

Rat rat_from_string(const std::string& text) {
    Rat q;
    if (q.set_str(text, 10) != 0)
        throw std::invalid_argument("bad rational '" + text + "'");
    q.canonicalize();
    return q;
}

namespace {

nlohmann::json real_json(long double x) {
    return nlohmann::json::parse(format_real(x));
}

nlohmann::json rat_json(const Rat& q) { return rat_to_string(q); }

}  // namespace

nlohmann::json to_json(const ExtReal& x) {
    if (x.infinite) return nlohmann::json{{"infinite", true}};
    return nlohmann::json{{"infinite", false}, {"value", real_json(x.value)}};
}

nlohmann::json to_json(const LatticeBox& b) {
    nlohmann::json edges = nlohmann::json::array();
    for (const auto& e : b.edges()) edges.push_back(e);
    return nlohmann::json{{"dim", b.dim()},
                          {"edges", edges},
                          {"cardinality", b.cardinality().get_str()}};
}

nlohmann::json to_json(const CubeSpec& c) {
    return nlohmann::json{{"dim", c.dim}, {"corner", c.corner}, {"side", c.side}};
}

nlohmann::json to_json(const TrimResult& t) {
    nlohmann::json rounds = nlohmann::json::array();
    for (const auto& r : t.rounds)
        rounds.push_back({{"removed", r.removed}, {"mass", rat_json(r.mass)}});
    return nlohmann::json{{"coord", t.coord},
                          {"alpha", rat_json(t.alpha)},
                          {"kept", t.kept},
                          {"rounds", rounds},
                          {"removed_mass", rat_json(t.removed_mass)},
                          {"hole", rat_json(t.hole)},
                          {"all_trimmed", t.all_trimmed}};
}

nlohmann::json to_json(const TightToInfoReport& r) {
    nlohmann::json coords = nlohmann::json::array();
    for (const auto& c : r.coords) {
        coords.push_back({{"coord", c.coord},
                          {"mutual_information", real_json(c.mi)},
                          {"bound", real_json(c.bound)},
                          {"mi_ok", c.mi_ok},
                          {"hole", rat_json(c.hole)},
                          {"divergence", real_json(c.divergence)},
                          {"hole_ok", c.hole_ok}});
    }
    return nlohmann::json{{"applicable", r.applicable}, {"reason", r.reason},
                          {"epsilon", real_json(r.epsilon)}, {"rho", rat_json(r.rho)},
                          {"coords", coords},           {"all_ok", r.all_ok}};
}

nlohmann::json to_json(const BoxStabilityReport& r) {
    nlohmann::json trims = nlohmann::json::array();
    for (const auto& t : r.trims) trims.push_back(to_json(t));
    return nlohmann::json{{"epsilon", real_json(r.epsilon)},
                          {"rho", rat_json(r.rho)},
                          {"weighted", r.weighted},
                          {"box", to_json(r.box)},
                          {"s_card", r.s_card},
                          {"s_minus_r", r.s_minus_r.get_str()},
                          {"r_minus_s", r.r_minus_s.get_str()},
                          {"sym_diff_ratio", rat_json(r.sym_diff_ratio)},
                          {"theoretical_bound", real_json(r.theoretical_bound)},
                          {"satisfied", r.satisfied},
                          {"s_r_ok", r.s_r_ok},
                          {"r_s_ok", r.r_s_ok},
                          {"vacuous", r.vacuous},
                          {"empty_edge", r.empty_edge},
                          {"trims", trims}};
}

nlohmann::json to_json(const Rectangle2d& r) {
    nlohmann::json r2 = nlohmann::json::array();
    for (const auto& p : r.r2) r2.push_back(p);
    return nlohmann::json{{"coord", r.coord},
                          {"hole", rat_json(r.hole)},
                          {"vacuous", r.vacuous},
                          {"r1", r.r1},
                          {"r2", r2},
                          {"sym_diff", r.sym_diff.get_str()},
                          {"satisfied", r.satisfied}};
}

nlohmann::json to_json(const Certification& c) {
    nlohmann::json j{{"constructed_ratio", rat_json(c.constructed_ratio)},
                     {"theoretical_bound", real_json(c.theoretical_bound)},
                     {"within_bound", c.within_bound},
                     {"oracle_consistent", c.oracle_consistent},
                     {"lw_cover", c.lw_cover},
                     {"lw_constant_ok", c.lw_constant_ok}};
    if (c.oracle_ratio.has_value()) j["oracle_ratio"] = rat_json(*c.oracle_ratio);
    return j;
}

nlohmann::json to_json(const IsoReport& r) {
    nlohmann::json j{{"epsilon_iso", real_json(r.epsilon_iso)},
                     {"delta", real_json(r.delta)},
                     {"a", real_json(r.a)},
                     {"geo_mean", real_json(r.geo_mean)},
                     {"box", to_json(r.box)},
                     {"filtered_box", to_json(r.filtered_box)},
                     {"s_card", r.s_card},
                     {"sym_diff", r.sym_diff.get_str()},
                     {"sym_diff_ratio", rat_json(r.sym_diff_ratio)},
                     {"theoretical_bound", real_json(r.theoretical_bound)},
                     {"proof_bound", real_json(r.proof_bound)},
                     {"satisfied", r.satisfied},
                     {"vacuous", r.vacuous},
                     {"degenerate", r.degenerate},
                     {"claims",
                      {{"light_counts_ok", r.claims.light_counts_ok},
                       {"edge_sizes_ok", r.claims.edge_sizes_ok},
                       {"interval_gaps_ok", r.claims.interval_gaps_ok}}},
                     {"box_report", to_json(r.box_report)}};
    if (r.cube.has_value()) j["cube"] = to_json(*r.cube);
    return j;
}

nlohmann::json to_json(const SharpnessProbe& p) {
    return nlohmann::json{{"epsilon", real_json(p.epsilon)},
                          {"oracle_ratio", rat_json(p.oracle_ratio)},
                          {"scale", real_json(p.scale)},
                          {"ratio_over_scale", real_json(p.ratio_over_scale)}};
}

}  // namespace boxstab
