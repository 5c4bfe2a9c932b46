// Command-line surface: report-emitting, non-interactive.
//
// Subcommands: gen, verify-uc, approx-box, iso, oracle, sweep.
// Exit codes: 0 success, 1 usage/parse error, 2 bound violation,
//             3 oracle budget refusal.

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <mutex>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "boxstab/box_stability.hpp"
#include "boxstab/generators.hpp"
#include "boxstab/io.hpp"
#include "boxstab/iso.hpp"
#include "boxstab/oracle.hpp"
#include "boxstab/rng.hpp"

using namespace boxstab;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitViolation = 2;
constexpr int kExitRefusal = 3;

void emit(const json& j, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::ofstream out(out_path);
        if (!out) throw std::runtime_error("cannot open '" + out_path + "' for writing");
        out << j.dump(2) << "\n";
    }
}

// BOXSTAB_BUDGET="proj=14,cube=64,time=60" supplies default caps; explicit
// flags override.
OracleBudget budget_from_env(int d) {
    OracleBudget b = OracleBudget::defaults_for(d);
    const char* env = std::getenv("BOXSTAB_BUDGET");
    if (env == nullptr) return b;
    std::stringstream ss(env);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos) continue;
        const std::string key = item.substr(0, eq);
        const std::string val = item.substr(eq + 1);
        try {
            if (key == "proj") b.max_projection_size = std::stoi(val);
            else if (key == "cube") b.max_cube_side = std::stoll(val);
            else if (key == "time") b.time_hint_seconds = std::stod(val);
        } catch (const std::exception&) {
            throw std::runtime_error("bad BOXSTAB_BUDGET entry '" + item + "'");
        }
    }
    return b;
}

CoverFamily load_cover(const std::string& spec, int d) {
    if (spec == "loomis-whitney" || spec == "lw") return CoverFamily::loomis_whitney(d);
    return read_cover_file(spec);
}

// ---------------------------------------------------------------------------
// sweep

struct Range {
    std::int64_t lo = 0;
    std::int64_t hi = 0;
};

Range parse_range(const json& j, const char* name) {
    if (j.is_number_integer()) {
        const std::int64_t v = j.get<std::int64_t>();
        return {v, v};
    }
    if (j.is_array() && j.size() == 2 && j[0].is_number_integer() && j[1].is_number_integer()) {
        Range r{j[0].get<std::int64_t>(), j[1].get<std::int64_t>()};
        if (r.lo > r.hi) throw std::runtime_error(std::string("empty range for ") + name);
        return r;
    }
    throw std::runtime_error(std::string("expected integer or [lo,hi] for ") + name);
}

struct SweepConfig {
    std::string kind;  // approx-box | iso
    std::string family;
    Range a{8, 16};
    Range a_inner{0, 3};
    Range b{8, 16};
    Range flips{0, 4};
    std::vector<int> dims;
    std::string cover = "loomis-whitney";
    std::uint64_t seed = 1;
    int trials = 10;
    std::string format = "csv";
    std::string out;
};

SweepConfig parse_sweep_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    json j;
    in >> j;

    SweepConfig cfg;
    cfg.kind = j.value("kind", "approx-box");
    if (cfg.kind != "approx-box" && cfg.kind != "iso" && cfg.kind != "probe")
        throw std::runtime_error("kind must be approx-box, iso or probe");
    if (!j.contains("family") || !j["family"].contains("name"))
        throw std::runtime_error("missing family.name");
    cfg.family = j["family"]["name"].get<std::string>();
    if (cfg.family != "annulus" && cfg.family != "cuboid" && cfg.family != "perturbed-box")
        throw std::runtime_error("family must be annulus, cuboid or perturbed-box");
    if (cfg.kind == "probe" && cfg.family == "perturbed-box")
        throw std::runtime_error("probe sweeps support annulus and cuboid families only");
    const json& fam = j["family"];
    if (fam.contains("a")) cfg.a = parse_range(fam["a"], "a");
    if (fam.contains("a_inner")) cfg.a_inner = parse_range(fam["a_inner"], "a_inner");
    if (fam.contains("b")) cfg.b = parse_range(fam["b"], "b");
    if (fam.contains("flips")) cfg.flips = parse_range(fam["flips"], "flips");

    if (j.contains("d")) {
        if (j["d"].is_array()) {
            for (const auto& v : j["d"]) cfg.dims.push_back(v.get<int>());
        } else {
            cfg.dims.push_back(j["d"].get<int>());
        }
    } else {
        cfg.dims.push_back(2);
    }
    for (int d : cfg.dims)
        if (d < 2) throw std::runtime_error("sweep dimensions must be >= 2");
    cfg.cover = j.value("cover", std::string("loomis-whitney"));
    cfg.seed = j.value("seed", std::uint64_t{1});
    cfg.trials = j.value("trials", 10);
    if (cfg.trials < 1) throw std::runtime_error("trials must be >= 1");
    cfg.format = j.value("format", std::string("csv"));
    if (cfg.format != "csv" && cfg.format != "json")
        throw std::runtime_error("format must be csv or json");
    cfg.out = j.value("out", std::string());
    return cfg;
}

std::int64_t draw(SplitMix64& rng, const Range& r) {
    return rng.range(r.lo, r.hi);
}

struct TrialRow {
    json fields;  // ordered object
};

TrialRow run_trial(const SweepConfig& cfg, int trial) {
    SplitMix64 rng(derive_seed(cfg.seed, static_cast<std::uint64_t>(trial)));
    const int d = cfg.dims[rng.below(cfg.dims.size())];

    PointSet s(1, {});
    std::string params;
    Coord fam_a = 0, fam_second = 0;  // a_inner (annulus) or b (cuboid)
    if (cfg.family == "annulus") {
        fam_a = std::max<Coord>(2, draw(rng, cfg.a));
        fam_second = std::clamp<Coord>(draw(rng, cfg.a_inner), 0, fam_a - 1);
        s = make_annulus(d, fam_a, fam_second);
        params = "a=" + std::to_string(fam_a) + ";a_inner=" + std::to_string(fam_second);
    } else if (cfg.family == "cuboid") {
        fam_a = std::max<Coord>(1, draw(rng, cfg.a));
        fam_second = std::max<Coord>(fam_a, draw(rng, cfg.b));
        s = make_cuboid(d, fam_a, fam_second);
        params = "a=" + std::to_string(fam_a) + ";b=" + std::to_string(fam_second);
    } else {
        const Coord a = std::max<Coord>(2, draw(rng, cfg.a));
        const LatticeBox base =
            LatticeBox::from_intervals(std::vector<std::pair<Coord, Coord>>(d, {1, a}));
        Int card = base.cardinality();
        std::int64_t flips = draw(rng, cfg.flips);
        if (Int(flips) > card) flips = card.get_si();
        const std::uint64_t pseed = rng.next();
        s = make_perturbed_box(base, flips, pseed);
        params = "a=" + std::to_string(a) + ";flips=" + std::to_string(flips) +
                 ";pseed=" + std::to_string(pseed);
        if (s.empty()) s = base.to_point_set();
    }

    TrialRow row;
    row.fields["trial"] = trial;
    row.fields["kind"] = cfg.kind;
    row.fields["family"] = cfg.family;
    row.fields["params"] = params;
    row.fields["d"] = d;
    row.fields["pts_hash"] = content_hash(s);

    if (cfg.kind == "probe") {
        // oracle-certified sharpness probe: annuli measure the box scaling
        // against eps, cuboids the cube scaling against sqrt(2 d eps)/2
        const OracleBudget budget = budget_from_env(d);
        const SharpnessProbe p = cfg.family == "annulus"
                                     ? sharpness_probe_annulus(d, fam_a, fam_second, budget)
                                     : sharpness_probe_cuboid(d, fam_a, fam_second, budget);
        row.fields["epsilon"] = format_real(p.epsilon);
        row.fields["ratio"] = format_real(to_long_double(p.oracle_ratio));
        row.fields["bound"] = format_real(p.scale);
        row.fields["vacuous"] = 0;
        row.fields["satisfied"] = 1;
        row.fields["conjecture_stat"] = format_real(p.ratio_over_scale);
    } else if (cfg.kind == "approx-box") {
        const CoverFamily g = load_cover(cfg.cover, d);
        const BoxStabilityReport rep = approximate_box(s, g);
        const long double ratio = to_long_double(rep.sym_diff_ratio);
        row.fields["epsilon"] = format_real(rep.epsilon);
        row.fields["ratio"] = format_real(ratio);
        row.fields["bound"] = format_real(rep.theoretical_bound);
        row.fields["vacuous"] = rep.vacuous ? 1 : 0;
        row.fields["satisfied"] = rep.satisfied ? 1 : 0;
        // conjecture probe: is |S delta B| <= C rho eps |S| for an absolute C?
        const long double scale = to_long_double(rep.rho) * rep.epsilon;
        row.fields["conjecture_stat"] = scale > 0 ? format_real(ratio / scale) : "";
    } else {
        const IsoReport rep = approximate_cube(s);
        const long double ratio = to_long_double(rep.sym_diff_ratio);
        row.fields["epsilon"] = format_real(rep.epsilon_iso);
        row.fields["ratio"] = format_real(ratio);
        row.fields["bound"] = format_real(rep.theoretical_bound);
        row.fields["vacuous"] = rep.vacuous ? 1 : 0;
        row.fields["satisfied"] = rep.satisfied ? 1 : 0;
        // conjecture probe: is |S delta C| <= c sqrt(d eps) |S| for absolute c?
        row.fields["conjecture_stat"] = rep.delta > 0 ? format_real(ratio / rep.delta) : "";
    }
    return row;
}

const char* kSweepColumns[] = {"trial", "kind",    "family",    "params",
                               "d",     "pts_hash", "epsilon",  "ratio",
                               "bound", "vacuous",  "satisfied", "conjecture_stat"};

std::string csv_cell(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
    return v.dump();
}

struct SweepOverrides {
    std::vector<int> dims;
    std::int64_t seed = -1;
    std::int64_t trials = -1;
    std::string format;
    std::string out;
};

int cmd_sweep(const std::string& config_path, const SweepOverrides& ov) {
    SweepConfig cfg = parse_sweep_config(config_path);
    if (!ov.dims.empty()) cfg.dims = ov.dims;
    if (ov.seed >= 0) cfg.seed = static_cast<std::uint64_t>(ov.seed);
    if (ov.trials >= 0) cfg.trials = static_cast<int>(ov.trials);
    if (!ov.format.empty()) cfg.format = ov.format;
    if (!ov.out.empty()) cfg.out = ov.out;
    for (int d : cfg.dims)
        if (d < 2) throw std::runtime_error("sweep dimensions must be >= 2");
    if (cfg.kind == "approx-box" && cfg.cover != "loomis-whitney" && cfg.cover != "lw") {
        // a cover file fixes the dimension for every trial
        const CoverFamily g = read_cover_file(cfg.cover);
        for (int d : cfg.dims)
            if (d != g.dim())
                throw std::runtime_error("cover file has d=" + std::to_string(g.dim()) +
                                         " but the sweep requests d=" + std::to_string(d));
    }

    std::vector<TrialRow> rows(static_cast<std::size_t>(cfg.trials));
    std::atomic<int> next{0};
    std::atomic<bool> failed{false};
    std::atomic<bool> refused{false};
    std::string error, refusal_reason, refusal_required;
    std::mutex error_mutex;
    auto worker = [&] {
        for (int i = next.fetch_add(1); i < cfg.trials; i = next.fetch_add(1)) {
            try {
                rows[static_cast<std::size_t>(i)] = run_trial(cfg, i);
            } catch (const oracle_refusal& r) {
                std::lock_guard<std::mutex> lock(error_mutex);
                refused = true;
                if (refusal_reason.empty()) {
                    refusal_reason = r.reason;
                    refusal_required = r.required;
                }
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> lock(error_mutex);
                failed = true;
                if (error.empty()) error = e.what();
            }
        }
    };
    const unsigned workers = std::min<unsigned>(
        std::max(1u, std::thread::hardware_concurrency()),
        std::min<unsigned>(8, static_cast<unsigned>(cfg.trials)));
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    if (refused) throw oracle_refusal(refusal_reason, refusal_required);
    if (failed) throw std::runtime_error("sweep trial failed: " + error);

    std::ostringstream out;
    if (cfg.format == "csv") {
        for (std::size_t c = 0; c < std::size(kSweepColumns); ++c) {
            if (c) out << ',';
            out << kSweepColumns[c];
        }
        out << "\n";
        for (const TrialRow& row : rows) {
            for (std::size_t c = 0; c < std::size(kSweepColumns); ++c) {
                if (c) out << ',';
                out << csv_cell(row.fields.at(kSweepColumns[c]));
            }
            out << "\n";
        }
    } else {
        json arr = json::array();
        for (const TrialRow& row : rows) arr.push_back(row.fields);
        out << arr.dump(2) << "\n";
    }

    if (cfg.out.empty()) {
        std::cout << out.str();
    } else {
        std::ofstream f(cfg.out, std::ios::binary);
        if (!f) throw std::runtime_error("cannot open '" + cfg.out + "' for writing");
        f << out.str();
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"stability certificates for projection and isoperimetric inequalities"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "generate a point-set file");
    std::string gen_family = "annulus";
    int gen_d = 2;
    std::int64_t gen_a = 10, gen_inner = 3, gen_b = 0, gen_flips = 0;
    std::uint64_t gen_seed = 1;
    std::string gen_out;
    gen->add_option("--family", gen_family, "annulus | cuboid | perturbed-box")
        ->check(CLI::IsMember({"annulus", "cuboid", "perturbed-box"}));
    gen->add_option("--d", gen_d, "dimension")->required();
    gen->add_option("--a", gen_a, "outer side / base side");
    gen->add_option("--a-inner", gen_inner, "inner side (annulus)");
    gen->add_option("--b", gen_b, "long side (cuboid)");
    gen->add_option("--flips", gen_flips, "toggled points (perturbed-box)");
    gen->add_option("--seed", gen_seed, "seed (perturbed-box)");
    gen->add_option("--out", gen_out, "output path (default stdout)");

    // verify-uc
    auto* verify = app.add_subcommand("verify-uc", "check the cover inequality and lemma bounds");
    std::string v_set, v_cover, v_out;
    verify->add_option("--set", v_set, "pts file")->required();
    verify->add_option("--cover", v_cover, "cover file or 'loomis-whitney'")->required();
    verify->add_option("--out", v_out, "output path (default stdout)");

    // approx-box
    auto* ab = app.add_subcommand("approx-box", "construct the near-optimal box");
    std::string ab_set, ab_cover = "loomis-whitney", ab_out;
    bool ab_certify = false;
    int ab_proj = -1;
    std::int64_t ab_cube = -1;
    ab->add_option("--set", ab_set, "pts file")->required();
    ab->add_option("--cover", ab_cover, "cover file or 'loomis-whitney'");
    ab->add_flag("--certify", ab_certify, "include the oracle comparison");
    ab->add_option("--budget-projection", ab_proj, "oracle projection cap (log2)");
    ab->add_option("--budget-cube-side", ab_cube, "oracle cube side cap");
    ab->add_option("--out", ab_out, "output path (default stdout)");

    // iso
    auto* iso = app.add_subcommand("iso", "construct the near-optimal cube");
    std::string iso_set, iso_out;
    iso->add_option("--set", iso_set, "pts file")->required();
    iso->add_option("--out", iso_out, "output path (default stdout)");

    // oracle
    auto* orc = app.add_subcommand("oracle", "brute-force optimal box/cube");
    std::string o_set, o_target = "box", o_out;
    int o_proj = -1;
    std::int64_t o_cube = -1;
    orc->add_option("--set", o_set, "pts file")->required();
    orc->add_option("--target", o_target, "box | cube")->check(CLI::IsMember({"box", "cube"}));
    orc->add_option("--budget-projection", o_proj, "projection cap (log2 of per-coordinate candidates)");
    orc->add_option("--budget-cube-side", o_cube, "cube side cap");
    orc->add_option("--out", o_out, "output path (default stdout)");

    // sweep
    auto* sweep = app.add_subcommand("sweep", "randomized family sweep (CSV/JSON)");
    std::string sweep_config;
    std::vector<int> sweep_dims;
    std::int64_t sweep_seed = -1, sweep_trials = -1;
    std::string sweep_format, sweep_out;
    sweep->add_option("--config", sweep_config, "sweep config JSON")->required();
    sweep->add_option("--d", sweep_dims, "override: dimension list");
    sweep->add_option("--seed", sweep_seed, "override: seed");
    sweep->add_option("--trials", sweep_trials, "override: trial count");
    sweep->add_option("--format", sweep_format, "override: csv|json")
        ->check(CLI::IsMember({"csv", "json"}));
    sweep->add_option("--out", sweep_out, "override: output path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::Success& e) {
        return app.exit(e);  // --help and friends
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*gen) {
            PointSet s(1, {});
            if (gen_family == "annulus") {
                s = make_annulus(gen_d, gen_a, gen_inner);
            } else if (gen_family == "cuboid") {
                if (gen_b == 0) gen_b = gen_a;
                s = make_cuboid(gen_d, gen_a, gen_b);
            } else {
                const LatticeBox base = LatticeBox::from_intervals(
                    std::vector<std::pair<Coord, Coord>>(gen_d, {1, gen_a}));
                s = make_perturbed_box(base, gen_flips, gen_seed);
            }
            if (gen_out.empty()) {
                write_point_set(std::cout, s);
            } else {
                write_point_set_file(gen_out, s);
            }
            return kExitOk;
        }

        if (*verify) {
            std::ifstream in(v_set);
            if (!in) throw std::runtime_error("cannot open '" + v_set + "'");
            const PointSetReadResult r = read_point_set_verbose(in);
            if (r.duplicates_dropped > 0)
                std::cerr << "warning: " << r.duplicates_dropped
                          << " duplicate points deduplicated\n";
            const CoverFamily g = load_cover(v_cover, r.set.dim());
            const Tightness t = uc_tightness(r.set, g);
            const TightToInfoReport rep = tight_to_info_check(r.set, g);
            json j = to_json(rep);
            j["epsilon_raw_nonneg"] = t.epsilon_raw >= -1e-12L;
            j["rhs"] = json::parse(format_real(t.rhs));
            emit(j, v_out);
            const bool ok = t.epsilon_raw >= -1e-12L && (!rep.applicable || rep.all_ok);
            return ok ? kExitOk : kExitViolation;
        }

        if (*ab) {
            const PointSet s = read_point_set_file(ab_set);
            const CoverFamily g = load_cover(ab_cover, s.dim());
            const BoxStabilityReport rep = approximate_box(s, g);
            json j = to_json(rep);
            if (ab_certify) {
                OracleBudget budget = budget_from_env(s.dim());
                if (ab_proj >= 0) budget.max_projection_size = ab_proj;
                if (ab_cube >= 0) budget.max_cube_side = ab_cube;
                j["certification"] = to_json(certify_bound(s, g, rep, &budget));
            }
            emit(j, ab_out);
            return (rep.satisfied || rep.vacuous) ? kExitOk : kExitViolation;
        }

        if (*iso) {
            const PointSet s = read_point_set_file(iso_set);
            const IsoReport rep = approximate_cube(s);
            emit(to_json(rep), iso_out);
            return (rep.satisfied || rep.vacuous || rep.degenerate) ? kExitOk : kExitViolation;
        }

        if (*orc) {
            const PointSet s = read_point_set_file(o_set);
            OracleBudget budget = budget_from_env(s.dim());
            if (o_proj >= 0) budget.max_projection_size = o_proj;
            if (o_cube >= 0) budget.max_cube_side = o_cube;
            try {
                json j;
                if (o_target == "box") {
                    const OptimalBox ob = optimal_box(s, budget);
                    j["target"] = "box";
                    j["box"] = to_json(ob.box);
                    j["sym_diff"] = ob.sym_diff.get_str();
                } else {
                    const OptimalCube oc = optimal_cube(s, budget);
                    j["target"] = "cube";
                    j["cube"] = to_json(oc.cube);
                    j["sym_diff"] = oc.sym_diff.get_str();
                }
                emit(j, o_out);
                return kExitOk;
            } catch (const oracle_refusal& r) {
                json j{{"refusal", r.reason}, {"required", r.required}};
                emit(j, o_out);
                return kExitRefusal;
            }
        }

        if (*sweep) {
            SweepOverrides ov;
            ov.dims = sweep_dims;
            ov.seed = sweep_seed;
            ov.trials = sweep_trials;
            ov.format = sweep_format;
            ov.out = sweep_out;
            return cmd_sweep(sweep_config, ov);
        }
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const oracle_refusal& e) {
        const json j{{"refusal", e.reason}, {"required", e.required}};
        std::cout << j.dump(2) << "\n";
        return kExitRefusal;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
