#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "spectra/spectra_ops.hpp"

using json = nlohmann::json;
using namespace spectra;

namespace {

struct RunConfig {
    unsigned precision = 128;
    int depth = 12;
    int width = 1;  // worker pool hint; reductions are order-deterministic
    std::string format = "text";
    unsigned long seed = 0;
};

// `key = value` lines; '#' comments.
void load_config_file(const std::string& path, RunConfig& cfg) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config file not readable: " + path);
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            auto a = s.find_first_not_of(" \t");
            auto b = s.find_last_not_of(" \t");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
        if (key == "precision") cfg.precision = static_cast<unsigned>(std::stoul(value));
        else if (key == "depth") cfg.depth = std::stoi(value);
        else if (key == "width") cfg.width = std::stoi(value);
        else if (key == "format") cfg.format = value;
        else if (key == "seed") cfg.seed = std::stoul(value);
        else throw std::invalid_argument("config file: unknown key '" + key + "'");
    }
}

Rat parse_rat(const std::string& text) {
    // Decimal ("3.1", "2.97321") or fraction ("221/100").
    auto slash = text.find('/');
    if (slash != std::string::npos) {
        Rat r(Int(text.substr(0, slash)), Int(text.substr(slash + 1)));
        r.canonicalize();
        return r;
    }
    auto dot = text.find('.');
    if (dot == std::string::npos) return Rat(Int(text));
    std::string digits = text.substr(0, dot) + text.substr(dot + 1);
    Int scale = 1;
    for (std::size_t i = dot + 1; i < text.size(); ++i) scale *= 10;
    return make_rat(Int(digits), scale);
}

std::string dec(const SurdSum& v, int digits = 12) { return v.decimal(digits); }

std::string rat_str(const Rat& x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x.get_d());
    return buf;
}

void emit(const std::string& out_path, const std::string& text) {
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path);
        if (!out) throw std::invalid_argument("cannot write " + out_path);
        out << text;
    }
}

json dim_bound_json(const dim::DimBound& b) {
    return json{{"schema", 1},
                {"lo", b.lo.get_d()},
                {"hi", b.hi.get_d()},
                {"lo_exact", b.lo.get_str()},
                {"hi_exact", b.hi.get_str()},
                {"depth", b.depth},
                {"method", b.method},
                {"distortion", b.distortion.get_d()},
                {"transpose_mismatch", b.transpose_mismatch}};
}

sft::TransitionGraph load_graph(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("graph file not readable: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return sft::TransitionGraph::import_text(ss.str());
}

// ---- verify-paper ------------------------------------------------------------

struct Check {
    std::string name;
    std::string computed, expected;
    std::string margin;
    bool pass;
};

std::vector<Check> run_paper_checks(const std::string& only, int eq32_max_m) {
    std::vector<Check> checks;
    auto want = [&](const std::string& name) {
        return only.empty() || name.find(only) != std::string::npos;
    };
    auto table = cf::named_constants();
    auto named = [&](const std::string& n) {
        for (auto& c : table)
            if (c.name == n) return c.value;
        throw std::runtime_error("missing constant");
    };

    if (want("freiman")) {
        std::string got = named("freiman_cF").decimal(11);
        checks.push_back({"freiman_cF_digits", got, "4.52782956616", "11 digits", got == "4.52782956616"});
    }
    if (want("junction")) {
        std::string got = named("junction_gate_2_221").decimal(4);
        checks.push_back({"junction_gate_3.0406", got, "3.0406", "4 digits", got == "3.0406"});
    }
    if (want("eta_floor")) {
        std::string got = named("eta_floor_2_13_14").decimal(4);
        checks.push_back({"eta_floor_3.4109", got, "3.4109", "4 digits", got == "3.4109"});
    }
    if (want("maxf")) {
        for (int N : {2, 3, 4}) {
            SurdSum lhs = SurdSum(cf::B_extreme(N)) * Rat(2) + SurdSum(Rat(N));
            bool ok = lhs == SurdSum(cf::max_f(N));
            SurdSum mn = SurdSum(cf::A_extreme(N)) * Rat(2) + SurdSum(Rat(1));
            bool ok2 = mn == SurdSum(cf::min_f(N));
            checks.push_back({"max_f_identity_N" + std::to_string(N), dec(lhs, 10),
                              dec(SurdSum(cf::max_f(N)), 10), "exact surd", ok});
            checks.push_back({"min_f_identity_N" + std::to_string(N), dec(mn, 10),
                              dec(SurdSum(cf::min_f(N)), 10), "exact surd", ok2});
        }
    }
    if (want("spectrum")) {
        struct Row {
            const char* seq;
            Surd value;
        };
        std::vector<Row> rows{{"(1)*", Surd(Rat(0), Rat(1), 5)},
                              {"(2)*", Surd(Rat(0), Rat(1), 8)},
                              {"(2,2,1,1)*", Surd(Rat(0), make_rat(1, 5), 221)}};
        for (auto& r : rows) {
            SurdSum m = sym::markov_value(sym::BiSeq::parse(r.seq)).value;
            bool ok = m == SurdSum(r.value);
            checks.push_back({std::string("markov_") + r.seq, dec(m, 10), dec(SurdSum(r.value), 10),
                              "exact surd", ok});
        }
        auto below3 = spec::discrete_below_3(4);
        bool ok = below3.size() == 3;
        checks.push_back({"discrete_below_3_period4", std::to_string(below3.size()), "3",
                          "set size", ok});
    }
    if (want("eq32")) {
        for (int m = 1; m <= eq32_max_m; ++m) {
            dim::Eq32Record rec = dim::eq32_verify(m);
            Rat worst1(0), worst2(0);
            for (auto& c : rec.cases) {
                worst1 = std::max(worst1, c.first_sum_sup);
                worst2 = std::max(worst2, c.second_sum_sup);
            }
            checks.push_back({"eq32_first_sum_m" + std::to_string(m), rat_str(worst1), "< 0.412",
                              rat_str(Rat(make_rat(412, 1000) - worst1)), rec.all_ok});
            checks.push_back({"eq32_second_sum_m" + std::to_string(m), rat_str(worst2), "< 0.579",
                              rat_str(Rat(make_rat(579, 1000) - worst2)), rec.all_ok});
        }
    }
    if (want("n2_branch")) {
        dim::N2BranchRecord rec = dim::n2_branch_verify();
        checks.push_back({"n2_branch_sum", rat_str(rec.sum_sup), "< 0.9",
                          rat_str(Rat(make_rat(9, 10) - rec.sum_sup)), rec.ok});
    }
    if (want("dim_sqrt12")) {
        dim::DimBound b = dim::hd_bounds(sft::TransitionGraph::full_shift(2), 10);
        bool ok = b.lo >= make_rat(1, 2);
        checks.push_back({"d_at_sqrt12_equals_1", rat_str(Rat(2 * b.lo)), ">= 1",
                          rat_str(Rat(2 * b.lo - 1)), ok});
    }
    return checks;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"rigorous numerics for the classical Markov and Lagrange spectra"};
    app.require_subcommand(1);

    RunConfig cfg;
    std::string config_path, out_path;
    unsigned precision_flag = 0;
    app.add_option("--config", config_path, "key = value configuration file");
    app.add_option("--precision", precision_flag, "working precision in bits");
    app.add_option("--format", cfg.format, "output format: text, json or csv");
    app.add_option("--seed", cfg.seed, "seed for randomized suites");
    app.add_option("--width", cfg.width, "worker pool hint (results are width-independent)");
    app.add_option("--out", out_path, "write output to a file instead of stdout");

    // cf
    auto* cmd_cf = app.add_subcommand("cf", "evaluate a continued fraction literal");
    std::string cf_expr;
    cmd_cf->add_option("expr", cf_expr, "a0;pre:(period), e.g. 0;2:(2,1)*")->required();

    // markov
    auto* cmd_markov = app.add_subcommand("markov", "Markov and Lagrange value of a bi-sequence");
    std::string markov_expr;
    cmd_markov->add_option("seq", markov_expr, "(lp)*:lt;rt:(rp)* or (P)*")->required();

    // prune
    auto* cmd_prune = app.add_subcommand("prune", "classify window words against t + eps/4");
    int pr_N = 2, pr_ell = 5;
    std::string pr_t = "3.1", pr_eps = "0.1";
    bool pr_full = false;
    cmd_prune->add_option("--N", pr_N, "alphabet bound");
    cmd_prune->add_option("--t", pr_t, "threshold parameter t");
    cmd_prune->add_option("--eps", pr_eps, "epsilon");
    cmd_prune->add_option("--ell", pr_ell, "window radius");
    cmd_prune->add_flag("--full", pr_full, "include full word lists in the output");

    // dim
    auto* cmd_dim = app.add_subcommand("dim", "Hausdorff dimension bounds of a subshift");
    int dim_N = 0, dim_depth = 12, dim_steps = 48;
    std::string dim_graph;
    cmd_dim->add_option("--N", dim_N, "full shift on 1..N");
    cmd_dim->add_option("--graph", dim_graph, "graph file (vertex: succ ... lines)");
    cmd_dim->add_option("--depth", dim_depth, "suffix-state depth");
    cmd_dim->add_option("--steps", dim_steps, "refinement steps of the ratio test");

    // scan
    auto* cmd_scan = app.add_subcommand("scan", "D(t) enclosures over a t grid");
    int sc_N = 2, sc_ell = 5, sc_depth = 10;
    std::string sc_grid = "2.9,3.1", sc_eps = "0.1";
    cmd_scan->add_option("--N", sc_N, "alphabet bound");
    cmd_scan->add_option("--grid", sc_grid, "comma-separated ascending t values");
    cmd_scan->add_option("--eps", sc_eps, "epsilon");
    cmd_scan->add_option("--ell", sc_ell, "window radius");
    cmd_scan->add_option("--depth", sc_depth, "dimension depth");

    // scc
    auto* cmd_scc = app.add_subcommand("scc", "decompose a subshift graph");
    std::string scc_graph;
    cmd_scc->add_option("--graph", scc_graph, "graph file")->required();

    // splice
    auto* cmd_splice = app.add_subcommand("splice", "emit a theta-splice digit stream");
    std::string sp_base = "(1)*";
    long sp_len = 10000;
    std::vector<int> sp_chain_N;
    std::vector<std::string> sp_chain_graphs;
    std::string sp_r;
    std::string sp_schedule_out;
    cmd_splice->add_option("--base", sp_base, "base ray, pre:(period) or (period)*");
    cmd_splice->add_option("--len", sp_len, "prefix length to emit");
    cmd_splice->add_option("--chain-N", sp_chain_N, "chain component: full shift on 1..N");
    cmd_splice->add_option("--chain-graph", sp_chain_graphs, "chain component from a graph file");
    cmd_splice->add_option("--r", sp_r, "comma-separated window radii override");
    cmd_splice->add_option("--schedule-out", sp_schedule_out, "write the schedule JSON here");

    // verify-paper
    auto* cmd_verify = app.add_subcommand("verify-paper", "run the full inequality suite");
    std::string vp_only;
    int vp_m = 8;
    cmd_verify->add_option("--only", vp_only, "restrict to checks whose name contains this");
    cmd_verify->add_option("--m", vp_m, "largest m for the branch-sum suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (!config_path.empty()) load_config_file(config_path, cfg);
        if (precision_flag) cfg.precision = precision_flag;
        if (const char* env = std::getenv("SPECTRA_PRECISION")) {
            cfg.precision = static_cast<unsigned>(std::stoul(env));
        }
        set_precision_bits(cfg.precision);

        if (*cmd_cf) {
            cf::CFExpansion e = cf::CFExpansion::parse(cf_expr);
            Surd v = cf::eval(e);
            RatInterval enc = v.enclosure();
            cf::Convergents conv(e.pre, e.a0);
            json rows = json::array();
            for (long k = 0; k <= conv.depth(); ++k)
                rows.push_back({{"k", k},
                                {"p", conv.p(k).get_str()},
                                {"q", conv.q(k).get_str()}});
            if (cfg.format == "json") {
                json out{{"schema", 1},
                         {"expr", e.str()},
                         {"exact", v.to_string()},
                         {"decimal", SurdSum(v).decimal(20)},
                         {"enclosure", {enc.lo.get_d(), enc.hi.get_d()}},
                         {"convergents", rows}};
                emit(out_path, out.dump(2) + "\n");
            } else {
                std::ostringstream os;
                os << e.str() << " = " << v.to_string() << "\n"
                   << "  decimal  " << SurdSum(v).decimal(20) << "\n"
                   << "  interval [" << rat_str(enc.lo) << ", " << rat_str(enc.hi) << "]\n"
                   << "  convergents (preperiod):\n";
                for (long k = 0; k <= conv.depth(); ++k)
                    os << "    p_" << k << "/q_" << k << " = " << conv.p(k).get_str() << "/"
                       << conv.q(k).get_str() << "\n";
                emit(out_path, os.str());
            }
        } else if (*cmd_markov) {
            sym::BiSeq seq = sym::BiSeq::parse(markov_expr);
            sym::ValueReport m = sym::markov_value(seq);
            sym::ValueReport l = sym::lagrange_value(seq);
            if (cfg.format == "json") {
                json out{{"schema", 1},
                         {"seq", seq.str()},
                         {"markov",
                          {{"exact", m.value.to_string()},
                           {"decimal", dec(m.value)},
                           {"attained", m.attaining_index.has_value()},
                           {"index", m.attaining_index ? *m.attaining_index : 0}}},
                         {"lagrange", {{"exact", l.value.to_string()}, {"decimal", dec(l.value)}}}};
                emit(out_path, out.dump(2) + "\n");
            } else {
                std::ostringstream os;
                os << "m(" << seq.str() << ") = " << m.value.to_string() << " = " << dec(m.value);
                if (m.attaining_index)
                    os << " attained at i = " << *m.attaining_index;
                else
                    os << " (limsup only)";
                os << "\n"
                   << "l(" << seq.str() << ") = " << l.value.to_string() << " = " << dec(l.value)
                   << "\n";
                emit(out_path, os.str());
            }
        } else if (*cmd_prune) {
            spec::PruneResult pr = spec::prune_words(pr_N, parse_rat(pr_t), parse_rat(pr_eps), pr_ell);
            json out{{"schema", 1},
                     {"params", {{"N", pr_N}, {"t", pr_t}, {"eps", pr_eps}, {"ell", pr_ell}}},
                     {"threshold", pr.threshold.get_d()},
                     {"counts",
                      {{"certified", pr.certified.size()},
                       {"possible", pr.possible.size()},
                       {"pruned", pr.pruned_count}}},
                     {"everything_pruned", pr.everything_pruned},
                     {"diagnostic", pr.diagnostic}};
            if (pr_full) {
                json cert = json::array(), poss = json::array();
                for (auto& w : pr.certified) cert.push_back(w.str());
                for (auto& w : pr.possible) poss.push_back(w.str());
                out["certified"] = cert;
                out["possible"] = poss;
                if (!pr.pruned_list_elided) {
                    json pruned = json::array();
                    for (auto& w : pr.pruned) pruned.push_back(w.str());
                    out["pruned"] = pruned;
                }
            }
            emit(out_path, out.dump(2) + "\n");
            if (pr.everything_pruned) return 3;
        } else if (*cmd_dim) {
            if ((dim_N <= 0) == dim_graph.empty())
                throw std::invalid_argument("dim: give exactly one of --N or --graph");
            sft::TransitionGraph g =
                dim_N > 0 ? sft::TransitionGraph::full_shift(dim_N) : load_graph(dim_graph);
            dim::HdOptions opts;
            opts.steps = dim_steps;
            dim::DimBound b = dim::hd_bounds(g, dim_depth, opts);
            emit(out_path, dim_bound_json(b).dump(2) + "\n");
        } else if (*cmd_scan) {
            std::vector<Rat> grid;
            std::stringstream ss(sc_grid);
            std::string tok;
            while (std::getline(ss, tok, ',')) grid.push_back(parse_rat(tok));
            spec::SpectrumScan sc = spec::scan(sc_N, grid, parse_rat(sc_eps), sc_ell, sc_depth);
            std::ostringstream os;
            os << "t,D_lo,D_hi,d_lo,d_hi\n";
            for (auto& p : sc.points)
                os << rat_str(p.t) << "," << rat_str(p.estimate.D.lo) << ","
                   << rat_str(p.estimate.D.hi) << "," << rat_str(p.estimate.d.lo) << ","
                   << rat_str(p.estimate.d.hi) << "\n";
            emit(out_path, os.str());
        } else if (*cmd_scc) {
            sft::TransitionGraph g = load_graph(scc_graph);
            g.core_prune();
            if (g.empty()) {
                emit(out_path, "empty core after pruning\n");
                return 3;
            }
            sft::Decomposition d = sft::scc_decompose(g);
            json comps = json::array();
            for (std::size_t c = 0; c < d.components.size(); ++c) {
                json verts = json::array();
                for (int v : d.components[c]) verts.push_back(g.vertex(v).str());
                const char* kind = d.kinds[c] == sft::ComponentKind::trivial_cycle
                                       ? "trivial"
                                       : (d.kinds[c] == sft::ComponentKind::mixing
                                              ? "mixing"
                                              : "periodic-nonmixing");
                comps.push_back({{"vertices", verts}, {"kind", kind}, {"period", d.periods[c]}});
            }
            json trans = json::array();
            for (int v : d.transient_states) trans.push_back(g.vertex(v).str());
            json tsets = json::array();
            for (auto& t : d.transient_sets)
                tsets.push_back({{"source", t.source_component}, {"sink", t.sink_component}});
            json out{{"schema", 1},
                     {"components", comps},
                     {"transient_states", trans},
                     {"transient_sets", tsets}};
            if (cfg.format == "json") {
                emit(out_path, out.dump(2) + "\n");
            } else {
                std::ostringstream os;
                os << d.components.size() << " component(s), " << d.transient_states.size()
                   << " transient state(s), " << d.transient_sets.size() << " transient set(s)\n";
                emit(out_path, os.str());
            }
        } else if (*cmd_splice) {
            std::vector<spec::ChainComponent> chain;
            for (int n : sp_chain_N)
                chain.push_back(spec::make_chain_component(sft::TransitionGraph::full_shift(n)));
            for (auto& path : sp_chain_graphs)
                chain.push_back(spec::make_chain_component(load_graph(path)));
            sym::Ray base;
            {
                auto colon = sp_base.find(':');
                std::string pre_txt = colon == std::string::npos ? "" : sp_base.substr(0, colon);
                std::string per_txt =
                    colon == std::string::npos ? sp_base : sp_base.substr(colon + 1);
                auto open = per_txt.find('('), close = per_txt.rfind(')');
                if (open == std::string::npos || close == std::string::npos)
                    throw std::invalid_argument("splice: base must be pre:(period) or (period)*");
                base.pre = Word::parse(pre_txt);
                base.period = Word::parse(per_txt.substr(open + 1, close - open - 1));
            }
            spec::SpliceOptions opts;
            if (!sp_r.empty()) {
                std::stringstream ss(sp_r);
                std::string tok;
                while (std::getline(ss, tok, ',')) opts.r_override.push_back(std::stoi(tok));
            }
            spec::SpliceResult r = spec::splice_theta(base, chain, sp_len, opts);
            std::ostringstream os;
            for (std::size_t i = 0; i < r.digits.size(); ++i) {
                if (i) os << ',';
                os << r.digits[i];
            }
            os << "\n";
            emit(out_path, os.str());
            if (!sp_schedule_out.empty()) {
                json sch{{"schema", 1},
                         {"r", r.schedule.r},
                         {"c", r.schedule.c},
                         {"s", r.schedule.s},
                         {"insertions_emitted", r.insertions_emitted}};
                json pos = json::array();
                for (auto& p : r.schedule.insertion_positions) pos.push_back(p.get_str());
                sch["insertion_positions"] = pos;
                json blocks = json::array();
                for (auto& b : r.schedule.blocks) blocks.push_back(b);
                sch["blocks"] = blocks;
                emit(sp_schedule_out, sch.dump(2) + "\n");
            }
        } else if (*cmd_verify) {
            auto checks = run_paper_checks(vp_only, vp_m);
            bool all = true;
            std::ostringstream os;
            for (auto& c : checks) {
                all = all && c.pass;
                os << (c.pass ? "PASS" : "FAIL") << "  " << c.name << ": computed " << c.computed
                   << ", expected " << c.expected << " (margin " << c.margin << ")\n";
            }
            os << (all ? "all checks passed" : "SOME CHECKS FAILED") << " (" << checks.size()
               << " checks)\n";
            emit(out_path, os.str());
            if (!all) return 1;
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "diagnostic: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 4;
    }
    return 0;
}
