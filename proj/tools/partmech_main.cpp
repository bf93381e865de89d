// partmech: generate, solve, evaluate, and compare partition pricing
// mechanisms for a single additive buyer over independent discrete items.
//
// Exit codes: 0 success, 2 usage or argument error, 3 size/budget error
// (oracle bound, support cap, exhausted candidate budget), 4 file/parse error.

#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "partmech/errors.hpp"
#include "partmech/exact_solver.hpp"
#include "partmech/generators.hpp"
#include "partmech/instance_io.hpp"
#include "partmech/ptas.hpp"

namespace {

using namespace partmech;
using nlohmann::json;

constexpr int kExitUsage = 2;
constexpr int kExitSize = 3;
constexpr int kExitFile = 4;

int exit_code_for(const Error& e) {
    switch (e.kind()) {
        case ErrorKind::SupportExplosion:
        case ErrorKind::InstanceTooLarge:
        case ErrorKind::OracleSizeExceeded:
            return kExitSize;
        case ErrorKind::FileFormat:
            return kExitFile;
        default:
            return kExitUsage;
    }
}

json rational_report(const Rational& q) {
    return json{{"rational", format_rational(q)}, {"decimal", format_decimal(q)}};
}

std::vector<Hyperedge> parse_edges(const std::string& text) {
    // "x,y,z;x,y,z;..."
    std::vector<Hyperedge> edges;
    std::stringstream ss(text);
    std::string triple;
    while (std::getline(ss, triple, ';')) {
        if (triple.empty()) continue;
        Hyperedge e;
        char c1 = 0, c2 = 0;
        std::stringstream ts(triple);
        if (!(ts >> e.x >> c1 >> e.y >> c2 >> e.z) || c1 != ',' || c2 != ',') {
            throw Error(ErrorKind::InvalidArgument, "bad edge triple '" + triple + "'");
        }
        edges.push_back(e);
    }
    if (edges.empty()) {
        throw Error(ErrorKind::InvalidArgument, "no hyperedges in '" + text + "'");
    }
    return edges;
}

std::uint64_t candidate_cap_from_env(std::uint64_t fallback) {
    const char* env = std::getenv("PARTMECH_CANDIDATE_CAP");
    if (env == nullptr || *env == '\0') return fallback;
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end == nullptr || *end != '\0' || v == 0) {
        throw Error(ErrorKind::InvalidArgument,
                    std::string("bad PARTMECH_CANDIDATE_CAP '") + env + "'");
    }
    return v;
}

struct SolveFlags {
    std::string method = "exact";
    std::string eps = "1/4";
    std::string delta = "1/4";
    int ell_max = 3;
    int grid_levels = 3;
    int low_exp = 2;
    int threads = 1;
    int max_n = 12;
    std::size_t support_cap = kDefaultSupportCap;

    PtasConfig ptas_config() const {
        PtasConfig cfg;
        cfg.eps = parse_rational(eps);
        cfg.delta = parse_rational(delta);
        cfg.ell_max = ell_max;
        cfg.grid_levels = grid_levels;
        cfg.low_threshold_exp = low_exp;
        cfg.threads = threads;
        cfg.support_cap = support_cap;
        cfg.max_candidates = candidate_cap_from_env(cfg.max_candidates);
        return cfg;
    }

    ExactOptions exact_options() const {
        ExactOptions opts;
        opts.max_n = max_n;
        opts.threads = threads;
        opts.support_cap = support_cap;
        return opts;
    }
};

void add_solver_flags(CLI::App* cmd, SolveFlags& flags) {
    cmd->add_option("--method", flags.method, "exact | ptas")
        ->check(CLI::IsMember({"exact", "ptas"}));
    cmd->add_option("--eps", flags.eps, "net granularity (rational, e.g. 1/4)");
    cmd->add_option("--delta", flags.delta, "target loss (rational)");
    cmd->add_option("--ell-max", flags.ell_max, "bundle budget");
    cmd->add_option("--grid-levels", flags.grid_levels, "dyadic allocation grid depth");
    cmd->add_option("--low-exp", flags.low_exp, "low-value cutoff exponent (1 or 2)");
    cmd->add_option("--threads", flags.threads, "worker threads");
    cmd->add_option("--max-n", flags.max_n, "exact oracle item bound");
    cmd->add_option("--support-cap", flags.support_cap, "convolution support cap");
}

json quote_or_error(const ProductInstance& inst, bool grand, std::size_t support_cap) {
    try {
        if (grand) {
            PriceQuote q = brev(inst, support_cap);
            json out = rational_report(q.revenue);
            out["price"] = format_rational(q.price);
            return out;
        }
        return rational_report(srev(inst).revenue);
    } catch (const Error& e) {
        return json{{"error", to_string(e.kind())}};
    }
}

int cmd_gen(const std::string& family, int n, int max_support, long value_bound,
            std::uint64_t seed, const std::string& edges_text, const std::string& out_path) {
    GenSpec spec;
    if (family == "two-bundles") {
        spec.family = GenSpec::Family::TwoBundles;
    } else if (family == "hart-nisan") {
        spec.family = GenSpec::Family::HartNisan;
    } else if (family == "two-gap") {
        spec.family = GenSpec::Family::TwoGap;
        spec.n = n;
    } else if (family == "3dm") {
        spec.family = GenSpec::Family::ThreeDM;
        spec.edges = parse_edges(edges_text);
    } else if (family == "random") {
        spec.family = GenSpec::Family::Random;
        spec.n = n;
        spec.max_support_size = max_support;
        spec.value_bound = value_bound;
        spec.seed = seed;
    } else {
        throw Error(ErrorKind::InvalidArgument, "unknown family '" + family + "'");
    }
    GeneratedInstance gen = generate(spec);
    const std::string text = write_instance_json(gen.instance);
    if (out_path.empty()) {
        std::cout << text;
    } else {
        write_text_file(out_path, text);
        if (gen.meta) {
            write_text_file(out_path + ".meta.json", write_gadget_meta_json(*gen.meta));
        }
    }
    return 0;
}

int cmd_solve(const std::string& instance_path, const SolveFlags& flags,
              const std::string& out_path, const std::string& report_path) {
    ProductInstance inst = read_instance_json(read_text_file(instance_path));

    SolveReport report;
    if (flags.method == "exact") {
        report = solve_exact(inst, flags.exact_options());
    } else {
        report = solve_ptas(inst, flags.ptas_config());
    }

    json doc;
    doc["method"] = flags.method;
    doc["revenue"] = rational_report(report.revenue);
    doc["srev"] = quote_or_error(inst, false, flags.support_cap);
    doc["brev"] = quote_or_error(inst, true, flags.support_cap);
    doc["partitions_examined"] = report.partitions_examined;
    doc["elapsed_seconds"] = report.elapsed.count();
    doc["truncated"] = report.truncated;
    doc["guard_skipped"] = report.guard_skipped;

    const std::string mech_text = write_mechanism_json(report.best);
    if (!out_path.empty()) write_text_file(out_path, mech_text);
    doc["mechanism"] = json::parse(mech_text);

    const std::string report_text = doc.dump(2) + "\n";
    if (!report_path.empty()) write_text_file(report_path, report_text);
    std::cout << report_text;

    if (report.truncated) {
        std::cerr << "budget-exhausted: candidate budget reached; result is the best found\n";
        return kExitSize;
    }
    return 0;
}

int cmd_eval(const std::string& instance_path, const std::string& mech_path, bool as_menu,
             std::size_t support_cap) {
    ProductInstance inst = read_instance_json(read_text_file(instance_path));
    Rational revenue;
    if (as_menu) {
        revenue = eval_menu(inst, read_menu_json(read_text_file(mech_path)));
    } else {
        revenue = eval_partition(inst, read_mechanism_json(read_text_file(mech_path)), support_cap);
    }
    json doc{{"revenue", rational_report(revenue)}};
    std::cout << doc.dump(2) << "\n";
    return 0;
}

struct CompareRow {
    std::string id;
    ProductInstance instance;
    bool two_gap = false;
};

int cmd_compare(const std::vector<std::string>& files, const std::string& family,
                const std::string& n_list, int count, int max_support, long value_bound,
                std::uint64_t seed, int exact_max, const SolveFlags& flags,
                const std::string& out_path) {
    std::vector<CompareRow> rows;
    for (const std::string& f : files) {
        CompareRow row;
        row.id = std::filesystem::path(f).stem().string();
        row.instance = read_instance_json(read_text_file(f));
        rows.push_back(std::move(row));
    }
    if (!family.empty()) {
        std::vector<int> ns;
        std::stringstream ss(n_list);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            if (!tok.empty()) ns.push_back(std::stoi(tok));
        }
        if (family == "two-gap") {
            for (int n : ns) {
                rows.push_back(CompareRow{"two-gap-n" + std::to_string(n), gen_two_gap(n), true});
            }
        } else if (family == "random") {
            if (ns.empty()) ns.push_back(6);
            for (int n : ns) {
                for (int c = 0; c < count; ++c) {
                    std::uint64_t s = seed + static_cast<std::uint64_t>(c);
                    rows.push_back(CompareRow{
                        "random-n" + std::to_string(n) + "-s" + std::to_string(s),
                        gen_random(n, max_support, value_bound, s), false});
                }
            }
        } else if (family == "two-bundles") {
            rows.push_back(CompareRow{"two-bundles", gen_two_bundles(), false});
        } else if (family == "hart-nisan") {
            rows.push_back(CompareRow{"hart-nisan", gen_hart_nisan(), false});
        } else {
            throw Error(ErrorKind::InvalidArgument, "unknown sweep family '" + family + "'");
        }
    }
    if (rows.empty()) {
        throw Error(ErrorKind::InvalidArgument, "compare needs instance files or a --family sweep");
    }

    std::ostringstream csv;
    csv << "instance_id,n,srev,brev,prev_exact,prev_ptas,ratio_prev_over_maxsb,"
           "elapsed_exact,elapsed_ptas\n";
    for (const CompareRow& row : rows) {
        const ProductInstance& inst = row.instance;
        csv << row.id << "," << inst.size() << ",";

        Rational srev_value = srev(inst).revenue;
        csv << format_rational(srev_value) << ",";

        std::optional<Rational> brev_value;
        try {
            brev_value = brev(inst, flags.support_cap).revenue;
            csv << format_rational(*brev_value);
        } catch (const Error& e) {
            csv << "ERR:" << to_string(e.kind());
        }
        csv << ",";

        std::optional<Rational> prev_exact;
        double elapsed_exact = 0.0;
        if (inst.size() <= exact_max) {
            try {
                SolveReport r = solve_exact(inst, flags.exact_options());
                prev_exact = r.revenue;
                elapsed_exact = r.elapsed.count();
                csv << format_rational(r.revenue);
            } catch (const Error& e) {
                csv << "ERR:" << to_string(e.kind());
            }
        } else {
            csv << "ERR:oracle-size-exceeded";
        }
        csv << ",";

        std::optional<Rational> prev_ptas;
        double elapsed_ptas = 0.0;
        try {
            SolveReport r = solve_ptas(inst, flags.ptas_config());
            prev_ptas = r.revenue;
            elapsed_ptas = r.elapsed.count();
            csv << format_rational(r.revenue);
        } catch (const Error& e) {
            csv << "ERR:" << to_string(e.kind());
        }
        csv << ",";

        // Best known lower bound on the optimal partition revenue: the oracle
        // when feasible, the approximate search otherwise, and for the two-gap
        // family also the structural mechanism (one bundle over the
        // concentrated half, rare items sold separately).
        std::optional<Rational> prev_best = prev_exact;
        if (prev_ptas && (!prev_best || *prev_ptas > *prev_best)) prev_best = prev_ptas;
        if (row.two_gap) {
            const int half = inst.size() / 2;
            std::vector<std::vector<int>> partition;
            std::vector<int> bundle_a;
            for (int i = 0; i < half; ++i) bundle_a.push_back(i);
            partition.push_back(bundle_a);
            for (int i = half; i < inst.size(); ++i) partition.push_back({i});
            Rational lb = optimize_prices(inst, partition, flags.support_cap).revenue;
            if (!prev_best || lb > *prev_best) prev_best = lb;
        }
        if (prev_best && brev_value) {
            Rational max_sb = std::max(srev_value, *brev_value);
            csv << format_decimal(*prev_best / max_sb);
        } else {
            csv << "ERR:unavailable";
        }
        char elapsed[64];
        std::snprintf(elapsed, sizeof elapsed, ",%.6f,%.6f\n", elapsed_exact, elapsed_ptas);
        csv << elapsed;
    }

    if (out_path.empty()) {
        std::cout << csv.str();
    } else {
        write_text_file(out_path, csv.str());
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"partition-mechanism toolkit: exact and approximate revenue optimization"};
    app.require_subcommand(1);

    // gen
    std::string gen_family, gen_edges, gen_out;
    int gen_n = 4, gen_max_support = 3;
    long gen_value_bound = 10;
    std::uint64_t gen_seed = 0;
    CLI::App* gen = app.add_subcommand("gen", "generate an instance file");
    gen->add_option("family", gen_family, "two-bundles | hart-nisan | two-gap | 3dm | random")
        ->required();
    gen->add_option("--n", gen_n, "item count (two-gap: pairs; random: items)");
    gen->add_option("--seed", gen_seed, "random seed");
    gen->add_option("--max-support", gen_max_support, "max support size (random)");
    gen->add_option("--value-bound", gen_value_bound, "max value (random)");
    gen->add_option("--edges", gen_edges, "3dm hyperedges as 'x,y,z;x,y,z'");
    gen->add_option("--out", gen_out, "output file (stdout when omitted)");

    // solve
    std::string solve_instance, solve_out, solve_report;
    SolveFlags solve_flags;
    CLI::App* solve = app.add_subcommand("solve", "find a revenue-maximizing partition");
    solve->add_option("instance", solve_instance, "instance JSON file")->required();
    add_solver_flags(solve, solve_flags);
    solve->add_option("--out", solve_out, "mechanism output file");
    solve->add_option("--report", solve_report, "report output file");

    // eval
    std::string eval_instance, eval_mech;
    bool eval_as_menu = false;
    std::size_t eval_cap = kDefaultSupportCap;
    CLI::App* eval = app.add_subcommand("eval", "evaluate a mechanism or menu exactly");
    eval->add_option("instance", eval_instance, "instance JSON file")->required();
    eval->add_option("mechanism", eval_mech, "mechanism (or menu) JSON file")->required();
    eval->add_flag("--menu", eval_as_menu, "treat the second file as a choose-one menu");
    eval->add_option("--support-cap", eval_cap, "convolution support cap");

    // compare
    std::vector<std::string> cmp_files;
    std::string cmp_family, cmp_nlist, cmp_out;
    int cmp_count = 1, cmp_exact_max = 12, cmp_max_support = 3;
    long cmp_value_bound = 10;
    std::uint64_t cmp_seed = 1;
    SolveFlags cmp_flags;
    CLI::App* cmp = app.add_subcommand("compare", "benchmark table (CSV) across instances");
    cmp->add_option("instances", cmp_files, "instance JSON files");
    cmp->add_option("--family", cmp_family, "sweep family instead of files");
    cmp->add_option("--n-list", cmp_nlist, "comma-separated instance sizes for the sweep");
    cmp->add_option("--count", cmp_count, "instances per size (random sweep)");
    cmp->add_option("--max-support", cmp_max_support, "max support size (random sweep)");
    cmp->add_option("--value-bound", cmp_value_bound, "max value (random sweep)");
    cmp->add_option("--seed", cmp_seed, "base seed (random sweep)");
    cmp->add_option("--exact-max", cmp_exact_max, "run the oracle only up to this many items");
    add_solver_flags(cmp, cmp_flags);
    cmp->add_option("--out", cmp_out, "CSV output file (stdout when omitted)");

    try {
        app.parse(argc, argv);
        if (gen->parsed()) {
            return cmd_gen(gen_family, gen_n, gen_max_support, gen_value_bound, gen_seed,
                           gen_edges, gen_out);
        }
        if (solve->parsed()) {
            return cmd_solve(solve_instance, solve_flags, solve_out, solve_report);
        }
        if (eval->parsed()) {
            return cmd_eval(eval_instance, eval_mech, eval_as_menu, eval_cap);
        }
        if (cmp->parsed()) {
            return cmd_compare(cmp_files, cmp_family, cmp_nlist, cmp_count, cmp_max_support,
                               cmp_value_bound, cmp_seed, cmp_exact_max, cmp_flags, cmp_out);
        }
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
