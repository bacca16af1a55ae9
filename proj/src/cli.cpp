#include "forestsmith/cli.hpp"

#include "forestsmith/errors.hpp"
#include "forestsmith/io.hpp"
#include "forestsmith/kofn.hpp"
#include "forestsmith/lossy_reduce.hpp"
#include "forestsmith/majority_reduce.hpp"
#include "forestsmith/random.hpp"
#include "forestsmith/truth_table.hpp"
#include "forestsmith/verify.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <ostream>
#include <sstream>

namespace forestsmith::cli {

namespace {

std::string optional_field(const auto& value) {
    if (!value) return "";
    return std::to_string(*value);
}

void warn_if_large(int l, std::ostream& err) {
    if (l > kTruthTableSoftCap)
        err << "warning: enumerating 2^" << l << " inputs; this may take a while\n";
}

// Number of inputs where the bag's vote differs from `oracle`, over 2^l.
Rational oracle_error(const Bag& bag, const InputPredicate& oracle) {
    const std::uint64_t count = std::uint64_t{1} << bag.n_vars();
    std::uint64_t wrong = 0;
    for (std::uint64_t i = 0; i < count; ++i)
        if (bag.eval_index(i) != oracle(InputVector(i, bag.n_vars()))) ++wrong;
    return Rational(BigCount(wrong), BigCount(count));
}

}  // namespace

std::string to_csv_row(const SweepRecord& r) {
    std::ostringstream row;
    row << r.mode << ',' << r.construction << ',' << r.n << ',' << optional_field(r.k) << ','
        << optional_field(r.c) << ',' << optional_field(r.K) << ',' << optional_field(r.seed) << ','
        << r.max_tree_size.str() << ',' << r.total_size.str() << ',' << r.bound_value.str() << ','
        << decimal_string(r.ratio) << ',' << (r.verified ? "true" : "false") << ',' << fraction_string(r.error)
        << ',' << decimal_string(r.error);
    return row.str();
}

std::vector<SweepRecord> sweep_kofn(int n_min, int n_max, bool include_naive) {
    std::vector<SweepRecord> records;
    for (int n = std::max(n_min, 3); n <= n_max; ++n) {
        if (n % 2 == 0) continue;
        const int m = (n + 1) / 2;
        for (int k = 1; k <= n; ++k) {
            const ChooseSpec spec{.n = n, .k = k};
            for (int variant = 0; variant < (include_naive ? 2 : 1); ++variant) {
                const Bag bag = variant == 0 ? build_choose_bag(spec) : build_choose_bag_naive(spec);
                SweepRecord r;
                r.mode = "kofn";
                r.construction = variant == 0 ? "choose" : "naive";
                r.n = n;
                r.k = k;
                r.max_tree_size = bag.max_tree_size();
                r.total_size = bag.total_size();
                r.bound_value = power(n, static_cast<unsigned>(std::abs(m - k) + 1));
                r.ratio = Rational(r.max_tree_size, r.bound_value);
                r.error = oracle_error(bag, [k](const InputVector& x) { return threshold_oracle(k, x); });
                r.verified = r.error == 0;
                records.push_back(std::move(r));
            }
        }
    }
    return records;
}

std::vector<SweepRecord> sweep_majority(int n_min, int n_max, int c_max) {
    std::vector<SweepRecord> records;
    for (int n = std::max(n_min, 3); n <= n_max; ++n) {
        if (n % 2 == 0) continue;
        const int m = (n + 1) / 2;
        for (int c = 1; c <= std::min(c_max, m - 2); ++c) {
            const Bag bag = build_reduced_majority(n, c);
            SweepRecord r;
            r.mode = "majority";
            r.construction = "reduced";
            r.n = n;
            r.c = c;
            r.max_tree_size = bag.max_tree_size();
            r.total_size = bag.total_size();
            r.bound_value = power(2, 2 * c) * power(n, c + 1);
            r.ratio = Rational(r.max_tree_size, r.bound_value);
            r.error = oracle_error(bag, [](const InputVector& x) { return majority_oracle(x); });
            r.verified = r.error == 0 && static_cast<int>(bag.tree_count()) == n - 2 * c;
            records.push_back(std::move(r));
        }
    }
    return records;
}

std::vector<SweepRecord> sweep_lossy(const LossySweepOptions& o) {
    std::vector<SweepRecord> records;
    for (int i = 0; i < o.count; ++i) {
        const std::uint64_t seed = o.seed + static_cast<std::uint64_t>(i);
        const Bag bag = random_bag(seed, o.trees, o.l, o.max_depth);
        const bool uniform = o.mix == DistributionMix::Uniform || (o.mix == DistributionMix::Mixed && i % 2 == 0);
        const Distribution dist = uniform ? Distribution::uniform(o.l)
                                          : random_distribution(seed ^ 0x9e3779b97f4a7c15ULL, o.l, o.max_weight);
        const IteratedResult result = reduce_c_times(bag, o.K, o.c, dist);
        SweepRecord r;
        r.mode = "lossy";
        r.construction = "random";
        r.n = o.trees;
        r.c = o.c;
        r.K = o.K;
        r.seed = seed;
        r.max_tree_size = result.bag.max_tree_size();
        r.total_size = result.bag.total_size();
        const auto exponent = power(2 * o.K + 11, static_cast<unsigned>(o.c)).convert_to<unsigned>();
        r.bound_value = power(bag.max_tree_size(), exponent);
        r.ratio = Rational(r.max_tree_size, r.bound_value);
        r.error = result.report.cumulative_error;
        r.verified = r.error <= result.report.bound;
        records.push_back(std::move(r));
    }
    return records;
}

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Distribution load_distribution(const std::string& path, int l) {
    if (path.empty()) return Distribution::uniform(l);
    Distribution d = deserialize_distribution(read_file(path));
    if (d.num_vars() != l)
        throw PreconditionError("distribution over l = " + std::to_string(d.num_vars()) + " but the bag has " +
                                std::to_string(l) + " variables");
    return d;
}

void write_bag_file(const std::string& path, const Bag& bag) {
    write_file_atomic(path, [&](std::ostream& os) { write_bag(os, bag); });
}

void print_sizes(std::ostream& out, const Bag& bag) {
    out << "trees=" << bag.tree_count() << " max_tree_size=" << bag.max_tree_size()
        << " total_size=" << bag.total_size() << "\n";
    out << "tree_sizes=";
    for (std::size_t i = 0; i < bag.tree_count(); ++i) out << (i ? "," : "") << bag.trees()[i].size();
    out << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Build, reduce and verify bags of simple decision trees", "forestsmith"};
    app.require_subcommand(1);

    // build-kofn
    int kofn_n = 0, kofn_k = 0;
    bool kofn_naive = false;
    std::string kofn_out;
    auto* build_kofn = app.add_subcommand("build-kofn", "Bag whose majority vote is the k-out-of-n function");
    build_kofn->add_option("--n", kofn_n, "Number of variables and trees (odd)")->required();
    build_kofn->add_option("--k", kofn_k, "Threshold, 1 <= k <= n")->required();
    build_kofn->add_flag("--naive", kofn_naive, "Single threshold tree padded with constants");
    build_kofn->add_option("--out", kofn_out, "Output .bag.json")->required();

    // build-majority
    int maj_n = 0, maj_c = 0;
    std::string maj_out;
    auto* build_majority = app.add_subcommand("build-majority", "Majority on n variables with n-2c trees");
    build_majority->add_option("--n", maj_n, "Number of variables (odd)")->required();
    build_majority->add_option("--c", maj_c, "Trees removed in pairs")->required();
    build_majority->add_option("--out", maj_out, "Output .bag.json")->required();

    // reduce
    std::string red_bag, red_dist, red_out, red_report;
    int red_K = 0, red_c = 1;
    bool red_identity = false;
    auto* reduce = app.add_subcommand("reduce", "Error-bounded reduction of a bag by 2c trees");
    reduce->add_option("--bag", red_bag, "Input .bag.json")->required();
    reduce->add_option("--dist", red_dist, "Input .dist.json (default: uniform)");
    reduce->add_option("--K", red_K, "Designated subset size")->required();
    reduce->add_option("--c", red_c, "Number of reduction steps");
    reduce->add_option("--out", red_out, "Reduced .bag.json");
    reduce->add_option("--report", red_report, "ReductionReport .report.json");
    reduce->add_flag("--identity-perm", red_identity, "Designate positions 3..K+2 without subset selection");

    // verify
    std::string ver_bag, ver_oracle, ver_dist;
    auto* verify = app.add_subcommand("verify", "Exhaustively compare a bag with an oracle");
    verify->add_option("--bag", ver_bag, "Input .bag.json")->required();
    verify->add_option("--oracle", ver_oracle, "maj | kofn:<k> | bag:<file>")->required();
    verify->add_option("--dist", ver_dist, "Report the exact disagreement weight under this distribution");

    // sweep
    std::string sw_mode, sw_csv = "-", sw_mix = "mixed";
    int sw_n_min = 3, sw_n_max = 13, sw_c_max = 64;
    bool sw_naive = false;
    std::optional<std::uint64_t> sw_seed;
    LossySweepOptions lossy;
    auto* sweep = app.add_subcommand("sweep", "Parameter sweep, one verified CSV row per point");
    sweep->add_option("--mode", sw_mode, "kofn | majority | lossy")
        ->required()
        ->check(CLI::IsMember({"kofn", "majority", "lossy"}));
    sweep->add_option("--n-min", sw_n_min, "Smallest n (kofn, majority)");
    sweep->add_option("--n-max", sw_n_max, "Largest n (kofn, majority)");
    sweep->add_option("--c-max", sw_c_max, "Largest c (majority)");
    sweep->add_flag("--naive", sw_naive, "Also emit naive-construction rows (kofn)");
    sweep->add_option("--seed", sw_seed, "First corpus seed (lossy)");
    sweep->add_option("--count", lossy.count, "Number of random bags (lossy)");
    sweep->add_option("--trees", lossy.trees, "Trees per random bag (lossy)");
    sweep->add_option("--l", lossy.l, "Variables per random bag (lossy)");
    sweep->add_option("--depth", lossy.max_depth, "Maximum random tree depth (lossy)");
    sweep->add_option("--K", lossy.K, "Designated subset size (lossy)");
    sweep->add_option("--c", lossy.c, "Reduction steps (lossy)");
    sweep->add_option("--max-weight", lossy.max_weight, "Largest random weight (lossy)");
    sweep->add_option("--dist", sw_mix, "uniform | random | mixed (lossy)")
        ->check(CLI::IsMember({"uniform", "random", "mixed"}));
    sweep->add_option("--csv", sw_csv, "Output CSV path, '-' for stdout");

    // gen-bag / gen-dist
    std::uint64_t gen_seed = 0;
    int gen_trees = 9, gen_l = 8, gen_depth = 4;
    std::string gen_out;
    auto* gen_bag = app.add_subcommand("gen-bag", "Seeded random bag");
    gen_bag->add_option("--seed", gen_seed, "Generator seed")->required();
    gen_bag->add_option("--trees", gen_trees, "Number of trees (odd)");
    gen_bag->add_option("--l", gen_l, "Number of variables");
    gen_bag->add_option("--depth", gen_depth, "Maximum tree depth");
    gen_bag->add_option("--out", gen_out, "Output .bag.json")->required();

    std::uint64_t gd_seed = 0, gd_max_weight = 16;
    int gd_l = 8;
    std::string gd_out;
    bool gd_uniform = false;
    auto* gen_dist = app.add_subcommand("gen-dist", "Seeded random or uniform distribution");
    auto* gd_seed_opt = gen_dist->add_option("--seed", gd_seed, "Generator seed");
    gen_dist->add_option("--l", gd_l, "Number of variables");
    gen_dist->add_option("--max-weight", gd_max_weight, "Largest weight");
    gen_dist->add_flag("--uniform", gd_uniform, "Write the uniform distribution instead");
    gen_dist->add_option("--out", gd_out, "Output .dist.json")->required();

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*build_kofn) {
            const ChooseSpec spec{.n = kofn_n, .k = kofn_k};
            const Bag bag = kofn_naive ? build_choose_bag_naive(spec) : build_choose_bag(spec);
            write_bag_file(kofn_out, bag);
            const int m = (kofn_n + 1) / 2;
            out << "n=" << kofn_n << " k=" << kofn_k << " construction=" << (kofn_naive ? "naive" : "choose")
                << "\n";
            print_sizes(out, bag);
            out << "bound=n^(|m-k|+1)=" << power(kofn_n, std::abs(m - kofn_k) + 1) << "\n";
            return kExitOk;
        }

        if (*build_majority) {
            const Bag bag = build_reduced_majority(maj_n, maj_c);
            write_bag_file(maj_out, bag);
            out << "n=" << maj_n << " c=" << maj_c << "\n";
            print_sizes(out, bag);
            out << "bound=2^(2c)*n^(c+1)=" << power(2, 2 * maj_c) * power(maj_n, maj_c + 1) << "\n";
            return kExitOk;
        }

        if (*reduce) {
            const Bag bag = deserialize_bag(read_file(red_bag));
            const Distribution dist = load_distribution(red_dist, bag.n_vars());
            warn_if_large(bag.n_vars(), err);
            if (static_cast<int>(bag.tree_count()) - 2 * red_c < 3)
                throw PreconditionError("bag of " + std::to_string(bag.tree_count()) +
                                        " trees already has at most the requested count after removing " +
                                        std::to_string(2 * red_c));
            const IteratedResult result =
                reduce_c_times(bag, red_K, red_c, dist, {.identity_permutations = red_identity});
            if (!red_report.empty()) write_file_atomic(red_report, report_to_json(result.report).dump(2) + "\n");
            if (!red_out.empty()) write_bag_file(red_out, result.bag);
            out << "trees " << bag.tree_count() << " -> " << result.bag.tree_count() << "\n";
            out << "error=" << fraction_string(result.report.cumulative_error)
                << " bound=" << fraction_string(result.report.bound) << "\n";
            out << "max_tree_size=" << result.bag.max_tree_size() << "\n";
            return result.report.cumulative_error <= result.report.bound ? kExitOk : kExitVerificationFailed;
        }

        if (*verify) {
            const Bag bag = deserialize_bag(read_file(ver_bag));
            warn_if_large(bag.n_vars(), err);
            InputPredicate oracle;
            std::optional<Bag> other;
            if (ver_oracle == "maj") {
                if (bag.n_vars() % 2 == 0)
                    throw PreconditionError("oracle maj needs an odd variable count, bag has " +
                                            std::to_string(bag.n_vars()));
                oracle = [](const InputVector& x) { return majority_oracle(x); };
            } else if (ver_oracle.rfind("kofn:", 0) == 0) {
                int k = 0;
                try {
                    k = std::stoi(ver_oracle.substr(5));
                } catch (const std::exception&) {
                    throw UsageError("bad oracle '" + ver_oracle + "'");
                }
                oracle = [k](const InputVector& x) { return threshold_oracle(k, x); };
            } else if (ver_oracle.rfind("bag:", 0) == 0) {
                other = deserialize_bag(read_file(ver_oracle.substr(4)));
                if (other->n_vars() != bag.n_vars())
                    throw PreconditionError("oracle bag has " + std::to_string(other->n_vars()) +
                                            " variables, subject has " + std::to_string(bag.n_vars()));
                oracle = [&o = *other](const InputVector& x) { return o.eval(x); };
            } else {
                throw UsageError("oracle must be maj, kofn:<k> or bag:<file>");
            }

            if (!ver_dist.empty()) {
                const Distribution dist = load_distribution(ver_dist, bag.n_vars());
                BigCount weight = 0;
                for (std::uint64_t i = 0; i < (std::uint64_t{1} << bag.n_vars()); ++i)
                    if (bag.eval_index(i) != oracle(InputVector(i, bag.n_vars()))) weight += dist.weight(i);
                const Rational error(weight, BigCount(dist.total()));
                if (error == 0) {
                    out << "ok\n";
                    return kExitOk;
                }
                out << "disagreement weight " << fraction_string(error) << "\n";
                return kExitVerificationFailed;
            }
            if (auto cex = exhaustive_equiv(bag, oracle)) {
                out << "counterexample x=" << cex->input.to_string() << " expected=" << cex->expected
                    << " actual=" << cex->actual << "\n";
                return kExitVerificationFailed;
            }
            out << "ok\n";
            return kExitOk;
        }

        if (*sweep) {
            std::vector<SweepRecord> records;
            if (sw_mode == "kofn") {
                records = sweep_kofn(sw_n_min, sw_n_max, sw_naive);
            } else if (sw_mode == "majority") {
                records = sweep_majority(sw_n_min, sw_n_max, sw_c_max);
            } else {
                if (!sw_seed) throw UsageError("sweep --mode lossy requires --seed");
                lossy.seed = *sw_seed;
                lossy.mix = sw_mix == "uniform"  ? DistributionMix::Uniform
                            : sw_mix == "random" ? DistributionMix::Random
                                                 : DistributionMix::Mixed;
                records = sweep_lossy(lossy);
            }
            std::ostringstream csv;
            csv << kSweepHeader << "\n";
            bool all_verified = true;
            for (const auto& r : records) {
                csv << to_csv_row(r) << "\n";
                all_verified = all_verified && r.verified;
            }
            if (sw_csv == "-")
                out << csv.str();
            else
                write_file_atomic(sw_csv, csv.str());
            return all_verified ? kExitOk : kExitVerificationFailed;
        }

        if (*gen_bag) {
            write_bag_file(gen_out, random_bag(gen_seed, gen_trees, gen_l, gen_depth));
            return kExitOk;
        }

        if (*gen_dist) {
            if (gd_uniform) {
                write_file_atomic(gd_out, serialize_distribution(Distribution::uniform(gd_l)));
                return kExitOk;
            }
            if (gd_seed_opt->count() == 0) throw UsageError("gen-dist requires --seed (or --uniform)");
            write_file_atomic(gd_out, serialize_distribution(random_distribution(gd_seed, gd_l, gd_max_weight)));
            return kExitOk;
        }
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::logic_error& e) {  // precondition and structural errors
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {  // schema, capacity and I/O errors
        err << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}

}  // namespace forestsmith::cli
