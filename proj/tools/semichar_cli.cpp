// Command-line surface for the semicharacter toolkit.
//
// Exit codes: 0 success (conjecture holds where checked), 1 a conjecture
// violation was found, 2 a computation was infeasible at the configured caps
// (with --strict, also when a batch skipped anything), 3 input error.

#include "semichar/corpus.hpp"
#include "semichar/engine.hpp"
#include "semichar/gl2.hpp"
#include "semichar/io.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <chrono>
#include <iostream>
#include <mutex>
#include <thread>

namespace {

using namespace semichar;
using Clock = std::chrono::steady_clock;

constexpr int kExitHolds = 0;
constexpr int kExitViolation = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitInputError = 3;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

ConstructionSummary summarize(const ConstructionReport& rep, std::string mechanism,
                              const std::optional<SemicharGroupDesc>& exact) {
    ConstructionSummary s;
    s.prime = rep.prime;
    s.mechanism = std::move(mechanism);
    s.claimed = rep.claimed_lower_bound;
    s.target = rep.target_valuation;
    s.rank = rep.independence_rank;
    s.verified = rep.all_verified;
    s.notes = rep.notes;
    if (exact) s.exact_val = exact->val(rep.prime);
    return s;
}

// Family-specific construction sections for the compute report.
std::vector<ConstructionSummary> constructions_for(const std::string& family,
                                                   const std::optional<SemicharGroupDesc>& exact,
                                                   const EngineOptions& opt) {
    std::vector<ConstructionSummary> out;
    std::int64_t v = 0;
    if (family.rfind("heis", 0) == 0 && detail::parse_int_suffix(family, 4, v) && v % 2 == 1) {
        out.push_back(summarize(heisenberg_semichars(v).report, "heisenberg coordinates", exact));
        return out;
    }
    if (family.size() >= 4 && family[0] == 'u' && family[2] == 'q' &&
        detail::parse_int_suffix(family, 3, v)) {
        const int dim = family[1] - '0';
        const auto [p, e] = detail::prime_power_split(v);
        if (dim <= p)
            out.push_back(summarize(unitriangular_log_semichars(dim, v), "truncated log", exact));
        return out;
    }
    if (family.rfind("gl2q", 0) == 0 && detail::parse_int_suffix(family, 4, v)) {
        Gl2Suite suite = gl2_suite(v, opt);
        for (auto& [l, rep] : suite.by_prime) {
            std::string mech = l == suite.p                  ? "truncated log on the p-part"
                               : (l == 2 && v % 4 == 1)      ? "eigenline pairs of squares"
                               : (l == 2 && v % 4 == 3)      ? "maximal cyclic 2-subgroups"
                               : ((v - 1) % l == 0 ? "split-torus eigenline pairs"
                                                   : "cyclic Sylow gluing");
            out.push_back(summarize(rep, mech, exact));
        }
        return out;
    }
    if (family.size() >= 2 && (family[0] == 's' || family[0] == 'a') &&
        detail::parse_int_suffix(family, 1, v)) {
        const bool alternating = family[0] == 'a';
        for (std::int64_t l = 2; l <= v; ++l) {
            if (!is_prime(l)) continue;
            if (alternating && l == 2) {
                if (v == 4 || v == 5) {
                    out.push_back(summarize(alternating_two_semichars(static_cast<int>(v)).report,
                                            "Klein-part dual functions", exact));
                }
                continue;
            }
            auto c = symmetric_cycle_semichars(static_cast<int>(v), l);
            ConstructionSummary s = summarize(
                c.report, "cycle classes of length " + std::to_string(c.cycle_length), exact);
            if (alternating) {
                // For odd l the l-parts of S_n and A_n coincide, so the bound
                // transfers; the target differs only at l = 2.
                s.mechanism += " (via the symmetric group)";
            }
            out.push_back(std::move(s));
        }
        return out;
    }
    return out;
}

int run_compute(const std::string& family, const std::string& file, bool as_json,
                const EngineOptions& opt, const GroupFileOptions& fopts) {
    const auto t0 = Clock::now();
    RealizedGroup g;
    std::string warning;
    if (!family.empty()) {
        const std::int64_t order = family_order(family);
        if (order > opt.snf_cap) {
            std::cerr << "compute: " << family << " has order " << order
                      << ", over the Smith form cap " << opt.snf_cap
                      << "; use `torsion` or `localize` for this group, or raise --snf-cap\n";
            return kExitInfeasible;
        }
        g = build_family(family, std::max(opt.snf_cap, kDefaultOrderCap));
    } else {
        g = parse_group_file(file, fopts, &warning);
        if (!warning.empty()) std::cerr << "warning: " << warning << "\n";
    }

    RunReport report;
    report.descriptor = g.family;
    report.group_order = g.order();
    ConjectureVerdict verdict = conjecture_check(g.table, opt);
    report.dual = verdict.dual;
    report.holds = verdict.holds;
    report.valuations = verdict.valuations;
    if (!family.empty()) {
        std::optional<SemicharGroupDesc> exact = verdict.dual;
        report.constructions = constructions_for(family, exact, opt);
    }
    report.elapsed_ms = ms_since(t0);
    if (as_json)
        std::cout << render_json(report).dump(2) << "\n";
    else
        std::cout << render_text(report);
    return report.holds ? kExitHolds : kExitViolation;
}

struct BatchRow {
    std::string name;
    std::string status; // OK / FAIL / SKIP
    std::int64_t order = 0;
    std::string dual;
    std::string detail;
};

int run_batch(std::int64_t max_order, int threads, bool strict, bool as_json,
              const EngineOptions& opt) {
    std::vector<std::string> names;
    for (const auto& name : builtin_corpus_names())
        if (family_order(name) <= max_order) names.push_back(name);
    std::vector<BatchRow> rows(names.size());

    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        while (true) {
            const std::size_t i = next.fetch_add(1);
            if (i >= names.size()) break;
            BatchRow& row = rows[i];
            row.name = names[i];
            try {
                const RealizedGroup g = build_family(names[i]);
                row.order = g.order();
                const ConjectureVerdict verdict = conjecture_check(g.table, opt);
                row.dual = verdict.dual.order.str();
                row.status = verdict.holds ? "OK" : "FAIL";
                if (!verdict.holds) {
                    for (const auto& val : verdict.valuations)
                        if (val.val_dual < val.val_group)
                            row.detail += "l=" + std::to_string(val.prime) + " val " +
                                          std::to_string(val.val_dual) + " < " +
                                          std::to_string(val.val_group) + "; ";
                }
            } catch (const CapExceeded& e) {
                row.status = "SKIP";
                row.detail = e.what();
            }
        }
    };
    std::vector<std::thread> pool;
    const int nthreads = std::max(1, threads);
    for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    bool any_fail = false, any_skip = false;
    json jrows = json::array();
    for (const auto& row : rows) {
        if (row.status == "FAIL") any_fail = true;
        if (row.status == "SKIP") any_skip = true;
        if (as_json) {
            json jr = {{"group", row.name},
                       {"status", row.status},
                       {"order", row.order},
                       {"dual_order_factored", row.dual}};
            if (!row.detail.empty()) jr["detail"] = row.detail;
            jrows.push_back(jr);
        } else {
            std::cout << row.status << " " << row.name << " |G|=" << row.order;
            if (!row.dual.empty()) std::cout << " |Ghat|=" << row.dual;
            if (!row.detail.empty()) std::cout << " (" << row.detail << ")";
            std::cout << "\n";
        }
    }
    if (as_json) {
        json out = {{"groups", jrows},
                    {"total", rows.size()},
                    {"failed", any_fail},
                    {"skipped", any_skip}};
        std::cout << out.dump(2) << "\n";
    } else {
        std::cout << "batch: " << rows.size() << " groups, "
                  << (any_fail ? "violations found" : "all conjecture checks hold")
                  << (any_skip ? ", some skipped" : "") << "\n";
    }
    if (any_fail) return kExitViolation;
    if (any_skip && strict) return kExitInfeasible;
    return kExitHolds;
}

void print_construction(const ConstructionReport& rep, const std::string& title, bool as_json) {
    if (as_json) {
        json j = {{"construction", title},
                  {"prime", rep.prime},
                  {"produced", rep.produced.size()},
                  {"independence_rank", rep.independence_rank},
                  {"claimed_lower_bound", rep.claimed_lower_bound},
                  {"target_valuation", rep.target_valuation},
                  {"formula_value", rep.formula_value},
                  {"domain_size", rep.domain_size},
                  {"extended_to_group", rep.extended_to_group},
                  {"all_verified", rep.all_verified}};
        if (!rep.notes.empty()) j["notes"] = rep.notes;
        std::cout << j.dump(2) << "\n";
        return;
    }
    std::cout << title << "\n"
              << "  prime l = " << rep.prime << ", domain size " << rep.domain_size
              << (rep.extended_to_group ? " (functions on the whole group)"
                                        : " (functions on the l-part)")
              << "\n"
              << "  produced " << rep.produced.size() << " functions, F_l rank "
              << rep.independence_rank << "\n"
              << "  certified val_" << rep.prime << "(|Ghat|) >= " << rep.claimed_lower_bound
              << " (needed " << rep.target_valuation << ")\n";
    if (rep.formula_value >= 0) std::cout << "  counting formula value: " << rep.formula_value << "\n";
    std::cout << "  all functions verified: " << (rep.all_verified ? "yes" : "NO") << "\n";
    for (const auto& n : rep.notes) std::cout << "  note: " << n << "\n";
}

int run_construct(const std::string& family, std::int64_t prime, bool as_json,
                  const EngineOptions& opt) {
    std::int64_t v = 0;
    if (family.size() >= 2 && family[0] == 's' && detail::parse_int_suffix(family, 1, v)) {
        auto c = symmetric_cycle_semichars(static_cast<int>(v), prime);
        print_construction(c.report, "cycle-class construction on " + family, as_json);
        return kExitHolds;
    }
    if (family.size() >= 2 && family[0] == 'a' && detail::parse_int_suffix(family, 1, v)) {
        if (prime == 2) {
            auto c = alternating_two_semichars(static_cast<int>(v));
            print_construction(c.report, "even-part construction on " + family, as_json);
        } else {
            auto c = symmetric_cycle_semichars(static_cast<int>(v), prime);
            print_construction(c.report,
                               "cycle-class construction (odd l, shared with s" +
                                   std::to_string(v) + ")",
                               as_json);
        }
        return kExitHolds;
    }
    if (family.rfind("heis", 0) == 0 && detail::parse_int_suffix(family, 4, v)) {
        auto h = heisenberg_semichars(v);
        if (prime != h.report.prime)
            throw InputError("heisenberg construction lives at l = characteristic");
        print_construction(h.report, "coordinate construction on " + family, as_json);
        if (!as_json && h.twisted_hom_violation)
            std::cout << "  twisted coordinate fails plain multiplicativity at pair ("
                      << h.twisted_hom_violation->first << ", " << h.twisted_hom_violation->second
                      << ")\n";
        return kExitHolds;
    }
    if (family.size() >= 4 && family[0] == 'u' && family[2] == 'q' &&
        detail::parse_int_suffix(family, 3, v)) {
        auto rep = unitriangular_log_semichars(family[1] - '0', v);
        if (prime != rep.prime) throw InputError("unitriangular construction lives at l = characteristic");
        print_construction(rep, "truncated-log construction on " + family, as_json);
        return kExitHolds;
    }
    if (family.rfind("gl2q", 0) == 0 && detail::parse_int_suffix(family, 4, v)) {
        Gl2Suite suite = gl2_suite(v, opt);
        auto it = suite.by_prime.find(prime);
        if (it == suite.by_prime.end())
            throw InputError("l = " + std::to_string(prime) + " does not divide |GL(2," +
                             std::to_string(v) + ")|");
        print_construction(it->second, "GL(2," + std::to_string(v) + ") suite at l", as_json);
        return kExitHolds;
    }
    // Generic fallback: cyclic Sylow gluing on any feasible family.
    const RealizedGroup g = build_family(family);
    auto rep = cyclic_sylow_semichars(g.table, prime);
    print_construction(rep, "cyclic-Sylow gluing on " + family, as_json);
    return kExitHolds;
}

int run_torsion(const std::string& family, std::int64_t prime, bool as_json,
                const EngineOptions& opt) {
    const std::int64_t order = family_order(family);
    if (order > opt.torsion_cap) {
        std::cerr << "torsion: order " << order << " exceeds the torsion cap " << opt.torsion_cap
                  << "\n";
        return kExitInfeasible;
    }
    const RealizedGroup g = build_family(family, std::max<int>(opt.torsion_cap, kDefaultOrderCap));
    const std::int64_t rank = l_torsion_rank(g.table, prime, opt);
    if (as_json)
        std::cout << json({{"group", family}, {"prime", prime}, {"torsion_rank", rank}}).dump(2)
                  << "\n";
    else
        std::cout << "dim_F" << prime << " Ghat[" << prime << "] = " << rank << "\n";
    return kExitHolds;
}

int run_localize(const std::string& family, std::int64_t prime, bool as_json,
                 const EngineOptions& opt) {
    const RealizedGroup g = build_family(family);
    const SemicharGroupDesc local = localized_semichar_group(g.table, prime, opt);
    json j = {{"group", family}, {"prime", prime}, {"local_order_factored", local.order.str()}};
    std::string primary;
    if (g.order() <= opt.snf_cap) {
        const PrimaryDecomposition pd = primary_decomposition_check(g.table, opt);
        j["primary_decomposition_consistent"] = pd.consistent;
        j["global_order_factored"] = pd.global.str();
        primary = pd.consistent ? "primary decomposition consistent with the global order"
                                : "PRIMARY DECOMPOSITION MISMATCH";
    }
    if (as_json) {
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "|dual of " << family << "[" << prime << "^inf]| = " << local.order.str()
                  << "\n";
        if (!primary.empty()) std::cout << primary << "\n";
    }
    return kExitHolds;
}

int run_facts(std::int64_t q, bool as_json, const EngineOptions&) {
    const Gl2SylowFacts facts = gl2_sylow_facts(q);
    json j = {{"q", q},
              {"group_order_factored", facts.group_order.str()},
              {"monomial_two_part", facts.monomial_two_part},
              {"two_part_of_group", facts.two_part_of_group},
              {"monomial_matches_sylow", facts.monomial_matches_sylow},
              {"constructed_sylow_order", facts.constructed_sylow_order}};
    json checks = json::array();
    for (const auto& c : facts.odd_l_checks)
        checks.push_back({{"l", c.l}, {"valuation", c.actual}, {"diagonal_torus", c.diagonal_torus}});
    j["odd_l_checks"] = checks;
    json counts = json::array();
    for (std::int64_t k = 3; k <= q + 1; ++k) {
        if ((q + 1) % k != 0) continue;
        const Gl2CyclicCount c = gl2_cyclic_subgroup_count(q, k);
        counts.push_back({{"k", k},
                          {"subgroups", c.subgroup_count},
                          {"elements_of_order_k", c.element_count}});
    }
    j["cyclic_subgroup_counts"] = counts;
    if (as_json) {
        std::cout << j.dump(2) << "\n";
        return kExitHolds;
    }
    std::cout << "GL(2," << q << "): |G| = " << facts.group_order.str() << "\n";
    for (const auto& c : facts.odd_l_checks)
        std::cout << "  l=" << c.l << ": val_l|G| = " << c.actual
                  << " = 2 val_l(q-1); diagonal l-torus has order " << c.diagonal_torus << "\n";
    if (facts.p != 2) {
        std::cout << "  monomial matrices with 2-part entries: " << facts.monomial_two_part
                  << "; 2-part of |G|: " << facts.two_part_of_group
                  << (facts.monomial_matches_sylow ? " (monomial Sylow)" : " (monomial count falls short)")
                  << "\n";
        if (facts.constructed_sylow_order)
            std::cout << "  2-Sylow of order " << facts.constructed_sylow_order
                      << " constructed from the quadratic extension with Frobenius\n";
    }
    for (const auto& c : j["cyclic_subgroup_counts"])
        std::cout << "  cyclic subgroups of order " << c["k"] << ": " << c["subgroups"]
                  << " (q(q-1)/2), with " << c["elements_of_order_k"] << " elements\n";
    for (const auto& n : facts.notes) std::cout << "  note: " << n << "\n";
    return kExitHolds;
}

int run_export(const std::string& family, const std::string& file, const std::string& out_path,
               const std::string& format, const GroupFileOptions& fopts) {
    GroupFileKind kind = GroupFileKind::automatic;
    if (format == "table") kind = GroupFileKind::table;
    if (format == "generators") kind = GroupFileKind::generators;
    if (!family.empty() && kind == GroupFileKind::table &&
        family_order(family) > fopts.table_export_cap)
        throw CapExceeded("export: table of order " + std::to_string(family_order(family)) +
                          " exceeds the table export cap " +
                          std::to_string(fopts.table_export_cap) +
                          "; export the generator form instead");
    RealizedGroup g;
    std::string warning;
    if (!family.empty()) {
        g = build_family(family, 1 << 14);
    } else {
        g = parse_group_file(file, fopts, &warning);
        if (!warning.empty()) std::cerr << "warning: " << warning << "\n";
    }
    export_group_file(g, out_path, kind, fopts);
    std::cout << "wrote " << out_path << "\n";
    return kExitHolds;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"semichar: exact semicharacter groups of finite groups"};
    app.require_subcommand(1);
    app.fallthrough(); // global flags may appear after the subcommand

    EngineOptions opt;
    GroupFileOptions fopts;
    bool as_json = false;
    app.add_flag("--json", as_json, "machine-readable JSON output");
    app.add_option("--snf-cap", opt.snf_cap, "largest group order for full Smith forms");
    app.add_option("--torsion-cap", opt.torsion_cap, "largest group order for mod-l torsion ranks");

    std::string family, file, out_path, format = "auto";
    std::int64_t prime = 2, max_order = 1 << 30, gl2q = 0;
    int threads = 1;
    bool strict = false;

    auto* compute = app.add_subcommand("compute", "semicharacter group and conjecture verdict");
    compute->add_option("--family", family, "family name, e.g. s4, q8, gl2q3, c2xc4");
    compute->add_option("--file", file, "group file (JSON)");

    auto* batch = app.add_subcommand("batch", "run the builtin corpus");
    std::string corpus = "builtin";
    batch->add_option("--corpus", corpus, "corpus name (builtin)");
    batch->add_option("--max-order", max_order, "skip groups larger than this");
    batch->add_option("--threads", threads, "worker threads");
    batch->add_flag("--strict", strict, "exit 2 if anything was skipped");

    auto* construct = app.add_subcommand("construct", "explicit construction report");
    construct->add_option("--family", family)->required();
    construct->add_option("--prime", prime, "prime l")->required();

    auto* torsion = app.add_subcommand("torsion", "dim of the l-torsion of the dual");
    torsion->add_option("--family", family)->required();
    torsion->add_option("--prime", prime, "prime l")->required();

    auto* localize = app.add_subcommand("localize", "dual of the l-part");
    localize->add_option("--family", family)->required();
    localize->add_option("--prime", prime, "prime l")->required();

    auto* facts = app.add_subcommand("facts", "GL(2,q) Sylow facts and subgroup counts");
    facts->add_option("--gl2", gl2q, "field size q")->required();

    auto* exportc = app.add_subcommand("export", "write a group file");
    exportc->add_option("--family", family);
    exportc->add_option("--file", file, "re-export an existing group file");
    exportc->add_option("--out", out_path)->required();
    exportc->add_option("--format", format, "auto | table | generators");

    CLI11_PARSE(app, argc, argv);
    fopts.table_export_cap = kDefaultOrderCap;

    try {
        if (compute->parsed()) {
            if (family.empty() == file.empty())
                throw InputError("compute: need exactly one of --family or --file");
            return run_compute(family, file, as_json, opt, fopts);
        }
        if (batch->parsed()) {
            if (corpus != "builtin") throw InputError("unknown corpus '" + corpus + "'");
            return run_batch(max_order, threads, strict, as_json, opt);
        }
        if (construct->parsed()) return run_construct(family, prime, as_json, opt);
        if (torsion->parsed()) return run_torsion(family, prime, as_json, opt);
        if (localize->parsed()) return run_localize(family, prime, as_json, opt);
        if (facts->parsed()) return run_facts(gl2q, as_json, opt);
        if (exportc->parsed()) {
            if (family.empty() == file.empty())
                throw InputError("export: need exactly one of --family or --file");
            return run_export(family, file, out_path, format, fopts);
        }
    } catch (const CapExceeded& e) {
        std::cerr << "infeasible: " << e.what() << "\n";
        return kExitInfeasible;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitInputError;
}
