#pragma once

#include <chrono>
#include <filesystem>
#include <iomanip>
#include <optional>
#include <ostream>
#include <string>

#include "json.hpp"

#include "cremona/classify.hpp"
#include "cremona/clutter.hpp"
#include "cremona/dot.hpp"
#include "cremona/enumerate.hpp"
#include "cremona/logmatrix.hpp"
#include "cremona/parse.hpp"
#include "cremona/record.hpp"
#include "cremona/symmetry.hpp"

namespace cremona {

enum ExitCode : int { kExitOk = 0, kExitMismatch = 1, kExitUsage = 2, kExitBudget = 3 };

struct CensusArgs {
    int n = 0;
    int d = 0;
    unsigned jobs = 1;
    Prunes prunes;
    std::optional<std::string> record_path;
    std::optional<std::string> resume_dir;
    std::string format = "text";
    Budget budget;
};

inline const char* kDefaultCheckpointDir = "cremona-checkpoints";

// Comma-separated prune names: cohesive, ds, gcdpair.
inline Prunes parse_prunes(const std::string& list) {
    Prunes p;
    std::size_t start = 0;
    while (start <= list.size()) {
        const std::size_t comma = std::min(list.find(',', start), list.size());
        const std::string name = list.substr(start, comma - start);
        if (name == "cohesive") p.cohesive = true;
        else if (name == "ds") p.doubly_stochastic = true;
        else if (name == "gcdpair") p.gcd_pair = true;
        else if (!name.empty()) throw ParseError("unknown prune '" + name + "'", start);
        start = comma + 1;
    }
    return p;
}

namespace detail {

inline bool census_range_ok(int n, int d, std::ostream& err) {
    if (n < 2 || n > kMaxSymmetricVariables || d < 1 || d > n - 1) {
        err << "error: need 2 <= n <= " << kMaxSymmetricVariables << " and 1 <= d <= n-1 (got n=" << n << ", d=" << d
            << ")\n";
        return false;
    }
    return true;
}

inline nlohmann::json masks_json(const std::vector<Mask>& masks) {
    nlohmann::json a = nlohmann::json::array();
    for (Mask m : masks) a.push_back(to_hex(m));
    return a;
}

// Runs census() with checkpointing wired to the args; returns nullopt after
// reporting a budget stop.
inline std::optional<CensusResult> run_census(const CensusArgs& args, std::ostream& err, int& status) {
    CensusOptions opts;
    opts.prunes = args.prunes;
    opts.jobs = args.jobs;
    opts.budget = args.budget;
    if (args.resume_dir) {
        opts.resume = load_latest_checkpoint(*args.resume_dir, args.n, args.d);
        if (opts.resume) err << "resuming from level " << opts.resume->level << '\n';
        const std::string dir = *args.resume_dir;
        opts.on_level_complete = [dir](const LevelTable& t) { write_checkpoint(dir, t); };
    }
    try {
        status = kExitOk;
        return census(args.n, args.d, opts);
    } catch (const BudgetExceeded& e) {
        const std::string dir = args.resume_dir.value_or(kDefaultCheckpointDir);
        const auto path = write_checkpoint(dir, e.last_completed());
        err << "budget exceeded: " << e.what() << "\ncheckpoint: " << path.string() << '\n';
        status = kExitBudget;
        return std::nullopt;
    }
}

} // namespace detail

inline int cmd_count(const CensusArgs& args, std::ostream& out, std::ostream& err) {
    if (!detail::census_range_ok(args.n, args.d, err)) return kExitUsage;
    const auto start = std::chrono::steady_clock::now();
    int status = kExitOk;
    const auto result = detail::run_census(args, err, status);
    if (!result) return status;
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (args.format == "json") {
        out << nlohmann::json{{"n", args.n}, {"d", args.d}, {"count", result->count()}}.dump() << '\n';
    } else {
        out << result->count() << '\n';
    }
    err << "wall time: " << std::fixed << std::setprecision(3) << seconds << " s\n";
    if (args.record_path) write_text_file(*args.record_path, serialize_record(make_record(*result)));
    return kExitOk;
}

inline int cmd_list(const CensusArgs& args, std::ostream& out, std::ostream& err) {
    if (!detail::census_range_ok(args.n, args.d, err)) return kExitUsage;
    int status = kExitOk;
    const auto result = detail::run_census(args, err, status);
    if (!result) return status;
    const std::string text = serialize_record(make_record(*result));
    if (args.record_path) write_text_file(*args.record_path, text);
    else out << text;
    return kExitOk;
}

// Verdict report for one monomial set.
inline nlohmann::json check_report(const MonomialSet& f) {
    nlohmann::json r;
    r["set"] = format_set(f);
    r["n"] = f.n();
    r["d"] = f.degree();
    r["square_free"] = f.is_square_free();
    r["canonical_restrictions"] = canonical_restrictions(f);
    r["cohesive"] = is_cohesive(f);
    const std::int64_t det = determinant(log_matrix(f));
    r["determinant"] = det;
    r["cremona"] = det == f.degree() || det == -f.degree();
    r["incidence"] = incidence_sequence(f);

    r["structure"] = nullptr;
    if (f.degree() == 2 && is_cohesive(f) && canonical_restrictions(f)) {
        const auto v = classify_degree_two(DegreeTwoGraph::from_monomials(f));
        r["structure"] = {{"kind", to_string(v.kind)}, {"witness", v.witness}};
    }

    nlohmann::json leaves = nlohmann::json::array();
    nlohmann::json roots = nlohmann::json::array();
    nlohmann::json chain = nlohmann::json::array();
    if (f.is_square_free()) {
        const Clutter s = from_monomials(f);
        for (auto [v, e] : find_leaves(s)) leaves.push_back({{"vertex", v}, {"edge", format_monomial(Monomial::from_mask(f.n(), e))}});
        for (int v : find_roots(s)) roots.push_back(v);

        MonomialSet cur = f;
        for (;;) {
            if (cur.degree() == 1) {
                chain.push_back({{"step", "base"}, {"reason", "degree 1"}, {"cremona", is_cremona(cur)}});
                break;
            }
            if (!canonical_restrictions(cur)) {
                chain.push_back({{"step", "stop"}, {"reason", "canonical restrictions fail"}, {"cremona", false}});
                break;
            }
            const Clutter cs = from_monomials(cur);
            const auto lv = find_leaves(cs);
            const auto rt = find_roots(cs);
            if (!lv.empty() && cur.n() > 2) {
                const int v = lv.front().first;
                cur = delete_leaf(cur, v);
                chain.push_back({{"step", "delete-leaf"}, {"vertex", v}, {"result", format_set(cur)}});
                continue;
            }
            if (!rt.empty() && cur.n() > 2) {
                const int v = rt.front();
                cur = pluck_root(cur, v);
                chain.push_back({{"step", "pluck-root"}, {"vertex", v}, {"result", format_set(cur)}});
                continue;
            }
            chain.push_back({{"step", "base"}, {"reason", "no leaf or root"}, {"cremona", is_cremona(cur)}});
            break;
        }
    }
    r["leaves"] = leaves;
    r["roots"] = roots;
    r["reduction"] = chain;
    return r;
}

inline void render_check_text(const nlohmann::json& r, std::ostream& out) {
    auto yes = [](bool b) { return b ? "yes" : "no"; };
    out << "set: " << r["set"].get<std::string>() << '\n';
    out << "n = " << r["n"] << ", d = " << r["d"] << '\n';
    out << "canonical restrictions: " << yes(r["canonical_restrictions"].get<bool>()) << '\n';
    out << "cohesive: " << yes(r["cohesive"].get<bool>()) << '\n';
    out << "determinant: " << r["determinant"] << '\n';
    out << "cremona: " << yes(r["cremona"].get<bool>()) << '\n';
    out << "incidence sequence: " << format_sequence(r["incidence"].get<std::vector<int>>()) << '\n';
    if (!r["structure"].is_null()) out << "degree-two structure: " << r["structure"]["kind"].get<std::string>() << '\n';
    if (r["square_free"].get<bool>()) {
        out << "leaves:";
        if (r["leaves"].empty()) out << " none";
        for (const auto& l : r["leaves"]) out << " x" << l["vertex"] << " (in " << l["edge"].get<std::string>() << ")";
        out << "\nroots:";
        if (r["roots"].empty()) out << " none";
        for (const auto& v : r["roots"]) out << " x" << v;
        out << "\nreduction:\n";
        for (const auto& s : r["reduction"]) {
            const auto step = s["step"].get<std::string>();
            if (step == "delete-leaf" || step == "pluck-root")
                out << "  " << step << " x" << s["vertex"] << " -> " << s["result"].get<std::string>() << '\n';
            else
                out << "  " << step << ": " << s["reason"].get<std::string>() << ", cremona: " << yes(s["cremona"].get<bool>())
                    << '\n';
        }
    }
}

template <class Fn>
int guarded(std::ostream& err, Fn&& fn) {
    try {
        return fn();
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const ContractViolation& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const PreconditionError& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}

inline int cmd_check(const std::string& text, const std::string& format, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const MonomialSet f = parse_monomials(text, true);
        const auto report = check_report(f);
        if (format == "json") out << report.dump() << '\n';
        else render_check_text(report, out);
        return int{kExitOk};
    });
}

inline int cmd_canon(const std::string& text, const std::string& format, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const MonomialSet f = parse_monomials(text);
        const MonomialSet c = canonical_form(f);
        if (format == "json") out << nlohmann::json{{"canonical", format_set(c)}, {"edges", detail::masks_json(c.masks())}}.dump() << '\n';
        else out << format_set(c) << '\n';
        return int{kExitOk};
    });
}

inline int cmd_dual_set(const std::string& text, const std::string& format, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const MonomialSet f = dual_complement(parse_monomials(text));
        if (format == "json") out << nlohmann::json{{"dual", format_set(f)}, {"edges", detail::masks_json(f.masks())}}.dump() << '\n';
        else out << format_set(f) << '\n';
        return int{kExitOk};
    });
}

// Maps a whole census record through the dual complement. n and d, when
// nonzero, must match the record.
inline int cmd_dual_record(int n, int d, const std::string& record_path, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        const CensusRecord rec = parse_record(read_text_file(record_path));
        if ((n != 0 && n != rec.n) || (d != 0 && d != rec.d)) {
            err << "error: record is for n=" << rec.n << ", d=" << rec.d << '\n';
            return int{kExitUsage};
        }
        out << serialize_record(make_record(dual_census(census_from_record(rec))));
        return int{kExitOk};
    });
}

inline int cmd_oracle(int n, int d, unsigned jobs, const std::optional<std::string>& record_path, std::ostream& out,
                      std::ostream& err) {
    if (!detail::census_range_ok(n, d, err)) return kExitUsage;
    return guarded(err, [&] {
        CensusResult oracle;
        try {
            oracle = oracle_census(n, d, OracleOptions{jobs});
        } catch (const Refusal& e) {
            err << "refused: " << e.what() << '\n';
            return int{kExitBudget};
        }
        CensusResult reference;
        if (record_path) {
            const CensusRecord rec = parse_record(read_text_file(*record_path));
            if (rec.n != n || rec.d != d) {
                err << "error: record is for n=" << rec.n << ", d=" << rec.d << '\n';
                return int{kExitUsage};
            }
            reference = census_from_record(rec);
        } else {
            CensusOptions opts;
            opts.jobs = jobs;
            reference = census(n, d, opts);
        }
        const std::size_t common = std::min(oracle.count(), reference.count());
        for (std::size_t i = 0; i <= common; ++i) {
            const bool end_o = i == oracle.count();
            const bool end_r = i == reference.count();
            if (end_o && end_r) break;
            if (end_o || end_r || oracle.classes[i].canonical != reference.classes[i].canonical) {
                const auto& which = end_o ? reference.classes[i] : oracle.classes[i];
                out << "mismatch at class " << i << ": " << (end_o ? "reference" : "oracle") << " has "
                    << format_set(which.monomials()) << '\n';
                return int{kExitMismatch};
            }
        }
        out << "match: " << oracle.count() << " classes\n";
        return int{kExitOk};
    });
}

inline int cmd_export_dot(const std::string& text, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        out << to_dot(parse_monomials(text, true));
        return int{kExitOk};
    });
}

} // namespace cremona
