#include <chrono>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "cremona/commands.hpp"

namespace {

struct Flags {
    cremona::CensusArgs census;
    std::string prune;
    std::string record;
    std::string resume;
    std::string text;
    std::size_t max_level_classes = 0;
    double max_seconds = 0;
};

void add_census_flags(CLI::App* cmd, Flags& f, bool with_budget) {
    cmd->add_option("-n", f.census.n, "number of variables")->required();
    cmd->add_option("-d", f.census.d, "degree")->required();
    cmd->add_option("--jobs", f.census.jobs, "worker threads (0 = all cores)");
    cmd->add_option("--prune", f.prune, "comma-separated prunes: cohesive,ds,gcdpair");
    cmd->add_option("--record", f.record, "census record output path");
    cmd->add_option("--resume", f.resume, "checkpoint directory");
    cmd->add_option("--format", f.census.format, "output format")->check(CLI::IsMember({"text", "json"}));
    if (with_budget) {
        cmd->add_option("--max-level-classes", f.max_level_classes, "stop after a level larger than this");
        cmd->add_option("--max-seconds", f.max_seconds, "stop after this much wall time");
    }
}

cremona::CensusArgs finish_census(Flags& f) {
    cremona::CensusArgs a = f.census;
    a.prunes = cremona::parse_prunes(f.prune);
    if (!f.record.empty()) a.record_path = f.record;
    if (!f.resume.empty()) a.resume_dir = f.resume;
    if (f.max_level_classes > 0) a.budget.max_level_classes = f.max_level_classes;
    if (f.max_seconds > 0)
        a.budget.max_wall_time =
            std::chrono::duration_cast<std::chrono::steady_clock::duration>(std::chrono::duration<double>(f.max_seconds));
    return a;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Census of square-free monomial Cremona transformations"};
    app.require_subcommand(1);
    Flags f;

    auto* count = app.add_subcommand("count", "count Cremona classes of degree d in n variables");
    add_census_flags(count, f, true);
    auto* list = app.add_subcommand("list", "emit the census record");
    add_census_flags(list, f, true);

    auto* check = app.add_subcommand("check", "report on one monomial set");
    check->add_option("monomials", f.text, "e.g. x1*x2,x2*x3,x1*x3")->required();
    check->add_option("--format", f.census.format)->check(CLI::IsMember({"text", "json"}));

    auto* dual = app.add_subcommand("dual", "dual complement of a set or of a census record");
    dual->add_option("monomials", f.text);
    dual->add_option("-n", f.census.n);
    dual->add_option("-d", f.census.d);
    dual->add_option("--record", f.record, "census record to dualize");
    dual->add_option("--format", f.census.format)->check(CLI::IsMember({"text", "json"}));

    auto* canon = app.add_subcommand("canon", "canonical form of a set");
    canon->add_option("monomials", f.text)->required();
    canon->add_option("--format", f.census.format)->check(CLI::IsMember({"text", "json"}));

    auto* oracle = app.add_subcommand("oracle", "brute-force census diffed against a record or the level pipeline");
    oracle->add_option("-n", f.census.n)->required();
    oracle->add_option("-d", f.census.d)->required();
    oracle->add_option("--jobs", f.census.jobs);
    oracle->add_option("--record", f.record, "census record to compare against");

    auto* dot = app.add_subcommand("export-dot", "bipartite incidence graph in DOT");
    dot->add_option("monomials", f.text)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return cremona::kExitUsage;
    }

    try {
        if (count->parsed()) return cremona::cmd_count(finish_census(f), std::cout, std::cerr);
        if (list->parsed()) return cremona::cmd_list(finish_census(f), std::cout, std::cerr);
        if (check->parsed()) return cremona::cmd_check(f.text, f.census.format, std::cout, std::cerr);
        if (canon->parsed()) return cremona::cmd_canon(f.text, f.census.format, std::cout, std::cerr);
        if (dot->parsed()) return cremona::cmd_export_dot(f.text, std::cout, std::cerr);
        if (oracle->parsed()) {
            std::optional<std::string> rec;
            if (!f.record.empty()) rec = f.record;
            return cremona::cmd_oracle(f.census.n, f.census.d, f.census.jobs, rec, std::cout, std::cerr);
        }
        if (dual->parsed()) {
            if (!f.record.empty()) return cremona::cmd_dual_record(f.census.n, f.census.d, f.record, std::cout, std::cerr);
            if (f.text.empty()) {
                std::cerr << "error: dual needs a monomial list or --record\n";
                return cremona::kExitUsage;
            }
            return cremona::cmd_dual_set(f.text, f.census.format, std::cout, std::cerr);
        }
    } catch (const cremona::ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return cremona::kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return cremona::kExitUsage;
    }
    return cremona::kExitUsage;
}
