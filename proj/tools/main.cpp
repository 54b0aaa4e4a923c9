#include <exception>
#include <iostream>

#include "CLI11.hpp"

#include "campanato/error.hpp"
#include "commands.hpp"

namespace cli = campanato::cli;

namespace {

void addCommon(CLI::App* cmd, cli::CommonFlags& f, bool needsConfig) {
    if (needsConfig) cmd->add_option("-c,--config", f.config, "Experiment config (JSON)")->required()->check(CLI::ExistingFile);
    cmd->add_option("--seed", f.seed, "Root seed (default 42, or sampler.seed from the config)");
    cmd->add_option("--out", f.out, "Output directory");
    cmd->add_option("--refine", f.refine, "Extra refinement rounds")->check(CLI::NonNegativeNumber);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Campanato and Morrey seminorm estimation on Hölder domains"};
    app.require_subcommand(1);
    cli::CommonFlags flags;
    std::string caseId;
    std::string mergeDir;
    std::function<int()> action;

    auto* seminorm = app.add_subcommand("seminorm", "Seminorm estimation")->require_subcommand(1);
    auto* estimate = seminorm->add_subcommand("estimate", "Sampled sup over centers and radii");
    addCommon(estimate, flags, true);
    estimate->callback([&] { action = [&] { return cli::seminormEstimate(flags); }; });

    auto* domain = app.add_subcommand("domain", "Domain checks")->require_subcommand(1);
    auto* checkA = domain->add_subcommand("check-a", "Empirical property (A) constant");
    addCommon(checkA, flags, true);
    checkA->callback([&] { action = [&] { return cli::domainCheckA(flags); }; });

    auto* extend = app.add_subcommand("extend", "Extension operators")->require_subcommand(1);
    auto* reflect = extend->add_subcommand("reflect", "Even reflection across the graph");
    addCommon(reflect, flags, true);
    reflect->callback([&] { action = [&] { return cli::extendReflect(flags); }; });
    auto* mcshane = extend->add_subcommand("mcshane", "McShane extension of a boundary function");
    addCommon(mcshane, flags, true);
    mcshane->callback([&] { action = [&] { return cli::extendMcShane(flags); }; });
    auto* atlas = extend->add_subcommand("atlas", "Patchwise extension through an atlas");
    addCommon(atlas, flags, true);
    atlas->callback([&] { action = [&] { return cli::extendAtlas(flags); }; });

    auto* cases = app.add_subcommand("case", "Scenario catalog")->require_subcommand(1);
    auto* run = cases->add_subcommand("run", "Run one case");
    run->add_option("id", caseId, "Case id")->required();
    addCommon(run, flags, false);
    run->callback([&] { action = [&] { return cli::caseRun(caseId, flags); }; });
    auto* runAll = cases->add_subcommand("run-all", "Run every case");
    addCommon(runAll, flags, false);
    runAll->callback([&] { action = [&] { return cli::caseRunAll(flags); }; });

    auto* report = app.add_subcommand("report", "Result post-processing")->require_subcommand(1);
    auto* merge = report->add_subcommand("merge", "Aggregate case result JSON files into a CSV summary");
    merge->add_option("dir", mergeDir, "Directory with case results")->required();
    merge->callback([&] { action = [&] { return cli::reportMerge(mergeDir); }; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        (void)app.exit(e);
        return cli::kInvalidInput;
    }

    try {
        return action();
    } catch (const campanato::InvalidInput& e) {
        std::cerr << "error: " << e.what() << "\n";
        return cli::kInvalidInput;
    } catch (const campanato::PreconditionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return cli::kInvalidInput;
    } catch (const campanato::EmptyCandidateError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return cli::kInvalidInput;
    } catch (const campanato::DomainViolation& e) {
        std::cerr << "error: " << e.what() << "\n";
        return cli::kInvalidInput;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return cli::kInternalError;
    }
}
