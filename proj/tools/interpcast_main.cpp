#include "interpcast/cli/commands.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    CLI::App app{"interpcast: book chapters to podcast-style interpretation scripts and audio"};
    app.require_subcommand(1);

    interpcast::cli::RunOptions run_options;
    auto* run = app.add_subcommand("run", "run chapters from a book manifest");
    run->add_option("--manifest", run_options.manifest, "book manifest JSON")->required();
    run->add_option("--chapter", run_options.chapter, "only this chapter_id");
    run->add_option("--config", run_options.config_file, "TOML config file");
    run->add_option("--run-dir", run_options.run_dir, "output root (default runs)");
    run->add_option("--provider", run_options.provider, "live or script:<path>");
    run->add_flag("--audio", run_options.audio, "also synthesize chapter audio");
    run->add_option("--jobs", run_options.jobs, "chapters to run in parallel");
    run->add_option("--i-max", run_options.i_max, "revision budget override");
    run->add_option("--temperature", run_options.temperature, "sampling temperature override");
    run->add_option("--lang", run_options.lang, "prompt language override (zh or en)")
        ->check(CLI::IsMember({"zh", "en"}));

    interpcast::cli::ResumeOptions resume_options;
    auto* resume = app.add_subcommand("resume", "resume one chapter's run directory");
    resume->add_option("--run-dir", resume_options.run_dir, "chapter run directory")->required();
    resume->add_option("--provider", resume_options.provider, "live or script:<path>");

    interpcast::cli::InspectOptions inspect_options;
    auto* inspect = app.add_subcommand("inspect", "report calls, rounds and trace for a run");
    inspect->add_option("--run-dir", inspect_options.run_dir, "chapter run directory")
        ->required();
    inspect->add_option("--stage", inspect_options.stage, "filter trace by stage")
        ->check(CLI::IsMember({"TCI", "PI", "OR", "RR", "AUDIO"}));
    inspect->add_option("--topic", inspect_options.topic, "filter trace by topic index");

    interpcast::cli::SynthOptions synth_options;
    auto* synth = app.add_subcommand("synth", "audio stage for an existing manuscript");
    synth->add_option("--run-dir", synth_options.run_dir, "chapter run directory")->required();

    CLI11_PARSE(app, argc, argv);

    if (run->parsed()) return interpcast::cli::cmd_run(run_options, std::cout, std::cerr);
    if (resume->parsed()) return interpcast::cli::cmd_resume(resume_options, std::cout, std::cerr);
    if (inspect->parsed()) {
        return interpcast::cli::cmd_inspect(inspect_options, std::cout, std::cerr);
    }
    return interpcast::cli::cmd_synth(synth_options, std::cout, std::cerr);
}
