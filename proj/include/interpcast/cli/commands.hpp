#pragma once

#include <optional>
#include <ostream>
#include <string>

namespace interpcast::cli {

struct RunOptions {
    std::string manifest;
    std::string chapter;     // empty = every chapter in the manifest
    std::string config_file; // empty = built-in defaults
    std::string run_dir = "runs";
    std::string provider = "live"; // "live" or "script:<path>"
    bool audio = false;
    int jobs = 1;
    std::optional<int> i_max;
    std::optional<double> temperature;
    std::optional<std::string> lang;
};

struct ResumeOptions {
    std::string run_dir; // one chapter's directory
    std::string provider = "live";
};

struct InspectOptions {
    std::string run_dir;
    std::optional<std::string> stage;
    std::optional<int> topic;
};

struct SynthOptions {
    std::string run_dir;
};

// Exit codes: 0 success, 2 when no topic-case pair survives review,
// 1 for every other failure.
int cmd_run(const RunOptions& options, std::ostream& out, std::ostream& err);
int cmd_resume(const ResumeOptions& options, std::ostream& out, std::ostream& err);
int cmd_inspect(const InspectOptions& options, std::ostream& out, std::ostream& err);
int cmd_synth(const SynthOptions& options, std::ostream& out, std::ostream& err);

} // namespace interpcast::cli
