#pragma once

#include "interpcast/agents/agents.hpp"
#include "interpcast/domain/config.hpp"
#include "interpcast/domain/types.hpp"
#include "interpcast/gateway/gateway.hpp"
#include "interpcast/pipeline/store.hpp"
#include "interpcast/trace.hpp"

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace interpcast::pipeline {

// Topics surviving TCI with their enriched cases, index-aligned.
struct TciResult {
    std::vector<domain::Topic> topics;
    std::vector<domain::EnrichedCase> cases;

    bool operator==(const TciResult&) const = default;
};

void to_json(ijson& j, const TciResult& v);
void from_json(const ijson& j, TciResult& v);

struct RunHooks {
    // Fires after a checkpoint unit lands on disk; tests throw from here
    // to simulate a kill at a stage boundary.
    std::function<void(const std::string& unit)> after_checkpoint;
};

// Runs one chapter through TCI, PI, OR and RR, checkpointing each unit
// under the chapter directory. Running again over the same directory loads
// every valid checkpoint and recomputes only what is missing, so resume is
// the same code path as a fresh run.
class ChapterRunner {
public:
    ChapterRunner(domain::Chapter chapter, domain::PipelineConfig cfg, gateway::Gateway& gw,
                  const agents::PromptLibrary& prompts, PipelineTrace& trace,
                  std::filesystem::path chapter_dir, RunHooks hooks = {});

    domain::Manuscript run();

    // Stage computations without checkpointing; run() wraps these.
    TciResult run_tci();
    domain::TopicDraft run_pi(const domain::Topic& topic, const domain::EnrichedCase& enriched);
    domain::OralScript run_or(const domain::TopicDraft& draft);
    domain::Manuscript run_rr(const std::vector<domain::OralScript>& orals);

    // Rewrites manuscript.txt, metadata.json and trace.jsonl from the
    // current state; called again after audio synthesis extends the trace.
    void write_outputs(const domain::Manuscript& manuscript,
                       std::optional<int> audio_chunks = std::nullopt);

    const RunStore& store() const { return store_; }
    const domain::PipelineConfig& cfg() const { return cfg_; }
    const domain::Chapter& chapter() const { return chapter_; }

private:
    void freeze_snapshots();
    template <typename T, typename F>
    T unit(const std::string& name, F&& compute);

    domain::Chapter chapter_;
    domain::PipelineConfig cfg_;
    gateway::Gateway& gw_;
    PipelineTrace& trace_;
    agents::AgentContext actx_;
    RunStore store_;
    RunHooks hooks_;

    bool replaying_ = false;
    TciResult tci_;
    std::vector<domain::TopicDraft> drafts_;
    std::vector<domain::OralScript> orals_;
};

// Rebuilds a runner from the snapshots inside chapter_dir and reruns it;
// with intact checkpoints this issues no provider calls.
domain::Manuscript resume_chapter(const std::filesystem::path& chapter_dir,
                                  gateway::Provider& provider, PipelineTrace& trace,
                                  RunHooks hooks = {});

} // namespace interpcast::pipeline
