#include "interpcast/pipeline/runner.hpp"

#include "interpcast/domain/serde.hpp"
#include "interpcast/domain/validate.hpp"
#include "interpcast/errors.hpp"
#include "interpcast/pipeline/refine.hpp"

#include <algorithm>
#include <map>

namespace interpcast::pipeline {

void to_json(ijson& j, const TciResult& v) {
    j = ijson::object();
    j["topics"] = v.topics;
    j["cases"] = v.cases;
}

void from_json(const ijson& j, TciResult& v) {
    v.topics = j.at("topics").get<std::vector<domain::Topic>>();
    v.cases = j.at("cases").get<std::vector<domain::EnrichedCase>>();
}

ChapterRunner::ChapterRunner(domain::Chapter chapter, domain::PipelineConfig cfg,
                             gateway::Gateway& gw, const agents::PromptLibrary& prompts,
                             PipelineTrace& trace, std::filesystem::path chapter_dir,
                             RunHooks hooks)
    : chapter_(std::move(chapter)), cfg_(std::move(cfg)), gw_(gw), trace_(trace),
      actx_{gw_, cfg_, prompts}, store_(std::move(chapter_dir)), hooks_(std::move(hooks)) {}

void ChapterRunner::freeze_snapshots() {
    const ijson cfg_now = cfg_;
    if (auto frozen = store_.read_json("config.json")) {
        if (*frozen != cfg_now) {
            throw ConfigMismatch("supplied config differs from the run's config snapshot");
        }
    } else {
        store_.write_json("config.json", cfg_now);
    }

    const ijson chapter_now = chapter_;
    if (auto frozen = store_.read_json("chapter.json")) {
        if (*frozen != chapter_now) {
            throw ConfigMismatch("supplied chapter differs from the run's chapter snapshot");
        }
    } else {
        store_.write_json("chapter.json", chapter_now);
    }
}

template <typename T, typename F>
T ChapterRunner::unit(const std::string& name, F&& compute) {
    const std::string rel = RunStore::unit_path(name);
    if (replaying_) {
        if (auto j = store_.read_json(rel)) {
            T value = j->at("artifact").get<T>();
            std::vector<TraceRecord> slice;
            for (const auto& rj : j->at("trace")) slice.push_back(rj.get<TraceRecord>());
            trace_.append_slice(slice);
            return value;
        }
        replaying_ = false;
        gw_.fast_forward(trace_.size());
    }

    const std::size_t start = trace_.size();
    T value = compute();

    ijson envelope = ijson::object();
    envelope["artifact"] = value;
    envelope["trace"] = ijson::array();
    for (const auto& r : trace_.slice_from(start)) envelope["trace"].push_back(ijson(r));
    store_.write_json(rel, envelope);
    if (hooks_.after_checkpoint) hooks_.after_checkpoint(name);
    return value;
}

domain::Manuscript ChapterRunner::run() {
    freeze_snapshots();
    replaying_ = true;
    drafts_.clear();
    orals_.clear();

    tci_ = unit<TciResult>("tci", [&] { return run_tci(); });

    for (std::size_t i = 0; i < tci_.topics.size(); ++i) {
        const auto& topic = tci_.topics[i];
        const auto& enriched = tci_.cases[i];
        drafts_.push_back(unit<domain::TopicDraft>(
            "pi/" + std::to_string(topic.index), [&] { return run_pi(topic, enriched); }));
    }

    for (const auto& draft : drafts_) {
        orals_.push_back(unit<domain::OralScript>("or/" + std::to_string(draft.topic_index),
                                                  [&] { return run_or(draft); }));
    }

    auto manuscript = unit<domain::Manuscript>("rr", [&] { return run_rr(orals_); });
    write_outputs(manuscript);
    return manuscript;
}

TciResult ChapterRunner::run_tci() {
    auto invalid_of = [](const std::vector<domain::PairVerdict>& verdicts) {
        std::vector<domain::PairVerdict> out;
        for (const auto& v : verdicts) {
            if (!v.valid) out.push_back(v);
        }
        return out;
    };

    auto set = agents::analyze_topics(actx_, chapter_, 0, nullptr);
    auto verdicts = agents::validate_pairs(actx_, chapter_, set, 0);
    int attempt = 0;
    while (!invalid_of(verdicts).empty() && attempt < cfg_.i_max) {
        ++attempt;
        auto rejected = invalid_of(verdicts);
        set = agents::analyze_topics(actx_, chapter_, attempt, &rejected);
        verdicts = agents::validate_pairs(actx_, chapter_, set, attempt);
    }

    domain::TopicCaseSet surviving;
    for (const auto& verdict : verdicts) {
        if (!verdict.valid) continue;
        for (const auto& topic : set.topics) {
            if (topic.index != verdict.topic_index) continue;
            domain::Topic renumbered = topic;
            renumbered.index = static_cast<int>(surviving.topics.size()) + 1;
            for (const auto& sketch : set.cases) {
                if (sketch.topic_index == topic.index) {
                    domain::CaseSketch moved = sketch;
                    moved.topic_index = renumbered.index;
                    surviving.cases.push_back(std::move(moved));
                }
            }
            surviving.topics.push_back(std::move(renumbered));
        }
    }
    if (surviving.topics.empty()) {
        throw NoValidTopics("chapter " + chapter_.chapter_id +
                            ": no topic-case pair survived review");
    }

    auto enriched = agents::enrich_cases(actx_, chapter_, surviving);
    return {surviving.topics, enriched};
}

domain::TopicDraft ChapterRunner::run_pi(const domain::Topic& topic,
                                         const domain::EnrichedCase& enriched) {
    auto expansion = agents::expand_case(actx_, topic, enriched);
    auto argument = agents::argue_case(actx_, topic, enriched);
    auto draft = agents::draft_topic(actx_, topic, enriched, argument, expansion);
    auto outcome = refine_loop(
        std::move(draft),
        [&](const domain::TopicDraft& d) { return agents::review_draft(actx_, d); },
        [&](const domain::TopicDraft& d, const domain::DraftFeedback& f) {
            return agents::revise_draft(actx_, d, f);
        },
        cfg_.i_max);
    return outcome.artifact;
}

domain::OralScript ChapterRunner::run_or(const domain::TopicDraft& draft) {
    auto script = agents::oralize(actx_, draft);
    auto outcome = refine_loop(
        std::move(script),
        [&](const domain::OralScript& s) { return agents::review_oral(actx_, s); },
        [&](const domain::OralScript& s, const domain::OralFeedback& f) {
            return agents::revise_oral(actx_, s, f);
        },
        cfg_.i_max);
    return outcome.artifact;
}

domain::Manuscript ChapterRunner::run_rr(const std::vector<domain::OralScript>& orals) {
    if (orals.empty()) throw PreconditionError("run_rr needs at least one oral script");

    auto manuscript = agents::init_manuscript(orals.front());
    for (std::size_t i = 1; i < orals.size(); ++i) {
        manuscript = agents::integrate(actx_, manuscript, orals[i]);
    }
    auto outcome = refine_loop(
        std::move(manuscript),
        [&](const domain::Manuscript& m) { return agents::review_manuscript(actx_, m); },
        [&](const domain::Manuscript& m, const domain::ManuscriptFeedback& f) {
            return agents::revise_manuscript(actx_, m, f);
        },
        cfg_.i_max);
    return outcome.artifact;
}

void ChapterRunner::write_outputs(const domain::Manuscript& manuscript,
                                  std::optional<int> audio_chunks) {
    ijson meta = ijson::object();
    meta["book_id"] = chapter_.book_id;
    meta["chapter_id"] = chapter_.chapter_id;
    meta["language"] = domain::to_string(chapter_.language);
    meta["topics"] = ijson::array();
    for (const auto& topic : tci_.topics) meta["topics"].push_back(topic.statement);

    meta["warnings"] = ijson::array();
    for (const auto& draft : drafts_) {
        if (draft.status == domain::ArtifactStatus::accepted_with_warnings) {
            meta["warnings"].push_back("pi/" + std::to_string(draft.topic_index) +
                                       ": accepted_with_warnings");
        }
    }
    for (const auto& oral : orals_) {
        if (oral.status == domain::ArtifactStatus::accepted_with_warnings) {
            meta["warnings"].push_back("or/" + std::to_string(oral.topic_index) +
                                       ": accepted_with_warnings");
        }
    }
    if (manuscript.status == domain::ArtifactStatus::accepted_with_warnings) {
        meta["warnings"].push_back("rr: accepted_with_warnings");
    }

    std::map<Stage, int> per_stage;
    int agent_calls = 0;
    for (const auto& r : trace_.records()) {
        if (r.stage == Stage::Audio) continue;
        ++per_stage[r.stage];
        ++agent_calls;
    }
    meta["agent_calls"] = agent_calls;
    ijson stage_calls = ijson::object();
    for (Stage s : {Stage::Tci, Stage::Pi, Stage::Or, Stage::Rr}) {
        stage_calls[to_string(s)] = per_stage.count(s) ? per_stage[s] : 0;
    }
    meta["stage_calls"] = stage_calls;

    ijson rounds = ijson::object();
    for (const auto& draft : drafts_) {
        rounds["pi/" + std::to_string(draft.topic_index)] = draft.round;
    }
    for (const auto& oral : orals_) {
        rounds["or/" + std::to_string(oral.topic_index)] = oral.round;
    }
    rounds["rr"] = manuscript.round;
    meta["rounds"] = rounds;

    if (audio_chunks) meta["audio_chunks"] = *audio_chunks;

    store_.write_text("manuscript.txt", manuscript.text);
    store_.write_json("metadata.json", meta);
    store_.write_text("trace.jsonl", trace_.canonical_jsonl());
}

domain::Manuscript resume_chapter(const std::filesystem::path& chapter_dir,
                                  gateway::Provider& provider, PipelineTrace& trace,
                                  RunHooks hooks) {
    RunStore store(chapter_dir);
    auto cfg_json = store.read_json("config.json");
    auto chapter_json = store.read_json("chapter.json");
    if (!cfg_json || !chapter_json) {
        throw PreconditionError("run directory has no config/chapter snapshot: " +
                                chapter_dir.string());
    }
    auto cfg = cfg_json->get<domain::PipelineConfig>();
    auto chapter = chapter_json->get<domain::Chapter>();

    auto prompts = agents::PromptLibrary::load(cfg.prompt_dir, cfg.prompt_language);
    gateway::Gateway gw(provider, trace, cfg);
    ChapterRunner runner(std::move(chapter), cfg, gw, prompts, trace, chapter_dir,
                         std::move(hooks));
    return runner.run();
}

} // namespace interpcast::pipeline
